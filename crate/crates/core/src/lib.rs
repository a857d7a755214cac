//! Casimir-Polder free energies and interaction entropies of small
//! anisotropic particles, either above a perfectly conducting plate or
//! interacting with each other, in the static dipole approximation.
//!
//! Natural units `ħ = c = k_B = 1` are used throughout. Temperatures enter
//! through the reduced variable `y = 4πZT`.
//!
//! ```
//! use casimir_entropy::plate::s_plate;
//!
//! // The isotropic particle above a plate has negative entropy below y ≈ 2.97.
//! assert!(s_plate(1.0, 2.0).unwrap() < 0.0);
//! assert!(s_plate(1.0, 4.0).unwrap() > 0.0);
//! ```

pub mod analysis;
pub mod error;
pub mod figures;
pub mod kernel;
pub mod operator;
pub mod oracle;
pub mod pair;
pub mod particle;
pub mod plate;

pub use error::{Error, Result};
pub use kernel::{coth_kernel, CothKernel};
pub use particle::{Polarizability, Sector, ThermalGeometry};
