//! Static polarizabilities and the separation/temperature geometry.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};

/// Electric or magnetic response of a particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Electric,
    Magnetic,
}

/// Static polarizability tensors `α = diag(α⊥, α⊥, α_z)` and
/// `β = diag(β⊥, β⊥, β_z)`, with the symmetry axis along the separation.
///
/// Stored component-wise; anisotropies are derived only on request.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Polarizability {
    pub alpha_perp: f64,
    pub alpha_z: f64,
    pub beta_perp: f64,
    pub beta_z: f64,
}

impl Polarizability {
    pub fn new(alpha_perp: f64, alpha_z: f64, beta_perp: f64, beta_z: f64) -> Result<Self> {
        let p = Self {
            alpha_perp,
            alpha_z,
            beta_perp,
            beta_z,
        };
        p.validate()?;
        Ok(p)
    }

    /// Isotropic electric and magnetic polarizabilities.
    pub fn isotropic(alpha: f64, beta: f64) -> Self {
        Self {
            alpha_perp: alpha,
            alpha_z: alpha,
            beta_perp: beta,
            beta_z: beta,
        }
    }

    pub fn electric(alpha_perp: f64, alpha_z: f64) -> Self {
        Self {
            alpha_perp,
            alpha_z,
            ..Self::default()
        }
    }

    pub fn magnetic(beta_perp: f64, beta_z: f64) -> Self {
        Self {
            beta_perp,
            beta_z,
            ..Self::default()
        }
    }

    /// Dipole limit of a perfectly conducting sphere of radius `a`:
    /// `α = a³`, `β = -a³/2`.
    pub fn conducting_sphere(radius: f64) -> Self {
        let volume = radius.powi(3);
        Self::isotropic(volume, -0.5 * volume)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("alpha_perp", self.alpha_perp)?;
        check_finite("alpha_z", self.alpha_z)?;
        check_finite("beta_perp", self.beta_perp)?;
        check_finite("beta_z", self.beta_z)
    }

    /// `(⊥, z)` components of one sector.
    pub fn components(&self, sector: Sector) -> (f64, f64) {
        match sector {
            Sector::Electric => (self.alpha_perp, self.alpha_z),
            Sector::Magnetic => (self.beta_perp, self.beta_z),
        }
    }

    /// `γ = ⊥ / z`, or `None` when the axial component vanishes.
    pub fn anisotropy(&self, sector: Sector) -> Option<f64> {
        let (perp, z) = self.components(sector);
        (z != 0.0).then(|| perp / z)
    }

    /// Sets `⊥ = γ · z` for one sector, keeping the axial component.
    pub fn with_anisotropy(mut self, sector: Sector, gamma: f64) -> Self {
        match sector {
            Sector::Electric => self.alpha_perp = gamma * self.alpha_z,
            Sector::Magnetic => self.beta_perp = gamma * self.beta_z,
        }
        self
    }

    /// The electromagnetic dual, `α ↔ β`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha_perp: self.beta_perp,
            alpha_z: self.beta_z,
            beta_perp: self.alpha_perp,
            beta_z: self.alpha_z,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            alpha_perp: factor * self.alpha_perp,
            alpha_z: factor * self.alpha_z,
            beta_perp: factor * self.beta_perp,
            beta_z: factor * self.beta_z,
        }
    }
}

/// Separation `Z`, temperature `T` (natural units) and `y = 4πZT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalGeometry {
    separation: f64,
    temperature: f64,
    y: f64,
    particle_scale: Option<f64>,
}

impl ThermalGeometry {
    pub fn new(separation: f64, temperature: f64) -> Result<Self> {
        check_finite("Z", separation)?;
        check_finite("T", temperature)?;
        if separation <= 0.0 {
            return Err(Error::Domain(format!("Z must be > 0, got {separation}")));
        }
        if temperature < 0.0 {
            return Err(Error::Domain(format!("T must be >= 0, got {temperature}")));
        }
        Ok(Self {
            separation,
            temperature,
            y: 4.0 * PI * separation * temperature,
            particle_scale: None,
        })
    }

    /// Geometry at separation `Z` whose temperature gives the reduced `y`.
    pub fn from_reduced(separation: f64, y: f64) -> Result<Self> {
        check_finite("y", y)?;
        if y < 0.0 {
            return Err(Error::Domain(format!("y must be >= 0, got {y}")));
        }
        let mut geom = Self::new(separation, y / (4.0 * PI * separation))?;
        geom.y = y;
        Ok(geom)
    }

    /// Attaches a particle size, used only for the dipole-regime flag.
    pub fn with_particle_scale(mut self, a: f64) -> Self {
        self.particle_scale = Some(a);
        self
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Whether the attached particle size satisfies `a/Z < 0.1`; `None` if no
    /// size was given.
    pub fn dipole_regime(&self) -> Option<bool> {
        self.particle_scale
            .map(|a| (a / self.separation).abs() < 0.1)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        let mut geom = Self::new(self.separation, temperature)?;
        geom.particle_scale = self.particle_scale;
        Ok(geom)
    }
}
