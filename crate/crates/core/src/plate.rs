//! A polarizable nanoparticle above a perfectly conducting plate.
//!
//! The free energy is carried by three `y`-dependent mode functions, all
//! normalized to their zero-temperature values:
//!
//! * axial `P_z = (y/2)(C - yC')`, `P_z(0) = 1`,
//! * transverse TE `P_TE = (y³/4) C''`, `P_TE(0) = 1`,
//! * transverse TM `P_TM = (y/2)(C - yC' + y²C''/2)`, `P_TM(0) = 1`.
//!
//! so that `F = -[(α_z - β_z) P_z + (α⊥ - β⊥)(P_TE + P_TM)] / (8π Z⁴)`.
//! The magnetic sector enters through `α → -β`.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::operator::{CothOperator, SmallYExpansion};
use crate::particle::{Polarizability, ThermalGeometry};

const AXIAL: CothOperator = CothOperator::new(1, [0.5, -0.5, 0.0, 0.0, 0.0, 0.0]);
const TRANSVERSE_TE: CothOperator = CothOperator::new(1, [0.0, 0.0, 0.25, 0.0, 0.0, 0.0]);
const TRANSVERSE_TM: CothOperator = CothOperator::new(1, [0.5, -0.5, 0.25, 0.0, 0.0, 0.0]);

/// Which polarization of the plate contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PlateChannel {
    #[default]
    Total,
    /// Transverse electric.
    Te,
    /// Transverse magnetic.
    Tm,
}

#[derive(Debug, Clone, Copy)]
enum Level {
    Free,
    Thermal,
    Entropy,
}

/// Axial, transverse-TE and transverse-TM mode values at one `y`.
#[derive(Debug, Clone, Copy)]
struct Modes {
    axial: f64,
    te: f64,
    tm: f64,
}

fn eval_at(op: &CothOperator, level: Level, y: f64) -> Result<f64> {
    match level {
        Level::Free => op.eval(y),
        Level::Thermal => op.eval_thermal(y),
        Level::Entropy => op.derivative().eval(y),
    }
}

fn modes(level: Level, y: f64) -> Result<Modes> {
    check_y(y)?;
    Ok(Modes {
        axial: eval_at(&AXIAL, level, y)?,
        te: eval_at(&TRANSVERSE_TE, level, y)?,
        tm: eval_at(&TRANSVERSE_TM, level, y)?,
    })
}

fn check_y(y: f64) -> Result<()> {
    check_finite("y", y)?;
    if y < 0.0 {
        return Err(Error::Domain(format!("y must be >= 0, got {y}")));
    }
    Ok(())
}

impl Modes {
    /// `α_z f(γ, y)` style combination with weights for the axial and
    /// transverse components.
    fn combine(&self, axial_weight: f64, transverse_weight: f64, channel: PlateChannel) -> f64 {
        match channel {
            PlateChannel::Total => {
                axial_weight * self.axial + transverse_weight * (self.te + self.tm)
            }
            PlateChannel::Te => transverse_weight * self.te,
            PlateChannel::Tm => axial_weight * self.axial + transverse_weight * self.tm,
        }
    }
}

/// Scaled free energy `f(γ, y)` with `f(1, 0) = 1`.
pub fn f_plate(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    Ok(modes(Level::Free, y)?.combine(1.0, gamma, PlateChannel::Total) / 3.0)
}

/// Scaled entropy `s(γ, y) = ∂f/∂y`.
pub fn s_plate(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    Ok(modes(Level::Entropy, y)?.combine(1.0, gamma, PlateChannel::Total) / 3.0)
}

/// Rescaled entropy `s̃ = s / y³`, finite as `y → 0`.
pub fn s_tilde(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    check_y(y)?;
    if y == 0.0 {
        return Ok(s_plate_small_y(gamma).c3);
    }
    Ok(s_plate(gamma, y)? / y.powi(3))
}

/// TE part of the scaled free energy, `f_E = γ y³ C'' / 12`.
pub fn f_plate_te(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    Ok(modes(Level::Free, y)?.combine(1.0, gamma, PlateChannel::Te) / 3.0)
}

/// TE part of the scaled entropy; never positive for `γ ≥ 0`.
pub fn s_plate_te(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    Ok(modes(Level::Entropy, y)?.combine(1.0, gamma, PlateChannel::Te) / 3.0)
}

/// TM part of the scaled entropy, `s_H = s - s_E`.
pub fn s_plate_tm(gamma: f64, y: f64) -> Result<f64> {
    Ok(s_plate(gamma, y)? - s_plate_te(gamma, y)?)
}

/// Small-`y` coefficients of `s(γ, y)`: `(1 - 2γ)/540` and the `y⁵` term.
pub fn s_plate_small_y(gamma: f64) -> SmallYExpansion {
    channel_expansion(1.0, gamma, PlateChannel::Total).scaled(1.0 / 3.0)
}

/// Small-`y` coefficients of the TE or TM part of `s(γ, y)`.
pub fn s_plate_channel_small_y(gamma: f64, channel: PlateChannel) -> SmallYExpansion {
    channel_expansion(1.0, gamma, channel).scaled(1.0 / 3.0)
}

fn channel_expansion(axial: f64, transverse: f64, channel: PlateChannel) -> SmallYExpansion {
    let ax = (axial, AXIAL.derivative());
    let te = (transverse, TRANSVERSE_TE.derivative());
    let tm = (transverse, TRANSVERSE_TM.derivative());
    match channel {
        PlateChannel::Total => SmallYExpansion::combine(&[ax, te, tm]),
        PlateChannel::Te => SmallYExpansion::combine(&[te]),
        PlateChannel::Tm => SmallYExpansion::combine(&[ax, tm]),
    }
}

/// Net axial and transverse weights after `α → -β`.
fn weights(p: &Polarizability) -> (f64, f64) {
    (p.alpha_z - p.beta_z, p.alpha_perp - p.beta_perp)
}

/// Free energy `F(Z, T)` of the particle above the plate, natural units.
pub fn plate_free_energy(p: &Polarizability, geom: &ThermalGeometry) -> Result<f64> {
    plate_free_energy_channel(p, geom, PlateChannel::Total)
}

pub fn plate_free_energy_channel(
    p: &Polarizability,
    geom: &ThermalGeometry,
    channel: PlateChannel,
) -> Result<f64> {
    p.validate()?;
    let (axial, transverse) = weights(p);
    let z = geom.separation();
    Ok(-modes(Level::Free, geom.y())?.combine(axial, transverse, channel) / (8.0 * PI * z.powi(4)))
}

/// `F(Z, T) - F(Z, 0)`, evaluated without subtracting two large numbers.
pub fn plate_thermal_free_energy(p: &Polarizability, geom: &ThermalGeometry) -> Result<f64> {
    p.validate()?;
    let (axial, transverse) = weights(p);
    let z = geom.separation();
    Ok(-modes(Level::Thermal, geom.y())?.combine(axial, transverse, PlateChannel::Total)
        / (8.0 * PI * z.powi(4)))
}

/// Entropy `S = -∂F/∂T`.
pub fn plate_entropy(p: &Polarizability, geom: &ThermalGeometry) -> Result<f64> {
    plate_entropy_channel(p, geom, PlateChannel::Total)
}

pub fn plate_entropy_channel(
    p: &Polarizability,
    geom: &ThermalGeometry,
    channel: PlateChannel,
) -> Result<f64> {
    Ok(plate_scaled_entropy(p, geom.y(), channel)? / geom.separation().powi(3))
}

/// `S · Z³`, a function of `y` alone.
pub fn plate_scaled_entropy(p: &Polarizability, y: f64, channel: PlateChannel) -> Result<f64> {
    p.validate()?;
    let (axial, transverse) = weights(p);
    Ok(0.5 * modes(Level::Entropy, y)?.combine(axial, transverse, channel))
}

/// Small-`y` coefficients of `S · Z³`.
pub fn plate_scaled_entropy_small_y(p: &Polarizability, channel: PlateChannel) -> SmallYExpansion {
    let (axial, transverse) = weights(p);
    channel_expansion(axial, transverse, channel).scaled(0.5)
}
