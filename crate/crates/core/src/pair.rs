//! Two polarizable nanoparticles with principal axes along their separation.
//!
//! The electric-electric free energy is
//! `F^EE = -[α_z¹α_z² Q_z(y) + α⊥¹α⊥² Q⊥(y)] / (4π Z⁷)` with
//!
//! * `Q_z = 4y (C - yC' + y²C''/4)`, `Q_z(0) = 10`,
//! * `Q⊥ = 2y (C - yC' + 3y²C''/4 - y³C'''/4 + y⁴C⁗/16)`, `Q⊥(0) = 13`.
//!
//! The magnetic-magnetic term is the same with `α → β`, and the cross term is
//! `F^EM = +(α⊥¹β⊥² + β⊥¹α⊥²) G(y) / (4π Z⁷)` with
//! `G = (y/2)(y²C'' - y³C''' + y⁴C⁗/4)`, `G(0) = 7`.

use std::f64::consts::PI;

use crate::error::{check_finite, Error, Result};
use crate::operator::{CothOperator, SmallYExpansion};
use crate::particle::{Polarizability, ThermalGeometry};

const AXIAL: CothOperator = CothOperator::new(1, [4.0, -4.0, 1.0, 0.0, 0.0, 0.0]);
const TRANSVERSE: CothOperator = CothOperator::new(1, [2.0, -2.0, 1.5, -0.5, 0.125, 0.0]);
const CROSS: CothOperator = CothOperator::new(1, [0.0, 0.0, 0.5, -0.5, 0.125, 0.0]);

/// Radius of convergence in `y` of the low-temperature expansions.
pub const SMALL_Y_RADIUS: f64 = 2.0 * PI;

/// Two particles, one at the origin and one at `(0, 0, Z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticlePair {
    pub first: Polarizability,
    pub second: Polarizability,
    pub geom: ThermalGeometry,
}

impl ParticlePair {
    pub fn new(first: Polarizability, second: Polarizability, geom: ThermalGeometry) -> Self {
        Self {
            first,
            second,
            geom,
        }
    }

    pub fn exchanged(&self) -> Self {
        Self::new(self.second, self.first, self.geom)
    }

    pub fn dual(&self) -> Self {
        Self::new(self.first.swapped(), self.second.swapped(), self.geom)
    }
}

/// Bilinear weights of the three mode functions.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Weights {
    ee_axial: f64,
    ee_transverse: f64,
    mm_axial: f64,
    mm_transverse: f64,
    /// `α⊥¹β⊥² + β⊥¹α⊥²`.
    cross: f64,
}

fn weights(p1: &Polarizability, p2: &Polarizability) -> Result<Weights> {
    p1.validate()?;
    p2.validate()?;
    Ok(Weights {
        ee_axial: p1.alpha_z * p2.alpha_z,
        ee_transverse: p1.alpha_perp * p2.alpha_perp,
        mm_axial: p1.beta_z * p2.beta_z,
        mm_transverse: p1.beta_perp * p2.beta_perp,
        cross: p1.alpha_perp * p2.beta_perp + p1.beta_perp * p2.alpha_perp,
    })
}

#[derive(Debug, Clone, Copy)]
enum Level {
    Free,
    Thermal,
    Entropy,
}

#[derive(Debug, Clone, Copy)]
struct Modes {
    axial: f64,
    transverse: f64,
    cross: f64,
}

fn eval_at(op: &CothOperator, level: Level, y: f64) -> Result<f64> {
    match level {
        Level::Free => op.eval(y),
        Level::Thermal => op.eval_thermal(y),
        Level::Entropy => op.derivative().eval(y),
    }
}

fn check_y(y: f64) -> Result<()> {
    check_finite("y", y)?;
    if y < 0.0 {
        return Err(Error::Domain(format!("y must be >= 0, got {y}")));
    }
    Ok(())
}

fn modes(level: Level, y: f64) -> Result<Modes> {
    check_y(y)?;
    Ok(Modes {
        axial: eval_at(&AXIAL, level, y)?,
        transverse: eval_at(&TRANSVERSE, level, y)?,
        cross: eval_at(&CROSS, level, y)?,
    })
}

/// Free-energy contributions of the three sectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSectors {
    pub electric: f64,
    pub magnetic: f64,
    pub cross: f64,
}

impl PairSectors {
    pub fn total(&self) -> f64 {
        self.electric + self.magnetic + self.cross
    }
}

impl Modes {
    /// Bracket `[…]` with `F = -[…]/(4πZ⁷)`, split by sector.
    fn sectors(&self, w: &Weights) -> PairSectors {
        PairSectors {
            electric: w.ee_axial * self.axial + w.ee_transverse * self.transverse,
            magnetic: w.mm_axial * self.axial + w.mm_transverse * self.transverse,
            cross: -w.cross * self.cross,
        }
    }
}

/// Scaled electric free energy `f(γ, y)`, `γ = γ₁γ₂`, with `f(1, 0) = 1`.
pub fn f_pair_ee(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    let m = modes(Level::Free, y)?;
    Ok((m.axial + gamma * m.transverse) / 23.0)
}

/// `s^EE(γ, y) = ∂f/∂y`.
pub fn s_pair_ee(gamma: f64, y: f64) -> Result<f64> {
    check_finite("gamma", gamma)?;
    let m = modes(Level::Entropy, y)?;
    Ok((m.axial + gamma * m.transverse) / 23.0)
}

/// Scaled cross free energy `g(y)` with `g(0) = 1`.
pub fn g_pair_em(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(CROSS.eval(y)? / 7.0)
}

/// `s^EM(y) = g'(y)`, never positive.
pub fn s_pair_em(y: f64) -> Result<f64> {
    check_y(y)?;
    Ok(CROSS.derivative().eval(y)? / 7.0)
}

/// Small-`y` coefficients of `s^EE(γ, ·)`.
pub fn s_pair_ee_small_y(gamma: f64) -> SmallYExpansion {
    SmallYExpansion::combine(&[(1.0, AXIAL.derivative()), (gamma, TRANSVERSE.derivative())])
        .scaled(1.0 / 23.0)
}

/// Small-`y` coefficients of `s^EM`.
pub fn s_pair_em_small_y() -> SmallYExpansion {
    SmallYExpansion::of(&CROSS.derivative()).scaled(1.0 / 7.0)
}

/// Free energy by sector.
pub fn pair_free_energy_sectors(pair: &ParticlePair) -> Result<PairSectors> {
    let w = weights(&pair.first, &pair.second)?;
    let scale = -1.0 / (4.0 * PI * pair.geom.separation().powi(7));
    let s = modes(Level::Free, pair.geom.y())?.sectors(&w);
    Ok(PairSectors {
        electric: scale * s.electric,
        magnetic: scale * s.magnetic,
        cross: scale * s.cross,
    })
}

pub fn pair_free_energy(pair: &ParticlePair) -> Result<f64> {
    Ok(pair_free_energy_sectors(pair)?.total())
}

/// `F(Z, T) - F(Z, 0)`, evaluated without subtracting two large numbers.
pub fn pair_thermal_free_energy(pair: &ParticlePair) -> Result<f64> {
    let w = weights(&pair.first, &pair.second)?;
    let scale = -1.0 / (4.0 * PI * pair.geom.separation().powi(7));
    Ok(scale * modes(Level::Thermal, pair.geom.y())?.sectors(&w).total())
}

/// Entropy `S = -∂F/∂T`.
pub fn pair_entropy(pair: &ParticlePair) -> Result<f64> {
    Ok(pair_scaled_entropy(&pair.first, &pair.second, pair.geom.y())?
        / pair.geom.separation().powi(6))
}

/// `S · Z⁶`, a function of `y` alone.
pub fn pair_scaled_entropy(p1: &Polarizability, p2: &Polarizability, y: f64) -> Result<f64> {
    let w = weights(p1, p2)?;
    Ok(modes(Level::Entropy, y)?.sectors(&w).total())
}

/// Small-`y` coefficients of `S · Z⁶` from the exact series.
pub fn pair_scaled_entropy_small_y(p1: &Polarizability, p2: &Polarizability) -> Result<SmallYExpansion> {
    let w = weights(p1, p2)?;
    Ok(SmallYExpansion::combine(&[
        (w.ee_axial + w.mm_axial, AXIAL.derivative()),
        (w.ee_transverse + w.mm_transverse, TRANSVERSE.derivative()),
        (-w.cross, CROSS.derivative()),
    ]))
}

/// Two-term low-temperature entropy
/// `S ≈ y³ A / (90 Z⁶) + y⁵ B / (5040 Z⁶)` with
/// `A = α_z¹α_z² - α⊥¹α⊥² + β_z¹β_z² - β⊥¹β⊥²` and
/// `B = 4α_z¹α_z² + 7α⊥¹α⊥² + 4β_z¹β_z² + 7β⊥¹β⊥² + 5(α⊥¹β⊥² + β⊥¹α⊥²)`.
///
/// Only defined inside the radius of convergence `y < 2π`.
pub fn pair_entropy_small_y(pair: &ParticlePair) -> Result<f64> {
    let y = pair.geom.y();
    if y >= SMALL_Y_RADIUS {
        return Err(Error::Domain(format!(
            "small-y expansion needs y < 2π, got {y}"
        )));
    }
    let (a, b) = pair_small_y_coefficients(&pair.first, &pair.second)?;
    Ok((y.powi(3) * a / 90.0 + y.powi(5) * b / 5040.0) / pair.geom.separation().powi(6))
}

/// The bracketed coefficients `(A, B)` of [`pair_entropy_small_y`].
pub fn pair_small_y_coefficients(p1: &Polarizability, p2: &Polarizability) -> Result<(f64, f64)> {
    let w = weights(p1, p2)?;
    let a = w.ee_axial - w.ee_transverse + w.mm_axial - w.mm_transverse;
    let b = 4.0 * (w.ee_axial + w.mm_axial) + 7.0 * (w.ee_transverse + w.mm_transverse)
        + 5.0 * w.cross;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    fn at(p1: Polarizability, p2: Polarizability, z: f64, t: f64) -> ParticlePair {
        ParticlePair::new(p1, p2, ThermalGeometry::new(z, t).unwrap())
    }

    #[test]
    fn normalizations() {
        assert_eq!(f_pair_ee(1.0, 0.0).unwrap(), 1.0);
        assert_eq!(g_pair_em(0.0).unwrap(), 1.0);
        for &g in &[0.0, 0.3, 2.0] {
            assert!(close(f_pair_ee(g, 0.0).unwrap(), (10.0 + 13.0 * g) / 23.0, 1e-15));
        }
        assert!((g_pair_em(1e-3).unwrap() - 1.0).abs() < 1e-5);
        assert_eq!(s_pair_em(0.0).unwrap(), 0.0);
    }

    #[test]
    fn asymptotes() {
        for &g in &[0.0, 1.0, 4.0] {
            assert!((s_pair_ee(g, 50.0).unwrap() - (2.0 + g) / 23.0).abs() < 1e-10);
        }
        assert!(g_pair_em(40.0).unwrap().abs() < 1e-10);
        let s = s_pair_em(40.0).unwrap();
        assert!(s < 0.0 && s > -1e-10);
        let y: f64 = 0.3;
        assert!(close(s_pair_em(y).unwrap(), -y.powi(5) / 7056.0, 0.1));
    }

    #[test]
    fn expansion_coefficients_match_series() {
        for &g in &[0.0, 1.0, 2.5] {
            let e = s_pair_ee_small_y(g);
            assert!((e.c3 - (1.0 - g) / 2070.0).abs() < 1e-18);
        }
        assert_eq!(s_pair_ee_small_y(1.0).c3, 0.0);
        let em = s_pair_em_small_y();
        assert_eq!(em.c3, 0.0);
        assert!(close(em.c5, -1.0 / 7056.0, 1e-14));
    }

    #[test]
    fn printed_expansion_agrees_with_exact_series() {
        let p1 = Polarizability::new(0.4, 1.2, -0.3, 0.8).unwrap();
        let p2 = Polarizability::new(1.7, 0.6, 0.9, -0.2).unwrap();
        let exact = pair_scaled_entropy_small_y(&p1, &p2).unwrap();
        let (a, b) = pair_small_y_coefficients(&p1, &p2).unwrap();
        assert!((exact.c3 - a / 90.0).abs() < 1e-15);
        assert!((exact.c5 - b / 5040.0).abs() < 1e-15);
    }

    #[test]
    fn zero_temperature_energies() {
        let a1 = 1.3;
        let a2 = 0.4;
        let z = 2.0;
        let pair = at(Polarizability::isotropic(a1, 0.0), Polarizability::isotropic(a2, 0.0), z, 0.0);
        let expected = -23.0 * a1 * a2 / (4.0 * PI * z.powi(7));
        assert!(close(pair_free_energy(&pair).unwrap(), expected, 1e-15));
        assert_eq!(pair_entropy(&pair).unwrap(), 0.0);

        let pair = at(Polarizability::isotropic(a1, 0.0), Polarizability::isotropic(0.0, a2), z, 0.0);
        let sectors = pair_free_energy_sectors(&pair).unwrap();
        assert_eq!(sectors.electric, 0.0);
        assert_eq!(sectors.magnetic, 0.0);
        assert!(close(sectors.cross, 7.0 * a1 * a2 / (4.0 * PI * z.powi(7)), 1e-15));
    }

    #[test]
    fn degenerate_particles() {
        let zero = Polarizability::default();
        let pair = at(zero, zero, 1.0, 0.3);
        assert_eq!(pair_free_energy(&pair).unwrap(), 0.0);
        assert_eq!(pair_entropy(&pair).unwrap(), 0.0);
        // Drude particle: β = 0, so no magnetic anisotropy is defined.
        let drude = Polarizability::electric(1.0, 1.0);
        let pc = Polarizability::conducting_sphere(1.0);
        assert!(pair_entropy(&at(pc, drude, 1.0, 0.1)).unwrap().is_finite());
    }

    #[test]
    fn small_y_domain() {
        let pair = at(Polarizability::isotropic(1.0, 0.0), Polarizability::isotropic(1.0, 0.0), 1.0, 0.6);
        assert!(pair.geom.y() > SMALL_Y_RADIUS);
        assert!(pair_entropy_small_y(&pair).is_err());
    }

    #[test]
    fn isotropic_ratio_minus_one_eighth_kills_cubic_term() {
        let r = -0.125;
        let p = Polarizability::isotropic(1.0, r);
        let (a, b) = pair_small_y_coefficients(&p, &p).unwrap();
        assert_eq!(a, 0.0);
        assert!(b > 0.0);
    }
}
