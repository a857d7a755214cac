//! Free energies by direct summation over Matsubara frequencies.
//!
//! The summands follow from the image construction for the plate and from
//! the free Green's dyadic for the pair, written with the polynomials
//! `u(x) = 1 + x + x²` and `v(x) = 3 + 3x + x²`. Nothing here touches the
//! thermal kernel or the operator machinery of the closed forms.

use crate::error::{Error, Result};
use crate::pair::ParticlePair;
use crate::particle::{Polarizability, ThermalGeometry};

/// Smallest number of modes summed, regardless of tolerance.
pub const MIN_MODES: u64 = 8;
/// Mode budget before giving up.
pub const MAX_MODES: u64 = 10_000_000;

pub fn u(x: f64) -> f64 {
    1.0 + x * (1.0 + x)
}

pub fn v(x: f64) -> f64 {
    3.0 + x * (3.0 + x)
}

/// A truncated symmetric Matsubara sum `Σ_{m=-∞}^{∞} h(|m|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSum {
    pub y: f64,
    /// Largest `|m|` included.
    pub m_max: u64,
    /// Bound on the magnitude of the omitted tail.
    pub tail_bound: f64,
    pub partial: f64,
}

/// Exponential-polynomial envelope `weight · e^{-decay·x} (1 + x)^degree`
/// bounding `|h(m)|` at `x = m · step`.
#[derive(Debug, Clone, Copy)]
struct Envelope {
    step: f64,
    decay: f64,
    degree: i32,
    weight: f64,
}

impl Envelope {
    fn at(&self, m: u64) -> f64 {
        let x = m as f64 * self.step;
        self.weight * (-self.decay * x).exp() * (1.0 + x).powi(self.degree)
    }

    /// Bound on `Σ_{m > n} envelope(m)`, both signs of `m` included.
    fn tail(&self, n: u64) -> f64 {
        let n = n as f64;
        let x = n * self.step;
        // Ratio of consecutive envelope terms is largest at m = n.
        let ratio = (-self.decay * self.step).exp()
            * ((1.0 + x + self.step) / (1.0 + x)).powi(self.degree);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        2.0 * self.at(n as u64) * ratio / (1.0 - ratio)
    }
}

fn summate(
    y: f64,
    tol: f64,
    envelope: Envelope,
    summand: impl Fn(u64) -> f64,
) -> Result<MatsubaraSum> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let mut partial = summand(0);
    let mut m = 0;
    loop {
        m += 1;
        if m > MAX_MODES {
            return Err(Error::Truncation {
                tol,
                m_max: MAX_MODES,
            });
        }
        partial += 2.0 * summand(m);
        if m >= MIN_MODES {
            let tail = envelope.tail(m);
            if tail <= tol * partial.abs() || (envelope.weight == 0.0) {
                return Ok(MatsubaraSum {
                    y,
                    m_max: m,
                    tail_bound: tail,
                    partial,
                });
            }
        }
    }
}

fn require_positive_temperature(geom: &ThermalGeometry) -> Result<()> {
    if geom.temperature() > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(
            "Matsubara summation needs T > 0; use the closed form at T = 0".into(),
        ))
    }
}

/// TE part of the plate summand at mode `m`, before the `-T/(8Z³)` prefactor.
///
/// The TE polarization tensor is `-ζ²/2 · 1⊥`, so the `k⊥` integral gives
/// `x² e^{-x} / 2` per unit `α⊥` with `x = 2|ζ_m| Z = |m| y`.
pub fn plate_te_summand(p: &Polarizability, y: f64, m: u64) -> f64 {
    let x = m as f64 * y;
    (p.alpha_perp - p.beta_perp) * 0.5 * x * x * (-x).exp()
}

/// TM part of the plate summand at mode `m`, before the `-T/(8Z³)` prefactor.
pub fn plate_tm_summand(p: &Polarizability, y: f64, m: u64) -> f64 {
    let x = m as f64 * y;
    let transverse = (p.alpha_perp - p.beta_perp) * (1.0 + x + 0.5 * x * x);
    let axial = (p.alpha_z - p.beta_z) * (1.0 + x);
    (transverse + axial) * (-x).exp()
}

/// Full plate summand from the image dyadic, before the `-T/(8Z³)`
/// prefactor: transverse components see `u(x)`, the normal component
/// `v(x) - u(x) = 2(1 + x)` reflected with a sign flip.
pub fn plate_summand(p: &Polarizability, y: f64, m: u64) -> f64 {
    let x = m as f64 * y;
    let transverse = (p.alpha_perp - p.beta_perp) * u(x);
    let axial = (p.alpha_z - p.beta_z) * 0.5 * (v(x) - u(x));
    (transverse + axial) * (-x).exp()
}

/// Plate free energy by Matsubara summation.
pub fn plate_free_energy_oracle(
    p: &Polarizability,
    geom: &ThermalGeometry,
    tol: f64,
) -> Result<f64> {
    Ok(plate_matsubara_sum(p, geom, tol)?.1)
}

/// The raw sum together with the free energy it yields.
pub fn plate_matsubara_sum(
    p: &Polarizability,
    geom: &ThermalGeometry,
    tol: f64,
) -> Result<(MatsubaraSum, f64)> {
    p.validate()?;
    require_positive_temperature(geom)?;
    let y = geom.y();
    let envelope = Envelope {
        step: y,
        decay: 1.0,
        degree: 2,
        weight: (p.alpha_perp - p.beta_perp).abs() + 2.0 * (p.alpha_z - p.beta_z).abs(),
    };
    let sum = summate(y, tol, envelope, |m| plate_summand(p, y, m))?;
    let z = geom.separation();
    let free = -geom.temperature() / (8.0 * z.powi(3)) * sum.partial;
    Ok((sum, free))
}

/// Whether the TE summand vanishes identically in the static mode `m = 0`.
///
/// This is why a Drude plate, which lacks exactly that mode, gives the same
/// result as a perfectly conducting one.
pub fn te_mode_zero_check(geom: &ThermalGeometry) -> bool {
    let unit = Polarizability::isotropic(1.0, 0.0);
    plate_te_summand(&unit, geom.y(), 0) == 0.0
}

/// Electric-electric summand `e^{-2x}[α⊥¹α⊥² u² + 2α_z¹α_z² (1 + x)²]`.
///
/// The free dyadic has transverse entries `u(x)` and axial entry
/// `u(x) - v(x) = -2(1 + x)`, with `x = |ζ_m| Z = |m| y / 2`.
fn pair_same_sector_summand(perp: f64, axial: f64, x: f64) -> f64 {
    let ux = u(x);
    let zz = u(x) - v(x);
    (-2.0 * x).exp() * (perp * ux * ux + 0.5 * axial * zz * zz)
}

/// Cross summand `x²(1 + x)² e^{-2x}` from `Φ₀ ∝ ζ (1 + x) e^{-x} R×`.
fn pair_cross_summand(x: f64) -> f64 {
    let a = x * (1.0 + x);
    a * a * (-2.0 * x).exp()
}

/// Pair free energy by Matsubara summation, all three sectors.
pub fn pair_free_energy_oracle(pair: &ParticlePair, tol: f64) -> Result<f64> {
    let (p1, p2) = (&pair.first, &pair.second);
    p1.validate()?;
    p2.validate()?;
    require_positive_temperature(&pair.geom)?;
    let y = pair.geom.y();
    let perp = p1.alpha_perp * p2.alpha_perp + p1.beta_perp * p2.beta_perp;
    let axial = p1.alpha_z * p2.alpha_z + p1.beta_z * p2.beta_z;
    let cross = p1.alpha_perp * p2.beta_perp + p1.beta_perp * p2.alpha_perp;
    let envelope = Envelope {
        step: 0.5 * y,
        decay: 2.0,
        degree: 4,
        weight: perp.abs() + 2.0 * axial.abs() + cross.abs(),
    };
    let sum = summate(y, tol, envelope, |m| {
        let x = 0.5 * m as f64 * y;
        // Same-sector terms are attractive, the cross term repulsive.
        pair_same_sector_summand(perp, axial, x) - cross * pair_cross_summand(x)
    })?;
    let z = pair.geom.separation();
    Ok(-pair.geom.temperature() / z.powi(6) * sum.partial)
}

/// Grid of verification points: every `(γ_α, γ_β)` pair at every `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyGrid {
    pub gammas: Vec<f64>,
    pub ys: Vec<f64>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        Self {
            gammas: vec![0.0, 0.5, 1.0, 2.0],
            ys: vec![0.2, 1.0, 5.0, 20.0],
        }
    }
}

/// One closed-form versus oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyPoint {
    pub system: &'static str,
    pub gamma_alpha: f64,
    pub gamma_beta: f64,
    pub y: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tol: f64,
    pub points: Vec<VerifyPoint>,
    pub max_relative_deviation: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_relative_deviation <= self.tol
    }
}

/// Summation tolerance used for the oracle side of a verification run.
pub const VERIFY_SUM_TOL: f64 = 1e-15;

fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Compares the closed-form free energies against the Matsubara sums.
pub fn verify(grid: &VerifyGrid, tol: f64) -> Result<VerifyReport> {
    verify_with(
        grid,
        tol,
        crate::plate::plate_free_energy,
        crate::pair::pair_free_energy,
    )
}

/// [`verify`] with the closed forms supplied by the caller.
///
/// Systems checked at each grid point, with `Z = 1`:
/// a conducting-sphere-like particle `(γ_α, 1, -γ_β/2, -1/2)` above the
/// plate, two such particles, and an electric `(γ_α, 1)` particle facing a
/// magnetic `(γ_β, 1)` one.
pub fn verify_with(
    grid: &VerifyGrid,
    tol: f64,
    plate_closed: impl Fn(&Polarizability, &ThermalGeometry) -> Result<f64>,
    pair_closed: impl Fn(&ParticlePair) -> Result<f64>,
) -> Result<VerifyReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let mut points = Vec::new();
    for &y in &grid.ys {
        let geom = ThermalGeometry::from_reduced(1.0, y)?;
        require_positive_temperature(&geom)?;
        for &ga in &grid.gammas {
            for &gb in &grid.gammas {
                let pc = Polarizability::new(ga, 1.0, -0.5 * gb, -0.5)?;
                let electric = Polarizability::electric(ga, 1.0);
                let magnetic = Polarizability::magnetic(gb, 1.0);
                let plate = (plate_closed(&pc, &geom)?, plate_free_energy_oracle(&pc, &geom, VERIFY_SUM_TOL)?);
                let pair = ParticlePair::new(pc, pc, geom);
                let pair = (pair_closed(&pair)?, pair_free_energy_oracle(&pair, VERIFY_SUM_TOL)?);
                let cross = ParticlePair::new(electric, magnetic, geom);
                let cross = (pair_closed(&cross)?, pair_free_energy_oracle(&cross, VERIFY_SUM_TOL)?);
                for (system, (closed_form, oracle)) in [("plate", plate), ("pair", pair), ("pair-em", cross)] {
                    points.push(VerifyPoint {
                        system,
                        gamma_alpha: ga,
                        gamma_beta: gb,
                        y,
                        closed_form,
                        oracle,
                        relative_deviation: relative_deviation(closed_form, oracle),
                    });
                }
            }
        }
    }
    let max_relative_deviation = points
        .iter()
        .map(|p| p.relative_deviation)
        .fold(0.0, f64::max);
    Ok(VerifyReport {
        tol,
        points,
        max_relative_deviation,
    })
}
