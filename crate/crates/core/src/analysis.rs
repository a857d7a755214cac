//! Locating negative-entropy regions.
//!
//! Zero crossings of an entropy curve in `y` are bracketed on a geometric
//! grid and refined by bisection. The critical anisotropy of a system is
//! found by bisecting, in `γ`, the predicate "the entropy dips below zero
//! somewhere in `y`", where each evaluation is a full minimization over the
//! `y` window backed by the exact small-`y` expansion below the window.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operator::SmallYExpansion;
use crate::pair::{pair_scaled_entropy, pair_scaled_entropy_small_y};
use crate::particle::{Polarizability, Sector};
use crate::plate::{plate_scaled_entropy, plate_scaled_entropy_small_y, PlateChannel};

/// Default `y` window for entropy searches. Below it the sign is read off
/// the small-`y` expansion; above it every entropy sits on its asymptote.
pub const DEFAULT_Y_WINDOW: (f64, f64) = (0.05, 50.0);
pub const DEFAULT_GRID_POINTS: usize = 400;
/// Relative size, against the positive maximum, below which a minimum is
/// not counted as negative.
pub const NEGATIVITY_EPSILON: f64 = 1e-14;

const GOLDEN_MAX_ITER: u32 = 200;
const MAX_REFINED_MINIMA: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    ZeroCrossingY,
    CriticalGamma,
}

impl fmt::Display for CriticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriticalKind::ZeroCrossingY => "zero_crossing_y",
            CriticalKind::CriticalGamma => "critical_gamma",
        })
    }
}

/// A located root with its final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalResult {
    pub kind: CriticalKind,
    pub value: f64,
    pub bracket: (f64, f64),
    /// Objective evaluated at `value`.
    pub objective_at_value: f64,
    /// Objective at the two bracket ends.
    pub objective_at_bracket: (f64, f64),
    pub iterations: u32,
}

fn check_range(range: (f64, f64)) -> Result<()> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!(
            "search range must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be > 0, got {tol}")))
    }
}

fn evaluate(curve: &impl Fn(f64) -> Result<f64>, y: f64) -> Result<f64> {
    let value = curve(y)?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { y, value })
    }
}

/// `points` geometrically spaced values covering `[lo, hi]`.
pub fn geometric_grid(range: (f64, f64), points: usize) -> Vec<f64> {
    let (lo, hi) = range;
    let n = points.max(2);
    let ratio = (hi / lo).ln();
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * (ratio * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// All sign changes of `curve` on `y_range`, in ascending order.
pub fn zero_crossings(
    curve: impl Fn(f64) -> Result<f64>,
    y_range: (f64, f64),
    tol: f64,
) -> Result<Vec<CriticalResult>> {
    zero_crossings_on_grid(curve, y_range, tol, DEFAULT_GRID_POINTS)
}

pub fn zero_crossings_on_grid(
    curve: impl Fn(f64) -> Result<f64>,
    y_range: (f64, f64),
    tol: f64,
    points: usize,
) -> Result<Vec<CriticalResult>> {
    check_range(y_range)?;
    check_tol(tol)?;
    let grid = geometric_grid(y_range, points);
    let values = grid
        .iter()
        .map(|&y| evaluate(&curve, y))
        .collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    let mut last_nonzero: Option<usize> = None;
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            roots.push(CriticalResult {
                kind: CriticalKind::ZeroCrossingY,
                value: grid[i],
                bracket: (grid[i], grid[i]),
                objective_at_value: 0.0,
                objective_at_bracket: (0.0, 0.0),
                iterations: 0,
            });
            last_nonzero = None;
            continue;
        }
        if let Some(j) = last_nonzero {
            if values[j].signum() != values[i].signum() {
                roots.push(bisect_root(&curve, (grid[j], values[j]), (grid[i], values[i]), tol)?);
            }
        }
        last_nonzero = Some(i);
    }
    Ok(roots)
}

fn bisect_root(
    curve: &impl Fn(f64) -> Result<f64>,
    (mut a, mut fa): (f64, f64),
    (mut b, mut fb): (f64, f64),
    tol: f64,
) -> Result<CriticalResult> {
    let mut iterations = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = evaluate(curve, mid)?;
        iterations += 1;
        if fm == 0.0 {
            a = mid;
            b = mid;
            fa = 0.0;
            fb = 0.0;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    // Report whichever of the ends and the midpoint is closest to zero.
    let mid = 0.5 * (a + b);
    let fm = evaluate(curve, mid)?;
    let (value, objective) = [(a, fa), (b, fb), (mid, fm)]
        .into_iter()
        .min_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("three candidates");
    Ok(CriticalResult {
        kind: CriticalKind::ZeroCrossingY,
        value,
        bracket: (a, b),
        objective_at_value: objective,
        objective_at_bracket: (fa, fb),
        iterations,
    })
}

/// Minimum of `curve` over `y_range`: grid scan, then golden-section
/// refinement of the grid's local minima. Returns `(y_min, s_min)`.
pub fn min_entropy(curve: impl Fn(f64) -> Result<f64>, y_range: (f64, f64)) -> Result<(f64, f64)> {
    min_on_grid(&curve, y_range, DEFAULT_GRID_POINTS).map(|m| (m.y_min, m.s_min))
}

/// Result of a grid minimization, with the largest value seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub y_min: f64,
    pub s_min: f64,
    pub s_max: f64,
}

pub fn min_on_grid(
    curve: &impl Fn(f64) -> Result<f64>,
    y_range: (f64, f64),
    points: usize,
) -> Result<GridMinimum> {
    check_range(y_range)?;
    let grid = geometric_grid(y_range, points);
    let values = grid
        .iter()
        .map(|&y| evaluate(curve, y))
        .collect::<Result<Vec<_>>>()?;
    let s_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    // Ties resolve to the leftmost point.
    let mut best = (grid[0], values[0]);
    for (&y, &s) in grid.iter().zip(&values) {
        if s < best.1 {
            best = (y, s);
        }
    }

    let mut interior: Vec<usize> = (1..grid.len() - 1)
        .filter(|&i| values[i] < values[i - 1] && values[i] <= values[i + 1])
        .collect();
    interior.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    for &i in interior.iter().take(MAX_REFINED_MINIMA) {
        let (y, s) = golden_section(curve, grid[i - 1], grid[i + 1], (grid[i], values[i]))?;
        if s < best.1 {
            best = (y, s);
        }
    }
    Ok(GridMinimum {
        y_min: best.0,
        s_min: best.1,
        s_max,
    })
}

fn golden_section(
    curve: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    seed: (f64, f64),
) -> Result<(f64, f64)> {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = evaluate(curve, c)?;
    let mut fd = evaluate(curve, d)?;
    let mut best = seed;
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a) <= 1e-12 * (a.abs() + b.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = evaluate(curve, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = evaluate(curve, d)?;
        }
    }
    for candidate in [(c, fc), (d, fd)] {
        if candidate.1 < best.1 {
            best = candidate;
        }
    }
    Ok(best)
}

/// A plate or pair system whose entropy is probed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum System {
    Plate {
        particle: Polarizability,
        channel: PlateChannel,
    },
    Pair {
        first: Polarizability,
        second: Polarizability,
    },
}

impl System {
    /// `S · Z³` for the plate, `S · Z⁶` for the pair.
    pub fn scaled_entropy(&self, y: f64) -> Result<f64> {
        match self {
            System::Plate { particle, channel } => plate_scaled_entropy(particle, y, *channel),
            System::Pair { first, second } => pair_scaled_entropy(first, second, y),
        }
    }

    pub fn small_y(&self) -> Result<SmallYExpansion> {
        match self {
            System::Plate { particle, channel } => {
                Ok(plate_scaled_entropy_small_y(particle, *channel))
            }
            System::Pair { first, second } => pair_scaled_entropy_small_y(first, second),
        }
    }

    /// Multiplies every polarizability component by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            System::Plate { particle, channel } => System::Plate {
                particle: particle.scaled(factor),
                channel,
            },
            System::Pair { first, second } => System::Pair {
                first: first.scaled(factor),
                second: second.scaled(factor),
            },
        }
    }

    pub fn with_anisotropy(&self, sweep: Sweep, gamma: f64) -> Result<Self> {
        match *self {
            System::Plate { particle, channel } => {
                if sweep.target == SweepTarget::Second {
                    return Err(Error::Config(
                        "a plate system has only one particle to sweep".into(),
                    ));
                }
                Ok(System::Plate {
                    particle: particle.with_anisotropy(sweep.sector, gamma),
                    channel,
                })
            }
            System::Pair { first, second } => {
                let (first, second) = match sweep.target {
                    SweepTarget::First => (first.with_anisotropy(sweep.sector, gamma), second),
                    SweepTarget::Second => (first, second.with_anisotropy(sweep.sector, gamma)),
                    SweepTarget::Both => (
                        first.with_anisotropy(sweep.sector, gamma),
                        second.with_anisotropy(sweep.sector, gamma),
                    ),
                };
                Ok(System::Pair { first, second })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepTarget {
    First,
    Second,
    Both,
}

/// Which anisotropy is varied, and on which particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sweep {
    pub sector: Sector,
    pub target: SweepTarget,
}

impl Sweep {
    pub const fn new(sector: Sector, target: SweepTarget) -> Self {
        Self { sector, target }
    }

    pub fn parameter_name(&self) -> &'static str {
        match self.sector {
            Sector::Electric => "gamma_alpha",
            Sector::Magnetic => "gamma_beta",
        }
    }
}

/// A system with exactly one swept anisotropy.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub label: String,
    pub system: System,
    pub sweep: Sweep,
}

impl SystemConfig {
    pub fn new(label: impl Into<String>, system: System, sweep: Sweep) -> Self {
        Self {
            label: label.into(),
            system,
            sweep,
        }
    }

    pub fn at(&self, gamma: f64) -> Result<System> {
        self.system.with_anisotropy(self.sweep, gamma)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            label: self.label.clone(),
            system: self.system.scaled(factor),
            sweep: self.sweep,
        }
    }
}

/// Tunables for negativity probes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub y_window: (f64, f64),
    pub grid_points: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            y_window: DEFAULT_Y_WINDOW,
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

/// Outcome of probing one system for negative entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityProbe {
    pub y_min: f64,
    /// Smallest scaled entropy found, including the region below the window.
    pub s_min: f64,
    pub s_max: f64,
    pub small_y: SmallYExpansion,
    pub negative: bool,
}

/// Minimizes the entropy of `system` over the window and consults the
/// small-`y` expansion for the region below it.
pub fn probe_negativity(system: &System, options: &SearchOptions) -> Result<NegativityProbe> {
    let curve = |y: f64| system.scaled_entropy(y);
    let grid = min_on_grid(&curve, options.y_window, options.grid_points)?;
    let small_y = system.small_y()?;
    let (mut y_min, mut s_min) = (grid.y_min, grid.s_min);
    if small_y.starts_negative() {
        let (y, below) = small_y.min_below(options.y_window.0);
        let below = below.min(-f64::MIN_POSITIVE);
        if below < s_min {
            y_min = y;
            s_min = below;
        }
    }
    let scale = if grid.s_max > 0.0 {
        grid.s_max
    } else {
        s_min.abs()
    };
    let negative = s_min < -NEGATIVITY_EPSILON * scale || small_y.starts_negative();
    Ok(NegativityProbe {
        y_min,
        s_min,
        s_max: grid.s_max,
        small_y,
        negative,
    })
}

/// Result of a critical-anisotropy search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalSearch {
    Found(CriticalResult),
    /// Negativity is the same at both ends of the range.
    NoneInRange {
        range: (f64, f64),
        negative_at_ends: (bool, bool),
    },
}

impl CriticalSearch {
    pub fn found(&self) -> Option<&CriticalResult> {
        match self {
            CriticalSearch::Found(r) => Some(r),
            CriticalSearch::NoneInRange { .. } => None,
        }
    }
}

/// Locates `γ*` where a negative-entropy region appears or disappears.
pub fn critical_anisotropy(
    config: &SystemConfig,
    gamma_range: (f64, f64),
    tol: f64,
) -> Result<CriticalSearch> {
    critical_anisotropy_with(config, gamma_range, tol, &SearchOptions::default())
}

pub fn critical_anisotropy_with(
    config: &SystemConfig,
    gamma_range: (f64, f64),
    tol: f64,
    options: &SearchOptions,
) -> Result<CriticalSearch> {
    let (mut lo, mut hi) = gamma_range;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::Domain(format!(
            "gamma range must satisfy lo < hi, got ({lo}, {hi})"
        )));
    }
    check_tol(tol)?;
    let probe = |gamma: f64| probe_negativity(&config.at(gamma)?, options);
    let mut p_lo = probe(lo)?;
    let mut p_hi = probe(hi)?;
    if p_lo.negative == p_hi.negative {
        return Ok(CriticalSearch::NoneInRange {
            range: gamma_range,
            negative_at_ends: (p_lo.negative, p_hi.negative),
        });
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let p_mid = probe(mid)?;
        iterations += 1;
        if p_mid.negative == p_lo.negative {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(CriticalSearch::Found(CriticalResult {
        kind: CriticalKind::CriticalGamma,
        value,
        bracket: (lo, hi),
        objective_at_value: probe(value)?.s_min,
        objective_at_bracket: (p_lo.s_min, p_hi.s_min),
        iterations,
    }))
}

/// The situations compared in the summary table of negative-entropy
/// conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableRow {
    /// Two electrically polarizable particles.
    ElectricElectric,
    /// An electric particle and a (diamagnetic) magnetic one.
    ElectricMagnetic,
    /// Two perfectly conducting particles.
    ConductingConducting,
    /// A perfectly conducting particle and a Drude particle.
    ConductingDrude,
    /// Electric particle, TE part of a conducting plate.
    ElectricTePlate,
    /// Electric particle, TM part of a conducting plate.
    ElectricTmPlate,
    /// Electric particle, full conducting (or Drude) plate.
    ElectricConductingPlate,
}

/// What the table states for one sweep of a row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expected {
    Always,
    Above { threshold: f64, tolerance: f64 },
}

impl TableRow {
    pub const ALL: [TableRow; 7] = [
        TableRow::ElectricElectric,
        TableRow::ElectricMagnetic,
        TableRow::ConductingConducting,
        TableRow::ConductingDrude,
        TableRow::ElectricTePlate,
        TableRow::ElectricTmPlate,
        TableRow::ElectricConductingPlate,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            TableRow::ElectricElectric => "E/E",
            TableRow::ElectricMagnetic => "E/M",
            TableRow::ConductingConducting => "PC/PC",
            TableRow::ConductingDrude => "PC/D",
            TableRow::ElectricTePlate => "E/TE plate",
            TableRow::ElectricTmPlate => "E/TM plate",
            TableRow::ElectricConductingPlate => "E/PC or D plate",
        }
    }

    pub fn printed(&self) -> &'static str {
        match self {
            TableRow::ElectricElectric => "S<0 occurs for gamma_alpha>1",
            TableRow::ElectricMagnetic => "S<0 always",
            TableRow::ConductingConducting => "S<0 for gamma_alpha>0.74 or gamma_beta>0.54",
            TableRow::ConductingDrude => "S<0 for gamma_alpha>0.91 or gamma_beta>0.66",
            TableRow::ElectricTePlate => "S<0 always",
            TableRow::ElectricTmPlate => "S<0 for gamma_alpha>2",
            TableRow::ElectricConductingPlate => "S<0 for gamma_alpha>1/2",
        }
    }

    /// The swept configurations of this row with the printed expectation
    /// for each.
    pub fn sweeps(&self) -> Vec<(SystemConfig, Expected)> {
        use Sector::{Electric, Magnetic};
        use SweepTarget::{Both, First};
        let exact = |threshold| Expected::Above {
            threshold,
            tolerance: 1e-3,
        };
        let two_digit = |threshold| Expected::Above {
            threshold,
            tolerance: 0.01,
        };
        let pc = Polarizability::conducting_sphere(1.0);
        let drude = Polarizability::electric(1.0, 1.0);
        let pair = |first, second| System::Pair { first, second };
        let plate = |channel| System::Plate {
            particle: Polarizability::electric(1.0, 1.0),
            channel,
        };
        let label = self.label();
        let config = |system, sweep| SystemConfig::new(label, system, sweep);
        match self {
            TableRow::ElectricElectric => vec![(
                config(pair(drude, drude), Sweep::new(Electric, Both)),
                exact(1.0),
            )],
            TableRow::ElectricMagnetic => vec![(
                config(
                    pair(drude, Polarizability::magnetic(-1.0, -1.0)),
                    Sweep::new(Electric, First),
                ),
                Expected::Always,
            )],
            TableRow::ConductingConducting => vec![
                (config(pair(pc, pc), Sweep::new(Electric, Both)), two_digit(0.74)),
                (config(pair(pc, pc), Sweep::new(Magnetic, Both)), two_digit(0.54)),
            ],
            TableRow::ConductingDrude => vec![
                (config(pair(pc, drude), Sweep::new(Electric, Both)), two_digit(0.91)),
                (config(pair(pc, drude), Sweep::new(Magnetic, First)), two_digit(0.66)),
            ],
            TableRow::ElectricTePlate => vec![(
                config(plate(PlateChannel::Te), Sweep::new(Electric, First)),
                Expected::Always,
            )],
            TableRow::ElectricTmPlate => vec![(
                config(plate(PlateChannel::Tm), Sweep::new(Electric, First)),
                exact(2.0),
            )],
            TableRow::ElectricConductingPlate => vec![(
                config(plate(PlateChannel::Total), Sweep::new(Electric, First)),
                exact(0.5),
            )],
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TableRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match key.as_str() {
            "ee" => TableRow::ElectricElectric,
            "em" => TableRow::ElectricMagnetic,
            "pcpc" => TableRow::ConductingConducting,
            "pcd" | "pcdrude" => TableRow::ConductingDrude,
            "eteplate" | "ete" => TableRow::ElectricTePlate,
            "etmplate" | "etm" => TableRow::ElectricTmPlate,
            "epcplate" | "epcordplate" | "edplate" | "eplate" => {
                TableRow::ElectricConductingPlate
            }
            _ => return Err(Error::Config(format!("unknown table row '{s}'"))),
        })
    }
}

/// Computed behaviour of one sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Always,
    Never,
    Above(CriticalResult),
    /// Negativity switches off as γ grows.
    Below(CriticalResult),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepVerdict {
    pub config: SystemConfig,
    pub expected: Expected,
    pub verdict: Verdict,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub row: TableRow,
    pub sweeps: Vec<SweepVerdict>,
}

impl TableEntry {
    pub fn matches(&self) -> bool {
        self.sweeps.iter().all(|s| s.matches)
    }
}

/// Anisotropies sampled when classifying a sweep.
pub const TABLE_GAMMA_SAMPLES: (f64, f64, usize) = (0.05, 20.0, 33);

/// Tolerance on located thresholds in the table.
pub const TABLE_TOLERANCE: f64 = 1e-6;

/// Classifies one sweep: negative for every sampled `γ`, for none, or above
/// (below) a located critical value.
pub fn classify_sweep(config: &SystemConfig) -> Result<Verdict> {
    let (lo, hi, n) = TABLE_GAMMA_SAMPLES;
    let options = SearchOptions::default();
    let gammas = geometric_grid((lo, hi), n);
    let flags = gammas
        .iter()
        .map(|&g| Ok(probe_negativity(&config.at(g)?, &options)?.negative))
        .collect::<Result<Vec<_>>>()?;
    if flags.iter().all(|&f| f) {
        return Ok(Verdict::Always);
    }
    if flags.iter().all(|&f| !f) {
        return Ok(Verdict::Never);
    }
    let switch = flags
        .windows(2)
        .position(|w| w[0] != w[1])
        .expect("mixed flags have a switch");
    let bracket = (gammas[switch], gammas[switch + 1]);
    match critical_anisotropy(config, bracket, TABLE_TOLERANCE)? {
        CriticalSearch::Found(result) if flags[switch + 1] => Ok(Verdict::Above(result)),
        CriticalSearch::Found(result) => Ok(Verdict::Below(result)),
        CriticalSearch::NoneInRange { .. } => Err(Error::Config(format!(
            "lost the sign change of '{}' in ({}, {})",
            config.label, bracket.0, bracket.1
        ))),
    }
}

/// Recomputes the negative-entropy verdicts for the given rows.
pub fn classify_table(rows: &[TableRow]) -> Result<Vec<TableEntry>> {
    rows.iter()
        .map(|&row| {
            let sweeps = row
                .sweeps()
                .into_iter()
                .map(|(config, expected)| {
                    let verdict = classify_sweep(&config)?;
                    let matches = match (expected, &verdict) {
                        (Expected::Always, Verdict::Always) => true,
                        (
                            Expected::Above {
                                threshold,
                                tolerance,
                            },
                            Verdict::Above(r),
                        ) => (r.value - threshold).abs() <= tolerance,
                        _ => false,
                    };
                    Ok(SweepVerdict {
                        config,
                        expected,
                        verdict,
                        matches,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(TableEntry { row, sweeps })
        })
        .collect()
}
