//! Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
//! budgets are pinned here.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use casimir_entropy::analysis::{
    classify_table, critical_anisotropy, geometric_grid, min_entropy, zero_crossings,
    CriticalSearch, SystemConfig, TableRow,
};
use casimir_entropy::figures::{preset, FigureData, MIN_ROWS, PRESET_IDS};
use casimir_entropy::oracle::{verify, VerifyGrid};
use casimir_entropy::pair::{
    g_pair_em, pair_entropy, pair_entropy_small_y, pair_free_energy, pair_scaled_entropy,
    pair_scaled_entropy_small_y, pair_thermal_free_energy, s_pair_ee, s_pair_ee_small_y,
    s_pair_em, ParticlePair,
};
use casimir_entropy::plate::{
    plate_entropy, plate_entropy_channel, plate_free_energy, plate_thermal_free_energy, s_plate,
    s_plate_channel_small_y, s_plate_small_y, s_plate_te, PlateChannel,
};
use casimir_entropy::{Polarizability, ThermalGeometry};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sweep(row: TableRow, index: usize) -> SystemConfig {
    row.sweeps().swap_remove(index).0
}

fn threshold(config: &SystemConfig, range: (f64, f64), tol: f64) -> Result<f64, String> {
    match critical_anisotropy(config, range, tol).map_err(err)? {
        CriticalSearch::Found(r) => Ok(r.value),
        other => Err(format!("{}: {other:?}", config.label)),
    }
}

// 1. Zero crossing of the isotropic plate entropy.
fn zero_crossing() -> Check {
    let roots = zero_crossings(|y| s_plate(1.0, y), (0.1, 50.0), 1e-8).map_err(err)?;
    ensure(roots.len() == 1, || format!("{} roots", roots.len()))?;
    let y = roots[0].value;
    ensure((y - 2.97169).abs() <= 1e-4, || format!("y* = {y}"))?;
    Ok(format!("y* = {y:.6}"))
}

// 2. Perfectly conducting pair.
fn pc_pc() -> Check {
    let ga = threshold(&sweep(TableRow::ConductingConducting, 0), (0.3, 1.0), 1e-6)?;
    let gb = threshold(&sweep(TableRow::ConductingConducting, 1), (0.3, 1.0), 1e-6)?;
    ensure((ga - 0.7427).abs() <= 1e-3, || format!("gamma_alpha* = {ga}"))?;
    ensure((gb - 0.5436).abs() <= 1e-3, || format!("gamma_beta* = {gb}"))?;
    Ok(format!("gamma_alpha* = {ga:.5}, gamma_beta* = {gb:.5}"))
}

// 3. Conducting and Drude particles.
fn pc_drude() -> Check {
    let ga = threshold(&sweep(TableRow::ConductingDrude, 0), (0.3, 1.5), 1e-6)?;
    let gb = threshold(&sweep(TableRow::ConductingDrude, 1), (0.3, 1.5), 1e-6)?;
    ensure((ga - 0.91).abs() <= 0.01, || format!("gamma_alpha* = {ga}"))?;
    ensure((gb - 0.66).abs() <= 0.01, || format!("gamma_beta* = {gb}"))?;
    Ok(format!("gamma_alpha* = {ga:.5}, gamma_beta* = {gb:.5}"))
}

// 4. Leading small-y coefficients vanish at the analytic thresholds.
fn analytic_thresholds() -> Check {
    let plate = |g| s_plate_small_y(g).c3 * 540.0;
    let tm = |g| s_plate_channel_small_y(g, PlateChannel::Tm).c3 * 540.0;
    let ee = |g| s_pair_ee_small_y(g).c3 * 2070.0;
    let iso = |r| -> Result<f64, String> {
        let p = Polarizability::isotropic(1.0, r);
        Ok(pair_scaled_entropy_small_y(&p, &p).map_err(err)?.c3 * 90.0)
    };
    let checks: [(&str, f64, f64, f64); 3] = [
        ("plate total at 1/2", plate(0.5), plate(0.49), plate(0.51)),
        ("plate TM at 2", tm(2.0), tm(1.99), tm(2.01)),
        ("pair EE at 1", ee(1.0), ee(0.99), ee(1.01)),
    ];
    for (name, at, below, above) in checks {
        ensure(at.abs() <= 1e-12, || format!("{name}: {at:e}"))?;
        ensure(below > 0.0 && above < 0.0, || format!("{name}: no sign change"))?;
    }
    let r = iso(-0.125)?;
    ensure(r.abs() <= 1e-12, || format!("isotropic pair r=-1/8: {r:e}"))?;
    Ok("all four vanish; sign changes across the first three".into())
}

// 5. Asymptotes.
fn asymptotes() -> Check {
    for g in [0.0, 0.5, 1.0, 2.0, 5.0] {
        let s = s_plate(g, 50.0).map_err(err)?;
        ensure((s - (1.0 + g) / 12.0).abs() <= 1e-10, || format!("s_plate({g}, 50) = {s}"))?;
        let s = s_pair_ee(g, 50.0).map_err(err)?;
        ensure((s - (2.0 + g) / 23.0).abs() <= 1e-10, || format!("s_EE({g}, 50) = {s}"))?;
    }
    let em = s_pair_em(0.2).map_err(err)?;
    let lead = -0.2f64.powi(5) / 7056.0;
    ensure(((em - lead) / lead).abs() <= 0.05, || format!("s_EM(0.2) = {em:e}"))?;
    let g = g_pair_em(1e-3).map_err(err)?;
    ensure((g - 1.0).abs() <= 1e-5, || format!("g(1e-3) = {g}"))?;
    Ok(format!("s_EM(0.2)/leading = {:.4}", em / lead))
}

// 6. Closed forms against Matsubara sums.
fn oracle_equivalence() -> Check {
    let report = verify(&VerifyGrid::default(), 1e-10).map_err(err)?;
    ensure(report.passed(), || {
        format!("max relative deviation {:e}", report.max_relative_deviation)
    })?;
    Ok(format!(
        "{} points, max relative deviation {:.2e}",
        report.points.len(),
        report.max_relative_deviation
    ))
}

fn grid_systems(ga: f64, gb: f64) -> (Polarizability, Polarizability, Polarizability) {
    (
        Polarizability::new(ga, 1.0, -0.5 * gb, -0.5).unwrap(),
        Polarizability::electric(ga, 1.0),
        Polarizability::magnetic(gb, 1.0),
    )
}

// 7. S = -dF/dT by central differences of the thermal part.
fn thermodynamic_consistency() -> Check {
    let grid = VerifyGrid::default();
    let mut worst: f64 = 0.0;
    for &y in &grid.ys {
        let geom = ThermalGeometry::from_reduced(1.0, y).map_err(err)?;
        let t = geom.temperature();
        let h = 1e-4 * t;
        let (lo, hi) = (
            geom.with_temperature(t - h).map_err(err)?,
            geom.with_temperature(t + h).map_err(err)?,
        );
        let zero = geom.with_temperature(0.0).map_err(err)?;
        for &ga in &grid.gammas {
            for &gb in &grid.gammas {
                let (pc, e, m) = grid_systems(ga, gb);
                let plate = |g: &ThermalGeometry| plate_thermal_free_energy(&pc, g);
                let pairs = [ParticlePair::new(pc, pc, geom), ParticlePair::new(e, m, geom)];
                let mut cases = vec![(
                    "plate",
                    plate_entropy(&pc, &geom).map_err(err)?,
                    -(plate(&hi).map_err(err)? - plate(&lo).map_err(err)?) / (2.0 * h),
                    plate_entropy(&pc, &zero).map_err(err)?,
                )];
                for pair in pairs {
                    let at = |g: ThermalGeometry| pair_thermal_free_energy(&ParticlePair { geom: g, ..pair });
                    cases.push((
                        "pair",
                        pair_entropy(&pair).map_err(err)?,
                        -(at(hi).map_err(err)? - at(lo).map_err(err)?) / (2.0 * h),
                        pair_entropy(&ParticlePair { geom: zero, ..pair }).map_err(err)?,
                    ));
                }
                for (name, exact, numeric, at_zero) in cases {
                    ensure(at_zero == 0.0, || format!("{name}: S(T=0) = {at_zero:e}"))?;
                    let scale = exact.abs().max(numeric.abs());
                    let dev = if scale == 0.0 { 0.0 } else { (exact - numeric).abs() / scale };
                    worst = worst.max(dev);
                    ensure(dev <= 1e-6, || {
                        format!("{name} ga={ga} gb={gb} y={y}: S={exact:e}, -dF/dT={numeric:e}")
                    })?;
                }
            }
        }
    }
    Ok(format!("max relative deviation {worst:.2e}"))
}

// 8. Two-term small-y formula is off by O(y^7).
fn small_y_scaling() -> Check {
    let pc = Polarizability::conducting_sphere(1.0);
    let pairs = [
        ("E/E gamma=2", Polarizability::electric(2.0, 1.0), Polarizability::electric(1.0, 1.0)),
        ("PC/PC", pc, pc),
        (
            "mixed",
            Polarizability::new(0.7, 1.0, -0.3, 0.4).unwrap(),
            Polarizability::new(1.3, 0.5, 0.8, -0.6).unwrap(),
        ),
    ];
    let mut ratios = Vec::new();
    for (name, p1, p2) in pairs {
        let residual = |y: f64| -> Result<f64, String> {
            let pair = ParticlePair::new(p1, p2, ThermalGeometry::from_reduced(1.0, y).map_err(err)?);
            Ok((pair_entropy(&pair).map_err(err)? - pair_entropy_small_y(&pair).map_err(err)?).abs())
        };
        for y in [0.4, 0.2] {
            let ratio = residual(y)? / residual(y / 2.0)?;
            ensure((ratio / 128.0 - 1.0).abs() <= 0.1, || format!("{name}: ratio {ratio} at y={y}"))?;
            ratios.push(ratio);
        }
    }
    Ok(format!(
        "halving ratios {}",
        ratios.iter().map(|r| format!("{r:.1}")).collect::<Vec<_>>().join(", ")
    ))
}

// 9. Summary table.
fn table() -> Check {
    let entries = classify_table(&TableRow::ALL).map_err(err)?;
    for e in &entries {
        ensure(e.matches(), || format!("row {} does not match: {:?}", e.row, e.sweeps))?;
    }
    let status = Command::new(env!("CARGO_BIN_EXE_casimir-entropy"))
        .args(["table", "--format", "json"])
        .output()
        .map_err(err)?
        .status;
    ensure(status.code() == Some(0), || format!("table command exited {status}"))?;
    Ok(format!("{} rows match; table command exits 0", entries.len()))
}

fn components() -> impl Strategy<Value = Polarizability> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(a, b, c, d)| Polarizability::new(a, b, c, d).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300)
}

// 10. Symmetries on random inputs.
fn symmetries() -> Check {
    const CASES: u32 = 1000;
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new(config.clone());
    runner
        .run(&(components(), components(), 0.01..30.0f64), |(p1, p2, y)| {
            let geom = ThermalGeometry::from_reduced(1.0, y).unwrap();
            let pair = ParticlePair::new(p1, p2, geom);
            let f = pair_free_energy(&pair).unwrap();
            let s = pair_entropy(&pair).unwrap();
            for other in [pair.dual(), pair.exchanged()] {
                prop_assert!(close(f, pair_free_energy(&other).unwrap()));
                prop_assert!(close(s, pair_entropy(&other).unwrap()));
            }
            let image = Polarizability::new(-p1.beta_perp, -p1.beta_z, -p1.alpha_perp, -p1.alpha_z).unwrap();
            prop_assert!(close(plate_free_energy(&p1, &geom).unwrap(), plate_free_energy(&image, &geom).unwrap()));
            prop_assert!(close(plate_entropy(&p1, &geom).unwrap(), plate_entropy(&image, &geom).unwrap()));
            for channel in [PlateChannel::Te, PlateChannel::Tm] {
                prop_assert!(close(
                    plate_entropy_channel(&p1, &geom, channel).unwrap(),
                    plate_entropy_channel(&image, &geom, channel).unwrap()
                ));
            }
            Ok(())
        })
        .map_err(|e| format!("pointwise symmetry: {e}"))?;

    // Thresholds under positive rescaling of every polarizability.
    let tol = 1e-5;
    let configs = [
        (sweep(TableRow::ElectricElectric, 0), (0.95, 1.05)),
        (sweep(TableRow::ConductingConducting, 0), (0.7, 0.8)),
        (sweep(TableRow::ConductingDrude, 1), (0.6, 0.7)),
        (sweep(TableRow::ElectricConductingPlate, 0), (0.45, 0.55)),
    ];
    let base: Vec<f64> = configs
        .iter()
        .map(|(c, r)| threshold(c, *r, tol))
        .collect::<Result<_, _>>()?;
    let mut runner = TestRunner::new(config);
    runner
        .run(&(0..configs.len(), -3.0..3.0f64), |(i, log_c)| {
            let (config, range) = &configs[i];
            let scaled = config.scaled(10f64.powf(log_c));
            let g = threshold(&scaled, *range, tol).map_err(TestCaseError::fail)?;
            prop_assert!((g - base[i]).abs() <= tol, "{} scaled by 1e{log_c}: {g} vs {}", config.label, base[i]);
            Ok(())
        })
        .map_err(|e| format!("threshold scaling: {e}"))?;
    Ok(format!("{CASES} pointwise cases, {CASES} rescaled threshold searches"))
}

// 11. Sign properties on dense grids.
fn signs() -> Check {
    let ys = geometric_grid((1e-3, 200.0), 4000);
    let drude = Polarizability::isotropic(1.0, 0.0);
    for &y in &ys {
        for g in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let s = s_plate_te(g, y).map_err(err)?;
            ensure(s <= 0.0, || format!("s_TE({g}, {y}) = {s:e}"))?;
        }
        let em = s_pair_em(y).map_err(err)?;
        ensure(em <= 0.0, || format!("s_EM({y}) = {em:e}"))?;
        let dd = pair_scaled_entropy(&drude, &drude, y).map_err(err)?;
        ensure(dd >= 0.0, || format!("Drude pair at {y}: {dd:e}"))?;
    }
    let pc = Polarizability::conducting_sphere(1.0);
    let (y, s) = min_entropy(|y| pair_scaled_entropy(&pc, &pc, y), (0.05, 50.0)).map_err(err)?;
    ensure(s < 0.0, || format!("PC/PC minimum {s:e}"))?;
    Ok(format!("PC/PC minimum S*Z^6 = {s:.4} at y = {y:.3}"))
}

fn curve_min(d: &FigureData, label: &str) -> Result<f64, String> {
    Ok(d.curve(label).ok_or(format!("{}: no curve {label}", d.id))?.min())
}

/// Values of the listed curves at the abscissa where `reference` is lowest.
fn at_min_of(d: &FigureData, reference: &str, labels: &[&str]) -> Result<Vec<f64>, String> {
    let r = d.curve(reference).ok_or(format!("no curve {reference}"))?;
    let i = (0..r.s.len()).min_by(|&a, &b| r.s[a].total_cmp(&r.s[b])).unwrap();
    labels
        .iter()
        .map(|l| Ok(d.curve(l).ok_or(format!("no curve {l}"))?.s[i]))
        .collect()
}

fn at(d: &FigureData, row: usize, labels: &[&str]) -> Result<Vec<f64>, String> {
    labels
        .iter()
        .map(|l| Ok(d.curve(l).ok_or(format!("no curve {l}"))?.s[row]))
        .collect()
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

// 12. Caption-level features of every preset.
fn figures() -> Check {
    let mut data = Vec::new();
    for id in PRESET_IDS {
        let p = preset(id).map_err(err)?;
        let d = p.compute().map_err(err)?;
        ensure(d.x.len() >= MIN_ROWS, || format!("{id}: {} rows", d.x.len()))?;
        ensure(d.curves.iter().all(|c| c.s.iter().all(|v| v.is_finite())), || {
            format!("{id}: non-finite values")
        })?;
        ensure(d.to_csv() == p.compute().map_err(err)?.to_csv(), || format!("{id}: CSV differs"))?;
        data.push(d);
    }
    let fig = |id: &str| data.iter().find(|d| d.id == id).unwrap();
    let last = |d: &FigureData| d.x.len() - 1;
    let check = |ok: bool, what: &str| ensure(ok, || what.to_string());

    let f1 = fig("fig1");
    check(curve_min(f1, "gamma=2")? < 0.0 && curve_min(f1, "gamma=0")? >= 0.0, "fig1 signs")?;
    check(curve_min(f1, "gamma=0.5")? >= 0.0 && curve_min(f1, "gamma=1")? < 0.0, "fig1 onset")?;
    check(increasing(&at(f1, last(f1), &["gamma=0", "gamma=0.5", "gamma=1", "gamma=2"])?), "fig1 order")?;

    let f1a = fig("fig1a").curve("gamma=1").unwrap();
    check(f1a.s[0] < 0.0 && (f1a.s[0] * 540.0 + 1.0).abs() < 0.01, "fig1a small-Z limit")?;
    check(f1a.max() > 0.0 && f1a.last() > 0.0 && f1a.last() < 0.1 * f1a.max(), "fig1a large-Z decay")?;

    let f2 = fig("fig2");
    let totals = ["s_gamma=0", "s_gamma=0.5", "s_gamma=1", "s_gamma=2"];
    check(increasing(&at(f2, last(f2), &totals)?), "fig2 order")?;
    check(curve_min(f2, "s_gamma=0.5")? >= 0.0 && curve_min(f2, "s_gamma=1")? < 0.0, "fig2 onset")?;
    for g in ["0", "0.5", "1", "2"] {
        check(fig("fig2").curve(&format!("s_TE_gamma={g}")).unwrap().max() <= 0.0, "fig2 TE sign")?;
    }

    let f3 = fig("fig3");
    check(curve_min(f3, "s_TM_gamma=10")? < 0.0 && curve_min(f3, "s_TM_gamma=1")? >= 0.0, "fig3 TM")?;

    let f4 = fig("fig4");
    check(curve_min(f4, "gamma=2")? < 0.0 && curve_min(f4, "gamma=1")? >= 0.0, "fig4 signs")?;
    check(increasing(&at(f4, last(f4), &["gamma=0", "gamma=1", "gamma=2"])?), "fig4 order")?;

    let f5 = fig("fig5");
    check(decreasing(&at(f5, 0, &["r=1", "r=0", "r=-0.125", "r=-0.5"])?), "fig5 order on the left")?;
    check(curve_min(f5, "r=0")? >= 0.0 && curve_min(f5, "r=-0.125")? >= 0.0, "fig5 positive curves")?;
    check(curve_min(f5, "r=-0.5")? < 0.0 && curve_min(f5, "r=-2")? < 0.0, "fig5 negative curves")?;

    for id in ["fig6", "fig7"] {
        let d = fig(id);
        let labels: Vec<String> = d.curves.iter().map(|c| c.label.clone()).collect();
        let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
        check(increasing(&at(d, last(d), &labels)?), &format!("{id} order on the right"))?;
        check(curve_min(d, labels[1])? >= 0.0 && curve_min(d, labels[2])? < 0.0, &format!("{id} onset"))?;
    }

    let f8 = fig("fig8");
    check(decreasing(&at_min_of(f8, "gamma_beta=1", &["gamma_beta=0", "gamma_beta=1", "gamma_beta=2"])?), "fig8 order")?;
    let f9 = fig("fig9");
    check(decreasing(&at_min_of(f9, "gamma_alpha=1", &["gamma_alpha=0", "gamma_alpha=1", "gamma_alpha=2"])?), "fig9 order")?;

    let f10 = fig("fig10");
    let labels = ["gamma_alpha=0.6", "gamma_alpha=0.743", "gamma_alpha=0.8", "gamma_alpha=1"];
    check(decreasing(&at_min_of(f10, "gamma_alpha=0.8", &labels)?), "fig10 order")?;
    let graze = f10.curve("gamma_alpha=0.743").unwrap();
    check(graze.min() < 0.0 && -graze.min() <= 1e-3 * graze.max(), "fig10 0.743 grazes zero")?;
    check(curve_min(f10, "gamma_alpha=0.6")? > 0.0, "fig10 0.6 stays positive")?;

    let f11 = fig("fig11");
    let labels = ["gamma_alpha=0.8", "gamma_alpha=0.91", "gamma_alpha=0.95", "gamma_alpha=1", "gamma_alpha=1.1"];
    check(decreasing(&at_min_of(f11, "gamma_alpha=0.95", &labels)?), "fig11 order")?;
    check(curve_min(f11, "gamma_alpha=0.91")? >= 0.0 && curve_min(f11, "gamma_alpha=0.95")? < 0.0, "fig11 onset")?;

    let f12 = fig("fig12");
    let labels = ["gamma_beta1=0.5", "gamma_beta1=0.66", "gamma_beta1=0.8", "gamma_beta1=1", "gamma_beta1=1.1"];
    check(decreasing(&at_min_of(f12, "gamma_beta1=0.8", &labels)?), "fig12 order")?;
    let graze = f12.curve("gamma_beta1=0.66").unwrap();
    check(graze.min() < 0.0 && -graze.min() <= 1e-3 * graze.max(), "fig12 0.66 grazes zero")?;

    Ok(format!("{} presets", data.len()))
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "zero-crossing threshold", budget: s(1), run: zero_crossing },
        Criterion { id: 2, name: "PC/PC critical anisotropies", budget: s(10), run: pc_pc },
        Criterion { id: 3, name: "PC/Drude thresholds", budget: s(10), run: pc_drude },
        Criterion { id: 4, name: "analytic threshold family", budget: s(1), run: analytic_thresholds },
        Criterion { id: 5, name: "asymptotes", budget: s(1), run: asymptotes },
        Criterion { id: 6, name: "oracle equivalence", budget: s(10), run: oracle_equivalence },
        Criterion { id: 7, name: "thermodynamic consistency", budget: s(10), run: thermodynamic_consistency },
        Criterion { id: 8, name: "small-y expansion consistency", budget: s(1), run: small_y_scaling },
        Criterion { id: 9, name: "table regeneration", budget: s(20), run: table },
        Criterion { id: 10, name: "duality and symmetry properties", budget: s(30), run: symmetries },
        Criterion { id: 11, name: "sign properties", budget: s(5), run: signs },
        Criterion { id: 12, name: "figure reproduction", budget: s(10), run: figures },
    ];
    let start = Instant::now();
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let result = (c.run)();
        let elapsed = t.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, budget {:?}", c.budget))
            }
        });
        match result {
            Ok(detail) => println!("PASS {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2?}",
        criteria.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
