use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use casimir_entropy::analysis::{
    classify_table, critical_anisotropy_with, CriticalResult, CriticalSearch, Expected,
    SearchOptions, Sweep, SweepTarget, System, SystemConfig, TableEntry, TableRow, Verdict,
    DEFAULT_GRID_POINTS, DEFAULT_Y_WINDOW,
};
use casimir_entropy::oracle::{verify, VerifyGrid};
use casimir_entropy::pair::{
    pair_entropy, pair_free_energy_sectors, pair_scaled_entropy, ParticlePair,
};
use casimir_entropy::plate::{
    plate_entropy, plate_entropy_channel, plate_free_energy, plate_scaled_entropy, PlateChannel,
};
use casimir_entropy::{Polarizability, Sector, ThermalGeometry};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::parse::{
    parse_channel, parse_config, parse_list, parse_range, parse_real, parse_row,
    parse_preset, parse_sweep_sector, parse_system_kind, parse_target, ConfigMap, SystemKind,
};
use crate::report::RunReport;
use crate::{
    Command, ConfigArg, CriticalArgs, EvalArgs, FigureArgs, Format, SystemArgs, TableArgs,
    VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

pub const DEFAULT_GAMMA_RANGE: (f64, f64) = (0.05, 20.0);
pub const DEFAULT_CRITICAL_TOL: f64 = 1e-6;
pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Flag values with config-file fallback.
struct Settings {
    config: ConfigMap,
}

impl Settings {
    fn load(arg: &ConfigArg) -> Result<Self> {
        let config = match &arg.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                parse_config(&text)?
            }
            None => ConfigMap::default(),
        };
        Ok(Self { config })
    }

    fn real(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>> {
        match flag {
            Some(v) if v.is_finite() => Ok(Some(v)),
            Some(v) => Err(usage(format!("--{key} must be finite, got {v}"))),
            None => self.config.get(key).map(parse_real).transpose(),
        }
    }

    fn text(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone()
            .or_else(|| self.config.get(key).map(str::to_string))
    }

    fn path(&self, flag: &Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.clone().or_else(|| self.config.get(key).map(PathBuf::from))
    }

    fn system_kind(&self, args: &SystemArgs) -> Result<Option<SystemKind>> {
        self.text(&args.system, "system")
            .map(|s| parse_system_kind(&s))
            .transpose()
    }

    fn channel(&self, args: &SystemArgs) -> Result<PlateChannel> {
        self.text(&args.channel, "channel")
            .map(|s| parse_channel(&s))
            .transpose()
            .map(Option::unwrap_or_default)
    }

    fn components(&self, args: &SystemArgs, suffix: &str) -> Result<[Option<f64>; 4]> {
        let flags = match suffix {
            "" => [args.alpha_perp, args.alpha_z, args.beta_perp, args.beta_z],
            "-1" => [args.alpha_perp_1, args.alpha_z_1, args.beta_perp_1, args.beta_z_1],
            _ => [args.alpha_perp_2, args.alpha_z_2, args.beta_perp_2, args.beta_z_2],
        };
        let names = ["alpha-perp", "alpha-z", "beta-perp", "beta-z"];
        let mut out = [None; 4];
        for i in 0..4 {
            out[i] = self.real(flags[i], &format!("{}{suffix}", names[i]))?;
        }
        Ok(out)
    }

    fn particle(&self, args: &SystemArgs, suffix: &str) -> Result<Polarizability> {
        let [ap, az, bp, bz] = self.components(args, suffix)?.map(|c| c.unwrap_or(0.0));
        Ok(Polarizability::new(ap, az, bp, bz)?)
    }

    fn system(&self, args: &SystemArgs, kind: SystemKind) -> Result<System> {
        let given = |suffix| -> Result<bool> {
            Ok(self.components(args, suffix)?.iter().any(Option::is_some))
        };
        match kind {
            SystemKind::Plate => {
                if given("-1")? || given("-2")? {
                    return Err(usage("plate systems take unsuffixed --alpha-*/--beta-* flags"));
                }
                Ok(System::Plate {
                    particle: self.particle(args, "")?,
                    channel: self.channel(args)?,
                })
            }
            SystemKind::Pair => {
                if given("")? {
                    return Err(usage("pair systems take --alpha-*-1/-2 and --beta-*-1/-2 flags"));
                }
                Ok(System::Pair {
                    first: self.particle(args, "-1")?,
                    second: self.particle(args, "-2")?,
                })
            }
        }
    }
}

fn particle_json(p: &Polarizability) -> Value {
    json!({
        "alpha_perp": p.alpha_perp,
        "alpha_z": p.alpha_z,
        "beta_perp": p.beta_perp,
        "beta_z": p.beta_z,
    })
}

fn channel_name(c: PlateChannel) -> &'static str {
    match c {
        PlateChannel::Total => "total",
        PlateChannel::Te => "te",
        PlateChannel::Tm => "tm",
    }
}

fn system_json(system: &System) -> Value {
    match system {
        System::Plate { particle, channel } => json!({
            "system": "plate",
            "particle": particle_json(particle),
            "channel": channel_name(*channel),
        }),
        System::Pair { first, second } => json!({
            "system": "pair",
            "first": particle_json(first),
            "second": particle_json(second),
        }),
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Numerical(format!("{name} is not finite ({v})")))
    }
}

struct Run {
    command: &'static str,
    argv: Vec<String>,
    start: Instant,
}

impl Run {
    fn report(&self, status: &str, inputs: Value, outputs: Value, tolerances: Value) -> RunReport {
        RunReport {
            command: self.command.to_string(),
            argv: self.argv.clone(),
            status: status.to_string(),
            inputs,
            outputs,
            tolerances,
            wall_time_s: self.start.elapsed().as_secs_f64(),
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn dispatch(command: Command, argv: Vec<String>, out: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let run = |name| Run {
        command: name,
        argv: argv.clone(),
        start,
    };
    match command {
        Command::Eval(a) => eval(a, run("eval"), out),
        Command::Figure(a) => figure(a, run("figure"), out),
        Command::Critical(a) => critical(a, run("critical"), out),
        Command::Table(a) => table(a, run("table"), out),
        Command::Verify(a) => verify_cmd(a, run("verify"), out),
    }
}

fn eval(args: EvalArgs, run: Run, out: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(&args.config)?;
    let kind = settings
        .system_kind(&args.system)?
        .ok_or_else(|| usage("--system is required"))?;
    let system = settings.system(&args.system, kind)?;
    let z = settings
        .real(args.z, "Z")?
        .ok_or_else(|| usage("--Z is required"))?;
    let geom = match (settings.real(args.t, "T")?, settings.real(args.y, "y")?) {
        (Some(t), None) => ThermalGeometry::new(z, t)?,
        (None, Some(y)) => ThermalGeometry::from_reduced(z, y)?,
        (Some(_), Some(_)) => return Err(usage("give either --T or --y, not both")),
        (None, None) => return Err(usage("--T or --y is required")),
    };
    let y = geom.y();
    let outputs = match system {
        System::Plate { particle: p, .. } => {
            let scaled = |channel| plate_scaled_entropy(&p, y, channel);
            // s is normalized so that S = (3 a_z / 2Z³) s with a_z = α_z - β_z.
            let norm = 1.5 * (p.alpha_z - p.beta_z);
            let s = |v: f64| if norm != 0.0 { json!(v / norm) } else { Value::Null };
            json!({
                "y": y,
                "F": finite("F", plate_free_energy(&p, &geom)?)?,
                "S": finite("S", plate_entropy(&p, &geom)?)?,
                "S_TE": finite("S_TE", plate_entropy_channel(&p, &geom, PlateChannel::Te)?)?,
                "S_TM": finite("S_TM", plate_entropy_channel(&p, &geom, PlateChannel::Tm)?)?,
                "S_Z3": finite("S_Z3", scaled(PlateChannel::Total)?)?,
                "s": s(scaled(PlateChannel::Total)?),
                "s_E": s(scaled(PlateChannel::Te)?),
                "s_H": s(scaled(PlateChannel::Tm)?),
            })
        }
        System::Pair { first, second } => {
            let pair = ParticlePair::new(first, second, geom);
            let sectors = pair_free_energy_sectors(&pair)?;
            json!({
                "y": y,
                "F": finite("F", sectors.total())?,
                "F_EE": finite("F_EE", sectors.electric)?,
                "F_MM": finite("F_MM", sectors.magnetic)?,
                "F_EM": finite("F_EM", sectors.cross)?,
                "S": finite("S", pair_entropy(&pair)?)?,
                "S_Z6": finite("S_Z6", pair_scaled_entropy(&first, &second, y)?)?,
            })
        }
    };
    let mut inputs = system_json(&system);
    inputs["Z"] = json!(geom.separation());
    inputs["T"] = json!(geom.temperature());
    let report = run.report("ok", inputs, outputs, json!({}));
    emit(out, &(report.to_line() + "\n"))?;
    Ok(0)
}

fn figure(args: FigureArgs, run: Run, out: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(&args.config)?;
    let id = settings
        .text(&args.id, "id")
        .ok_or_else(|| usage("a preset id is required, e.g. fig1"))?;
    let preset = parse_preset(&id)?;
    let format = match args.format {
        Some(f) => f,
        None => match settings.config.get("format") {
            Some("json") => Format::Json,
            Some("csv") | None => Format::Csv,
            Some(other) => return Err(usage(format!("unknown format '{other}'"))),
        },
    };
    let data = preset.compute()?;
    for c in &data.curves {
        for (y, s) in c.points() {
            if !s.is_finite() {
                return Err(CliError::Numerical(format!(
                    "{} curve '{}' is not finite at y = {y}",
                    preset.id, c.label
                )));
            }
        }
    }
    let labels: Vec<&str> = data.curves.iter().map(|c| c.label.as_str()).collect();
    let body = match format {
        Format::Csv => data.to_csv(),
        Format::Json => {
            let curves: Vec<Value> = data
                .curves
                .iter()
                .map(|c| json!({ "label": c.label, "s": c.s }))
                .collect();
            let payload = json!({
                "id": data.id,
                "abscissa": data.abscissa.name(),
                "x": data.x,
                "curves": curves,
            });
            payload.to_string() + "\n"
        }
        Format::Text => return Err(usage("figure output is csv or json")),
    };
    match settings.path(&args.out, "out") {
        Some(path) => {
            write_file(&path, &body)?;
            let report = run.report(
                "ok",
                json!({ "id": preset.id, "title": preset.title }),
                json!({
                    "path": path.display().to_string(),
                    "abscissa": data.abscissa.name(),
                    "rows": data.x.len(),
                    "columns": labels,
                }),
                json!({}),
            );
            emit(out, &(report.to_line() + "\n"))?;
        }
        None => emit(out, &body)?,
    }
    Ok(0)
}

fn sector_name(sector: Sector) -> &'static str {
    match sector {
        Sector::Electric => "gamma_alpha",
        Sector::Magnetic => "gamma_beta",
    }
}

fn target_name(target: SweepTarget) -> &'static str {
    match target {
        SweepTarget::First => "first",
        SweepTarget::Second => "second",
        SweepTarget::Both => "both",
    }
}

fn critical_json(r: &CriticalResult) -> Value {
    json!({
        "kind": r.kind.to_string(),
        "value": r.value,
        "bracket": [r.bracket.0, r.bracket.1],
        "objective_at_value": r.objective_at_value,
        "objective_at_bracket": [r.objective_at_bracket.0, r.objective_at_bracket.1],
        "iterations": r.iterations,
    })
}

fn critical_config(args: &CriticalArgs, settings: &Settings) -> Result<SystemConfig> {
    let sector = settings
        .text(&args.sweep, "sweep")
        .map(|s| parse_sweep_sector(&s))
        .transpose()?;
    if let Some(row) = settings.text(&args.row, "row") {
        let row = parse_row(&row)?;
        if settings.system_kind(&args.system)?.is_some() {
            return Err(usage("give either --row or --system, not both"));
        }
        let sweeps = row.sweeps();
        let chosen = match sector {
            None => sweeps.into_iter().next(),
            Some(sector) => sweeps.into_iter().find(|(c, _)| c.sweep.sector == sector),
        };
        return chosen.map(|(c, _)| c).ok_or_else(|| {
            usage(format!("row {row} has no {} sweep", sector.map_or("", sector_name)))
        });
    }
    let kind = settings
        .system_kind(&args.system)?
        .ok_or_else(|| usage("--row or --system is required"))?;
    let system = settings.system(&args.system, kind)?;
    let target = match settings.text(&args.target, "target") {
        Some(t) => parse_target(&t)?,
        None if kind == SystemKind::Plate => SweepTarget::First,
        None => SweepTarget::Both,
    };
    let sweep = Sweep::new(sector.unwrap_or(Sector::Electric), target);
    Ok(SystemConfig::new("custom", system, sweep))
}

fn critical(args: CriticalArgs, run: Run, out: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(&args.config)?;
    let config = critical_config(&args, &settings)?;
    let gamma_range = settings
        .text(&args.gamma_range, "gamma-range")
        .map(|s| parse_range(&s))
        .transpose()?
        .unwrap_or(DEFAULT_GAMMA_RANGE);
    let y_window = settings
        .text(&args.y_range, "y-range")
        .map(|s| parse_range(&s))
        .transpose()?
        .unwrap_or(DEFAULT_Y_WINDOW);
    let tol = settings.real(args.tol, "tol")?.unwrap_or(DEFAULT_CRITICAL_TOL);
    if tol <= 0.0 {
        return Err(usage(format!("--tol must be > 0, got {tol}")));
    }
    let options = SearchOptions {
        y_window,
        grid_points: DEFAULT_GRID_POINTS,
    };
    let search = critical_anisotropy_with(&config, gamma_range, tol, &options)?;
    let mut inputs = system_json(&config.system);
    inputs["label"] = json!(config.label);
    inputs["sweep"] = json!(sector_name(config.sweep.sector));
    inputs["target"] = json!(target_name(config.sweep.target));
    inputs["gamma_range"] = json!([gamma_range.0, gamma_range.1]);
    inputs["y_range"] = json!([y_window.0, y_window.1]);
    let tolerances = json!({ "tol": tol, "grid_points": DEFAULT_GRID_POINTS });
    let report = match search {
        CriticalSearch::Found(r) => run.report("found", inputs, critical_json(&r), tolerances),
        CriticalSearch::NoneInRange {
            negative_at_ends, ..
        } => run.report(
            "none-in-range",
            inputs,
            json!({ "negative_at_ends": [negative_at_ends.0, negative_at_ends.1] }),
            tolerances,
        ),
    };
    emit(out, &(report.to_line() + "\n"))?;
    Ok(0)
}

fn expected_json(e: &Expected) -> Value {
    match e {
        Expected::Always => json!("always"),
        Expected::Above {
            threshold,
            tolerance,
        } => json!({ "above": threshold, "tolerance": tolerance }),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Always => json!("always"),
        Verdict::Never => json!("never"),
        Verdict::Above(r) => json!({ "above": r.value, "result": critical_json(r) }),
        Verdict::Below(r) => json!({ "below": r.value, "result": critical_json(r) }),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Always => "S<0 always".into(),
        Verdict::Never => "S>=0 always".into(),
        Verdict::Above(r) => format!("S<0 above {:.6}", r.value),
        Verdict::Below(r) => format!("S<0 below {:.6}", r.value),
    }
}

fn table_text(entries: &[TableEntry]) -> String {
    let mut s = format!(
        "{:<16} {:<44} {:<12} {:<22} {}\n",
        "row", "printed", "sweep", "computed", "match"
    );
    for e in entries {
        for (i, sw) in e.sweeps.iter().enumerate() {
            let (row, printed) = if i == 0 {
                (e.row.label(), e.row.printed())
            } else {
                ("", "")
            };
            s.push_str(&format!(
                "{:<16} {:<44} {:<12} {:<22} {}\n",
                row,
                printed,
                sector_name(sw.config.sweep.sector),
                verdict_text(&sw.verdict),
                sw.matches
            ));
        }
    }
    s
}

fn table(args: TableArgs, run: Run, out: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(&args.config)?;
    let format = match args.format {
        Some(f) => f,
        None => match settings.config.get("format") {
            Some("json") => Format::Json,
            Some("text") | None => Format::Text,
            Some(other) => return Err(usage(format!("unknown format '{other}'"))),
        },
    };
    let entries = classify_table(&TableRow::ALL)?;
    let all_match = entries.iter().all(TableEntry::matches);
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let sweeps: Vec<Value> = e
                .sweeps
                .iter()
                .map(|sw| {
                    json!({
                        "parameter": sector_name(sw.config.sweep.sector),
                        "target": target_name(sw.config.sweep.target),
                        "expected": expected_json(&sw.expected),
                        "computed": verdict_json(&sw.verdict),
                        "match": sw.matches,
                    })
                })
                .collect();
            json!({
                "row": e.row.label(),
                "printed": e.row.printed(),
                "sweeps": sweeps,
                "match": e.matches(),
            })
        })
        .collect();
    let status = if all_match { "ok" } else { "mismatch" };
    let report = run.report(
        status,
        json!({ "rows": TableRow::ALL.iter().map(TableRow::label).collect::<Vec<_>>() }),
        json!({ "rows": rows, "all_match": all_match }),
        json!({ "threshold_tol": casimir_entropy::analysis::TABLE_TOLERANCE }),
    );
    let line = report.to_line() + "\n";
    if let Some(path) = settings.path(&args.out, "out") {
        write_file(&path, &line)?;
    }
    match format {
        Format::Json => emit(out, &line)?,
        Format::Text => emit(out, &table_text(&entries))?,
        Format::Csv => return Err(usage("table output is text or json")),
    }
    Ok(if all_match { 0 } else { 2 })
}

fn verify_cmd(args: VerifyArgs, run: Run, out: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(&args.config)?;
    let tol = settings.real(args.tol, "tol")?.unwrap_or(DEFAULT_VERIFY_TOL);
    if tol <= 0.0 {
        return Err(usage(format!("--tol must be > 0, got {tol}")));
    }
    let mut grid = VerifyGrid::default();
    if let Some(g) = settings.text(&args.gammas, "gammas") {
        grid.gammas = parse_list(&g)?;
    }
    if let Some(ys) = settings.text(&args.ys, "ys") {
        grid.ys = parse_list(&ys)?;
        if let Some(bad) = grid.ys.iter().find(|&&y| y <= 0.0) {
            return Err(usage(format!("verification needs y > 0, got {bad}")));
        }
    }
    let report = verify(&grid, tol)?;
    let worst = report
        .points
        .iter()
        .max_by(|a, b| a.relative_deviation.total_cmp(&b.relative_deviation))
        .map(|p| {
            json!({
                "system": p.system,
                "gamma_alpha": p.gamma_alpha,
                "gamma_beta": p.gamma_beta,
                "y": p.y,
                "closed_form": p.closed_form,
                "oracle": p.oracle,
                "relative_deviation": p.relative_deviation,
            })
        });
    let passed = report.passed();
    let line = run
        .report(
            if passed { "pass" } else { "fail" },
            json!({ "gammas": grid.gammas, "ys": grid.ys }),
            json!({
                "points": report.points.len(),
                "max_relative_deviation": report.max_relative_deviation,
                "worst": worst,
            }),
            json!({
                "tol": tol,
                "sum_tol": casimir_entropy::oracle::VERIFY_SUM_TOL,
            }),
        )
        .to_line();
    emit(out, &(line + "\n"))?;
    Ok(if passed { 0 } else { 2 })
}
