//! Command-line front end for `casimir-entropy`.
//!
//! Every subcommand writes a single-line JSON [`RunReport`] on standard
//! output (or CSV / a text table where requested). Exit codes: 0 success,
//! 1 usage error, 2 numerical failure.

pub mod commands;
pub mod error;
pub mod fuzzing;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;
pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "casimir-entropy", version, about = "Casimir-Polder free energies and entropies of anisotropic nanoparticles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free energy and entropy at one separation and temperature.
    Eval(EvalArgs),
    /// Sample a figure preset to CSV.
    Figure(FigureArgs),
    /// Locate the anisotropy where a negative-entropy region appears.
    Critical(CriticalArgs),
    /// Recompute the table of negative-entropy conditions.
    Table(TableArgs),
    /// Compare closed forms with Matsubara sums.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Default, Args)]
pub struct ConfigArg {
    /// key = value file mirroring the long flags; flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Polarizability components. Plate systems take the plain flags, pairs
/// the `-1`/`-2` suffixed ones. Unset components are zero.
#[derive(Debug, Default, Args)]
pub struct SystemArgs {
    /// plate or pair.
    #[arg(long)]
    pub system: Option<String>,
    /// Plate polarization channel: total, te or tm.
    #[arg(long)]
    pub channel: Option<String>,
    #[arg(long = "alpha-perp", allow_negative_numbers = true)]
    pub alpha_perp: Option<f64>,
    #[arg(long = "alpha-z", allow_negative_numbers = true)]
    pub alpha_z: Option<f64>,
    #[arg(long = "beta-perp", allow_negative_numbers = true)]
    pub beta_perp: Option<f64>,
    #[arg(long = "beta-z", allow_negative_numbers = true)]
    pub beta_z: Option<f64>,
    #[arg(long = "alpha-perp-1", allow_negative_numbers = true)]
    pub alpha_perp_1: Option<f64>,
    #[arg(long = "alpha-z-1", allow_negative_numbers = true)]
    pub alpha_z_1: Option<f64>,
    #[arg(long = "beta-perp-1", allow_negative_numbers = true)]
    pub beta_perp_1: Option<f64>,
    #[arg(long = "beta-z-1", allow_negative_numbers = true)]
    pub beta_z_1: Option<f64>,
    #[arg(long = "alpha-perp-2", allow_negative_numbers = true)]
    pub alpha_perp_2: Option<f64>,
    #[arg(long = "alpha-z-2", allow_negative_numbers = true)]
    pub alpha_z_2: Option<f64>,
    #[arg(long = "beta-perp-2", allow_negative_numbers = true)]
    pub beta_perp_2: Option<f64>,
    #[arg(long = "beta-z-2", allow_negative_numbers = true)]
    pub beta_z_2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Separation.
    #[arg(long = "Z", allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Temperature.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Reduced variable 4πZT, instead of --T.
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    #[command(flatten)]
    pub config: ConfigArg,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Preset id: fig1 … fig12 or fig1a.
    pub id: Option<String>,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub config: ConfigArg,
}

#[derive(Debug, Args)]
pub struct CriticalArgs {
    /// Table row whose sweep to run, e.g. PC/PC.
    #[arg(long)]
    pub row: Option<String>,
    /// gamma_alpha or gamma_beta.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Particle whose anisotropy is swept: first, second or both.
    #[arg(long)]
    pub target: Option<String>,
    #[command(flatten)]
    pub system: SystemArgs,
    /// Anisotropy interval, lo,hi.
    #[arg(long = "gamma-range")]
    pub gamma_range: Option<String>,
    /// Window in y searched for negative entropy, lo,hi.
    #[arg(long = "y-range")]
    pub y_range: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub config: ConfigArg,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// text (default) or json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    pub config: ConfigArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest accepted relative deviation.
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Anisotropies used for both γ_α and γ_β, comma separated.
    #[arg(long)]
    pub gammas: Option<String>,
    /// Reduced temperatures, comma separated.
    #[arg(long)]
    pub ys: Option<String>,
    #[command(flatten)]
    pub config: ConfigArg,
}

/// Runs the CLI on `argv` and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match commands::dispatch(cli.command, echo, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
