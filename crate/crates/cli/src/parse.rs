//! Parsers for the textual values accepted on the command line and in
//! config files.

use std::collections::BTreeMap;

use casimir_entropy::analysis::{SweepTarget, TableRow};
use casimir_entropy::figures::{self, FigurePreset};
use casimir_entropy::plate::PlateChannel;
use casimir_entropy::Sector;

use crate::error::CliError;

/// Keys a config file may set. They mirror the long flag names.
pub const CONFIG_KEYS: &[&str] = &[
    "system",
    "channel",
    "alpha-perp",
    "alpha-z",
    "beta-perp",
    "beta-z",
    "alpha-perp-1",
    "alpha-z-1",
    "beta-perp-1",
    "beta-z-1",
    "alpha-perp-2",
    "alpha-z-2",
    "beta-perp-2",
    "beta-z-2",
    "Z",
    "T",
    "y",
    "gamma-range",
    "y-range",
    "tol",
    "out",
    "format",
    "row",
    "sweep",
    "target",
    "gammas",
    "ys",
    "id",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parsed `key = value` config file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Parses a config file: one `key = value` per line, `#` starts a comment,
/// keys may carry a leading `--`, values may be double-quoted.
pub fn parse_config(text: &str) -> Result<ConfigMap, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {line_no}: expected 'key = value'")))?;
        let key = key.trim();
        let key = key.strip_prefix("--").unwrap_or(key);
        if !CONFIG_KEYS.contains(&key) {
            return Err(usage(format!("config line {line_no}: unknown key '{key}'")));
        }
        let mut value = value.trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        if value.is_empty() {
            return Err(usage(format!("config line {line_no}: empty value for '{key}'")));
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(usage(format!("config line {line_no}: duplicate key '{key}'")));
        }
    }
    Ok(ConfigMap(map))
}

/// A finite real number.
pub fn parse_real(s: &str) -> Result<f64, CliError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| usage(format!("'{s}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("'{s}' is not finite")))
    }
}

/// An interval `lo,hi`; also accepts `lo:hi` and surrounding brackets.
pub fn parse_range(s: &str) -> Result<(f64, f64), CliError> {
    let t = s.trim();
    let t = t
        .strip_prefix(['(', '['])
        .map(|r| r.strip_suffix([')', ']']).unwrap_or(r))
        .unwrap_or(t);
    let (lo, hi) = t
        .split_once(',')
        .or_else(|| t.split_once(':'))
        .ok_or_else(|| usage(format!("range '{s}' must look like lo,hi")))?;
    let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(usage(format!("range '{s}' needs lo < hi")))
    }
}

/// A non-empty comma-separated list of finite reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    let values = s
        .split(',')
        .map(parse_real)
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        Err(usage("empty list"))
    } else {
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Plate,
    Pair,
}

pub fn parse_system_kind(s: &str) -> Result<SystemKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "plate" => Ok(SystemKind::Plate),
        "pair" => Ok(SystemKind::Pair),
        _ => Err(usage(format!("unknown system '{s}', expected plate or pair"))),
    }
}

pub fn parse_channel(s: &str) -> Result<PlateChannel, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "total" => Ok(PlateChannel::Total),
        "te" | "e" => Ok(PlateChannel::Te),
        "tm" | "h" => Ok(PlateChannel::Tm),
        _ => Err(usage(format!("unknown channel '{s}', expected total, te or tm"))),
    }
}

/// `gamma_alpha` / `gamma_beta` (dash or underscore).
pub fn parse_sweep_sector(s: &str) -> Result<Sector, CliError> {
    match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "gamma_alpha" | "alpha" | "electric" => Ok(Sector::Electric),
        "gamma_beta" | "beta" | "magnetic" => Ok(Sector::Magnetic),
        _ => Err(usage(format!(
            "unknown sweep '{s}', expected gamma_alpha or gamma_beta"
        ))),
    }
}

pub fn parse_target(s: &str) -> Result<SweepTarget, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "first" | "1" => Ok(SweepTarget::First),
        "second" | "2" => Ok(SweepTarget::Second),
        "both" => Ok(SweepTarget::Both),
        _ => Err(usage(format!("unknown target '{s}', expected first, second or both"))),
    }
}

pub fn parse_preset(s: &str) -> Result<FigurePreset, CliError> {
    figures::preset(s).map_err(|e| usage(e.to_string()))
}

pub fn parse_row(s: &str) -> Result<TableRow, CliError> {
    s.parse::<TableRow>().map_err(|e| usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_files() {
        let cfg = parse_config(
            "# pair run\n--system = pair\nalpha-z-1 = 1.5  # comment\n\nout = \"a b.csv\"\n",
        )
        .unwrap();
        assert_eq!(cfg.get("system"), Some("pair"));
        assert_eq!(cfg.get("alpha-z-1"), Some("1.5"));
        assert_eq!(cfg.get("out"), Some("a b.csv"));
        assert_eq!(cfg.len(), 3);
        assert!(parse_config("system pair").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("tol = 1\ntol = 2").is_err());
        assert!(parse_config("tol =").is_err());
        assert!(parse_config("").unwrap().is_empty());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.5,2").unwrap(), (0.5, 2.0));
        assert_eq!(parse_range("[0.5, 2]").unwrap(), (0.5, 2.0));
        assert_eq!(parse_range("(1e-2:3)").unwrap(), (0.01, 3.0));
        assert!(parse_range("2,1").is_err());
        assert!(parse_range("1").is_err());
        assert!(parse_range("nan,1").is_err());
        assert!(parse_range("0,inf").is_err());
    }

    #[test]
    fn lists_and_selectors() {
        assert_eq!(parse_list("0, 0.5,1").unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(parse_list("1,,2").is_err());
        assert_eq!(parse_system_kind("Plate").unwrap(), SystemKind::Plate);
        assert!(parse_system_kind("sphere").is_err());
        assert_eq!(parse_channel("TM").unwrap(), PlateChannel::Tm);
        assert_eq!(parse_sweep_sector("gamma-beta").unwrap(), Sector::Magnetic);
        assert_eq!(parse_target("both").unwrap(), SweepTarget::Both);
        assert_eq!(parse_row("pc/pc").unwrap(), TableRow::ConductingConducting);
        assert_eq!(parse_preset("fig10").unwrap().id, "fig10");
        assert!(parse_preset("fig0").is_err());
    }
}
