//! Fuzzing entry points, shared by the cargo-fuzz targets and the corpus
//! replay test. Each must accept any input without panicking; the asserts
//! are properties every successful parse has to satisfy.

use casimir_entropy::analysis::TableRow;
use casimir_entropy::figures::PRESET_IDS;

use crate::parse;

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn config(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(cfg) = parse::parse_config(s) {
        for (k, v) in cfg.iter() {
            assert!(parse::CONFIG_KEYS.contains(&k));
            assert!(!v.is_empty());
        }
    }
}

pub fn range(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok((lo, hi)) = parse::parse_range(s) {
        assert!(lo.is_finite() && hi.is_finite() && lo < hi);
    }
}

pub fn list(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(values) = parse::parse_list(s) {
        assert!(!values.is_empty());
        assert!(values.iter().all(|v| v.is_finite()));
    }
}

pub fn preset_id(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(p) = parse::parse_preset(s) {
        assert!(PRESET_IDS.contains(&p.id));
        assert_eq!(parse::parse_preset(p.id).unwrap().id, p.id);
    }
}

pub fn table_row(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(row) = parse::parse_row(s) {
        assert_eq!(row.label().parse::<TableRow>().unwrap(), row);
    }
}

pub fn selectors(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let _ = parse::parse_system_kind(s);
    let _ = parse::parse_channel(s);
    let _ = parse::parse_sweep_sector(s);
    let _ = parse::parse_target(s);
    let _ = parse::parse_real(s);
}

/// Target name and entry point, in a fixed order.
pub const TARGETS: &[(&str, fn(&[u8]))] = &[
    ("parse_config", config),
    ("parse_range", range),
    ("parse_list", list),
    ("preset_id", preset_id),
    ("table_row", table_row),
    ("selectors", selectors),
];
