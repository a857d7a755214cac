//! Curve presets for the published entropy plots, sampled to CSV.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pair::{pair_scaled_entropy, s_pair_ee};
use crate::particle::Polarizability;
use crate::plate::{s_plate, s_plate_te, s_plate_tm, s_tilde};

pub const MIN_ROWS: usize = 400;

/// Horizontal axis of a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abscissa {
    /// Product of separation and temperature; `y = 4π·ZT`.
    ZT,
    /// Reduced variable `y = 4πZT`.
    Y,
}

impl Abscissa {
    pub fn name(&self) -> &'static str {
        match self {
            Abscissa::ZT => "ZT",
            Abscissa::Y => "y",
        }
    }

    pub fn to_y(&self, x: f64) -> f64 {
        match self {
            Abscissa::ZT => 4.0 * PI * x,
            Abscissa::Y => x,
        }
    }
}

/// What one column of a preset evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// Scaled plate entropy `s(γ, y)`.
    Plate { gamma: f64 },
    PlateTe { gamma: f64 },
    PlateTm { gamma: f64 },
    /// `s(γ, y) / y³`.
    PlateRescaled { gamma: f64 },
    /// Scaled electric–electric pair entropy at `γ = γ₁γ₂`.
    PairElectric { gamma: f64 },
    /// `S·Z⁶` for a general pair.
    Pair {
        first: Polarizability,
        second: Polarizability,
    },
}

impl CurveKind {
    pub fn eval(&self, y: f64) -> Result<f64> {
        match *self {
            CurveKind::Plate { gamma } => s_plate(gamma, y),
            CurveKind::PlateTe { gamma } => s_plate_te(gamma, y),
            CurveKind::PlateTm { gamma } => s_plate_tm(gamma, y),
            CurveKind::PlateRescaled { gamma } => s_tilde(gamma, y),
            CurveKind::PairElectric { gamma } => s_pair_ee(gamma, y),
            CurveKind::Pair { first, second } => pair_scaled_entropy(&first, &second, y),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub label: String,
    pub kind: CurveKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: &'static str,
    pub title: &'static str,
    pub abscissa: Abscissa,
    /// Inclusive sampling range in abscissa units.
    pub range: (f64, f64),
    pub rows: usize,
    pub curves: Vec<CurveSpec>,
}

pub const PRESET_IDS: [&str; 13] = [
    "fig1", "fig1a", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10",
    "fig11", "fig12",
];

/// One sampled curve.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCurve {
    pub label: String,
    pub y: Vec<f64>,
    pub s: Vec<f64>,
}

impl EntropyCurve {
    pub fn sample(label: impl Into<String>, kind: &CurveKind, ys: &[f64]) -> Result<Self> {
        let s = ys.iter().map(|&y| kind.eval(y)).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            label: label.into(),
            y: ys.to_vec(),
            s,
        })
    }

    pub fn min(&self) -> f64 {
        self.s.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.s.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn last(&self) -> f64 {
        *self.s.last().expect("curves are non-empty")
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.y.iter().copied().zip(self.s.iter().copied())
    }
}

/// All curves of a preset on a shared abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureData {
    pub id: &'static str,
    pub abscissa: Abscissa,
    pub x: Vec<f64>,
    pub curves: Vec<EntropyCurve>,
}

impl FigureData {
    pub fn curve(&self, label: &str) -> Option<&EntropyCurve> {
        self.curves.iter().find(|c| c.label == label)
    }

    /// Fixed-format CSV: header, then one row per abscissa value.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(self.abscissa.name());
        for c in &self.curves {
            out.push(',');
            out.push_str(&c.label);
        }
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            let _ = write!(out, "{x:.16e}");
            for c in &self.curves {
                let _ = write!(out, ",{:.16e}", c.s[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, mut w: impl io::Write) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

impl FigurePreset {
    pub fn abscissa_values(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let n = self.rows;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }

    pub fn compute(&self) -> Result<FigureData> {
        let x = self.abscissa_values();
        let ys: Vec<f64> = x.iter().map(|&v| self.abscissa.to_y(v)).collect();
        let curves = self
            .curves
            .iter()
            .map(|c| EntropyCurve::sample(c.label.clone(), &c.kind, &ys))
            .collect::<Result<Vec<_>>>()?;
        Ok(FigureData {
            id: self.id,
            abscissa: self.abscissa,
            x,
            curves,
        })
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        preset(s)
    }
}

const ZT_RANGE: (f64, f64) = (0.0025, 1.5);
const Y_RANGE: (f64, f64) = (0.05, 20.0);
const ROWS: usize = 401;

fn curves(items: impl IntoIterator<Item = (String, CurveKind)>) -> Vec<CurveSpec> {
    items
        .into_iter()
        .map(|(label, kind)| CurveSpec { label, kind })
        .collect()
}

fn plate_channels(gammas: &[f64]) -> Vec<CurveSpec> {
    curves(gammas.iter().flat_map(|&g| {
        [
            (format!("s_gamma={g}"), CurveKind::Plate { gamma: g }),
            (format!("s_TM_gamma={g}"), CurveKind::PlateTm { gamma: g }),
            (format!("s_TE_gamma={g}"), CurveKind::PlateTe { gamma: g }),
        ]
    }))
}

fn identical_pairs(name: &str, values: &[f64], particle: impl Fn(f64) -> Polarizability) -> Vec<CurveSpec> {
    curves(values.iter().map(|&v| {
        let p = particle(v);
        (
            format!("{name}={v}"),
            CurveKind::Pair {
                first: p,
                second: p,
            },
        )
    }))
}

fn particle(alpha_perp: f64, alpha_z: f64, beta_perp: f64, beta_z: f64) -> Polarizability {
    Polarizability {
        alpha_perp,
        alpha_z,
        beta_perp,
        beta_z,
    }
}

/// Looks up a preset by id (`fig1` … `fig12`, `fig1a`).
pub fn preset(id: &str) -> Result<FigurePreset> {
    let key = id.trim().to_ascii_lowercase();
    let zt = |id, title, curves| FigurePreset {
        id,
        title,
        abscissa: Abscissa::ZT,
        range: ZT_RANGE,
        rows: ROWS,
        curves,
    };
    let y = |id, title, curves| FigurePreset {
        id,
        title,
        abscissa: Abscissa::Y,
        range: Y_RANGE,
        rows: ROWS,
        curves,
    };
    Ok(match key.as_str() {
        "fig1" => zt(
            "fig1",
            "electric particle above a conducting plate",
            curves([0.0, 0.5, 1.0, 2.0].map(|g| (format!("gamma={g}"), CurveKind::Plate { gamma: g }))),
        ),
        "fig1a" => zt(
            "fig1a",
            "rescaled entropy s/y^3 of an isotropic particle above a plate",
            curves([(String::from("gamma=1"), CurveKind::PlateRescaled { gamma: 1.0 })]),
        ),
        "fig2" => zt(
            "fig2",
            "total, TM and TE plate entropies",
            plate_channels(&[0.0, 0.5, 1.0, 2.0]),
        ),
        "fig3" => zt("fig3", "TM plate entropy turning negative", plate_channels(&[1.0, 10.0])),
        "fig4" => zt(
            "fig4",
            "two electric particles",
            curves([0.0, 1.0, 2.0].map(|g| (format!("gamma={g}"), CurveKind::PairElectric { gamma: g }))),
        ),
        "fig5" => y(
            "fig5",
            "identical isotropic particles, r = beta/alpha",
            identical_pairs("r", &[1.0, 0.0, -0.125, -0.5, -2.0], |r| Polarizability::isotropic(1.0, r)),
        ),
        "fig6" => y(
            "fig6",
            "alpha_z = beta_z, gamma_beta = 1",
            identical_pairs("gamma_alpha", &[0.0, 1.0, 2.0, 4.0], |g| particle(g, 1.0, 1.0, 1.0)),
        ),
        "fig7" => y(
            "fig7",
            "equal polarizabilities and anisotropies",
            identical_pairs("gamma", &[0.0, 1.0, 2.0, 4.0], |g| particle(g, 1.0, g, 1.0)),
        ),
        "fig8" => y(
            "fig8",
            "conducting spheres, magnetic anisotropy",
            identical_pairs("gamma_beta", &[0.0, 1.0, 2.0], |g| particle(1.0, 1.0, -0.5 * g, -0.5)),
        ),
        "fig9" => y(
            "fig9",
            "conducting spheres, electric anisotropy",
            identical_pairs("gamma_alpha", &[0.0, 1.0, 2.0], |g| particle(g, 1.0, -0.5, -0.5)),
        ),
        "fig10" => y(
            "fig10",
            "conducting spheres near the critical electric anisotropy",
            identical_pairs("gamma_alpha", &[0.6, 0.743, 0.8, 1.0], |g| particle(g, 1.0, -0.5, -0.5)),
        ),
        "fig11" => y(
            "fig11",
            "conducting and Drude particles, equal electric anisotropy",
            curves([0.8, 0.91, 0.95, 1.0, 1.1].map(|g| {
                (
                    format!("gamma_alpha={g}"),
                    CurveKind::Pair {
                        first: particle(g, 1.0, -0.5, -0.5),
                        second: particle(g, 1.0, 0.0, 0.0),
                    },
                )
            })),
        ),
        "fig12" => y(
            "fig12",
            "conducting and Drude particles, magnetic anisotropy of the first",
            curves([0.5, 0.66, 0.8, 1.0, 1.1].map(|g| {
                (
                    format!("gamma_beta1={g}"),
                    CurveKind::Pair {
                        first: particle(1.0, 1.0, -0.5 * g, -0.5),
                        second: particle(1.0, 1.0, 0.0, 0.0),
                    },
                )
            })),
        ),
        _ => return Err(Error::Config(format!("unknown figure preset '{id}'"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_resolve() {
        for id in PRESET_IDS {
            let p = preset(id).unwrap();
            assert_eq!(p.id, id);
            assert!(p.rows >= MIN_ROWS);
            assert!(!p.curves.is_empty());
        }
        assert!(preset("fig13").is_err());
        assert!(preset("").is_err());
        assert_eq!(preset(" FIG5 ").unwrap().id, "fig5");
    }

    #[test]
    fn csv_layout() {
        let data = preset("fig4").unwrap().compute().unwrap();
        let csv = data.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "ZT,gamma=0,gamma=1,gamma=2");
        assert_eq!(lines.count(), ROWS);
        assert_eq!(csv, data.to_csv());
    }

    #[test]
    fn caption_parameters() {
        let fig5 = preset("fig5").unwrap();
        let labels: Vec<&str> = fig5.curves.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["r=1", "r=0", "r=-0.125", "r=-0.5", "r=-2"]);
        assert_eq!(preset("fig2").unwrap().curves.len(), 12);
        assert_eq!(preset("fig3").unwrap().curves.len(), 6);
    }
}
