//! Bundled and synthetic series.
//!
//! * Lake Huron annual mean level (feet), 1875–1972, 98 values, as
//!   distributed with the R `datasets` package (`LakeHuron`).
//! * Box–Jenkins Series A (chemical process concentration, 197 readings) is
//!   not redistributed here. [`series_a`] reads it from the path in the
//!   `FOU_SERIES_A` environment variable, or from `data/series_a.csv` next
//!   to this crate.
//! * The oxygen-saturation study has no public data; [`synthetic_oxygen`]
//!   generates a stand-in with the same length and the same evaluation
//!   protocol.

use std::path::PathBuf;

use crate::error::{FouError, Result};
use crate::io::{parse_series_csv, read_series_csv};
use crate::model::FouModel;
use crate::sampler::{rng, sample_exact};
use crate::specfun::Hurst;
use rand_distr::{Distribution, StandardNormal};

const LAKE_HURON_CSV: &str = include_str!("../data/lake_huron.csv");

/// Lake Huron levels in feet, 1875–1972.
pub fn lake_huron() -> Vec<f64> {
    parse_series_csv(LAKE_HURON_CSV, "lake_huron.csv").expect("bundled dataset parses")
}

/// Locations searched by [`series_a`], in order.
pub fn series_a_candidates() -> Vec<PathBuf> {
    let mut v = Vec::new();
    if let Ok(p) = std::env::var("FOU_SERIES_A") {
        v.push(PathBuf::from(p));
    }
    v.push(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("series_a.csv"));
    v
}

/// Box–Jenkins Series A from a user-supplied file.
pub fn series_a() -> Result<Vec<f64>> {
    for p in series_a_candidates() {
        if p.is_file() {
            let v = read_series_csv(&p)?;
            if v.len() != 197 {
                return Err(FouError::Parse {
                    path: p.display().to_string(),
                    line: 0,
                    msg: format!("Series A has 197 readings, found {}", v.len()),
                });
            }
            return Ok(v);
        }
    }
    Err(FouError::Io {
        path: series_a_candidates()
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(", "),
        msg: "Series A is not bundled; set FOU_SERIES_A to a one-column CSV of the 197 readings".into(),
    })
}

/// Number of points in the oxygen stand-in.
pub const OXYGEN_LENGTH: usize = 304;

/// Describes the stand-in in output metadata.
pub const OXYGEN_NOTE: &str = "synthetic stand-in: FOU(2.0, 0.4, sigma=1.2, H=0.75) on a T=20 grid plus N(0, 0.3^2) noise, shifted to level 95; the original oxygen-saturation recording is not public";

/// A synthetic series with the length of the oxygen study.
pub fn synthetic_oxygen(seed: u64) -> Result<Vec<f64>> {
    let model = FouModel::distinct(&[2.0, 0.4], 1.2, Hurst::new(0.75)?)?;
    let dt = 20.0 / OXYGEN_LENGTH as f64;
    let path = sample_exact(&model, OXYGEN_LENGTH, dt, seed)?;
    let mut r = rng(seed ^ 0x0a11_ce00);
    Ok(path
        .values
        .iter()
        .map(|v| {
            let z: f64 = StandardNormal.sample(&mut r);
            95.0 + v + 0.3 * z
        })
        .collect())
}
