//! Observed series, preprocessing and the empirical autocovariance.

use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};

/// Shortest series accepted by [`preprocess`].
pub const MIN_LENGTH: usize = 10;

/// Default observation horizon: `n` samples are placed at `T/n, 2T/n, …, T`.
pub const DEFAULT_HORIZON: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Preprocessing {
    pub detrended: bool,
    /// Least-squares slope against the observation index `1..=n`.
    pub slope: f64,
    pub intercept: f64,
    pub centered: bool,
    pub mean: f64,
}

/// An equally spaced series on the centered (and optionally detrended)
/// scale, with the record needed to map values back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesSample {
    pub values: Vec<f64>,
    pub horizon_t: f64,
    pub preprocessing: Preprocessing,
}

impl SeriesSample {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn with_horizon(mut self, horizon_t: f64) -> Result<Self> {
        if !(horizon_t > 0.0) || !horizon_t.is_finite() {
            return Err(FouError::InvalidConfig(format!("horizon T must be positive, got {horizon_t}")));
        }
        self.horizon_t = horizon_t;
        Ok(self)
    }

    /// Grid spacing `T/n`.
    pub fn spacing(&self) -> f64 {
        self.horizon_t / self.len() as f64
    }

    /// `k T / n`.
    pub fn lag_time(&self, k: usize) -> f64 {
        k as f64 * self.horizon_t / self.len() as f64
    }

    /// The part removed from observation `index` (zero-based) by
    /// preprocessing.
    pub fn offset(&self, index: usize) -> f64 {
        let p = &self.preprocessing;
        let trend = if p.detrended {
            p.intercept + p.slope * (index + 1) as f64
        } else {
            0.0
        };
        trend + p.mean
    }

    /// Maps a value on the processed scale back to original units.
    pub fn restore(&self, index: usize, value: f64) -> f64 {
        value + self.offset(index)
    }

    /// The series in original units.
    pub fn original(&self) -> Vec<f64> {
        self.values.iter().enumerate().map(|(i, &v)| self.restore(i, v)).collect()
    }

    /// The same preprocessing applied to a new set of processed values, e.g.
    /// a scaled copy.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let mut s = self.clone();
        s.values.iter_mut().for_each(|v| *v = f(*v));
        s
    }
}

/// Optional least-squares linear detrend followed by mean-centering.
pub fn preprocess(raw: &[f64], detrend: bool) -> Result<SeriesSample> {
    let n = raw.len();
    if n < MIN_LENGTH {
        return Err(FouError::InvalidConfig(format!(
            "series has {n} values; at least {MIN_LENGTH} are required"
        )));
    }
    if let Some(bad) = raw.iter().position(|v| !v.is_finite()) {
        return Err(FouError::Domain(format!("value {} at index {bad} is not finite", raw[bad])));
    }
    let (slope, intercept) = if detrend { linear_fit(raw) } else { (0.0, 0.0) };
    let mut values: Vec<f64> = raw
        .iter()
        .enumerate()
        .map(|(i, &v)| v - if detrend { intercept + slope * (i + 1) as f64 } else { 0.0 })
        .collect();
    let mean = values.iter().sum::<f64>() / n as f64;
    values.iter_mut().for_each(|v| *v -= mean);
    Ok(SeriesSample {
        values,
        horizon_t: DEFAULT_HORIZON,
        preprocessing: Preprocessing {
            detrended: detrend,
            slope,
            intercept,
            centered: true,
            mean,
        },
    })
}

/// Least-squares `(slope, intercept)` of `y` against `1..=n`.
pub fn linear_fit(y: &[f64]) -> (f64, f64) {
    let n = y.len() as f64;
    let tbar = (n + 1.0) / 2.0;
    let ybar = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (i, &v) in y.iter().enumerate() {
        let dt = (i + 1) as f64 - tbar;
        sxy += dt * (v - ybar);
        sxx += dt * dt;
    }
    let slope = sxy / sxx;
    (slope, ybar - slope * tbar)
}

/// `γ̂(k T/n) = (1/n) Σ_{i<n-k} (X_i - X̄)(X_{i+k} - X̄)` for `k = 0..=max_lag`.
pub fn empirical_acf(values: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if max_lag >= n {
        return Err(FouError::InvalidConfig(format!(
            "max lag {max_lag} must be below the series length {n}"
        )));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let c: Vec<f64> = values.iter().map(|v| v - mean).collect();
    Ok((0..=max_lag)
        .map(|k| c[..n - k].iter().zip(&c[k..]).map(|(a, b)| a * b).sum::<f64>() / n as f64)
        .collect())
}
