//! One-step-ahead Gaussian prediction under a fitted FOU model.

use serde::{Deserialize, Serialize};

use crate::acf::AcfEvaluator;
use crate::baselines::ArmaModel;
use crate::error::{FouError, Result};
use crate::linalg::one_step_conditional;
use crate::model::FouModel;
use crate::series::SeriesSample;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForecastModel {
    Fou(FouModel),
    Arma(ArmaModel),
}

/// Predictions of the last `m` observations, each from the observations
/// strictly before it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastResult {
    pub model: ForecastModel,
    pub m: usize,
    /// Zero-based positions of the targets in the series.
    pub indices: Vec<usize>,
    /// Targets in original units.
    pub targets: Vec<f64>,
    /// Predictions in original units.
    pub predictions: Vec<f64>,
    /// Predictions on the processed (centered, detrended) scale.
    pub centered_predictions: Vec<f64>,
    /// Conditional variances of the targets given their past, when the
    /// predictor provides them.
    pub conditional_var: Option<Vec<f64>>,
}

pub(crate) fn check_holdout(series: &SeriesSample, m: usize) -> Result<()> {
    if m == 0 || m >= series.len() {
        return Err(FouError::InvalidConfig(format!(
            "holdout m = {m} must satisfy 1 ≤ m < n = {}",
            series.len()
        )));
    }
    Ok(())
}

/// For `i = 1..=m`, the conditional mean of `X_{n-m+i}` given every earlier
/// observation under `model`, with covariances `γ(k T/n)`, mapped back to
/// original units.
pub fn one_step_predictions(model: &FouModel, series: &SeriesSample, m: usize) -> Result<ForecastResult> {
    check_holdout(series, m)?;
    let n = series.len();
    let ev = AcfEvaluator::new(model);
    let acf = ev.acf_grid(n, series.spacing())?;
    let (centered, vars) = one_step_conditional(&acf, &series.values, n - m)?;
    let indices: Vec<usize> = (n - m..n).collect();
    Ok(ForecastResult {
        model: ForecastModel::Fou(model.clone()),
        m,
        predictions: indices
            .iter()
            .zip(&centered)
            .map(|(&i, &p)| series.restore(i, p))
            .collect(),
        targets: indices.iter().map(|&i| series.restore(i, series.values[i])).collect(),
        indices,
        centered_predictions: centered,
        conditional_var: Some(vars),
    })
}
