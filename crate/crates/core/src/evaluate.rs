//! The holdout comparison protocol: preprocess once, fit every requested
//! model, predict the last `m` observations one step ahead, and score all
//! models on the same indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{aic, arma_one_step, fit_ar_yule_walker, fit_arma_css};
use crate::error::{FouError, Result};
use crate::estimator::{fit, FitConfig, FitResult, ParamBounds};
use crate::metrics::{EvalReport, WillmottVariant};
use crate::predictor::{one_step_predictions, ForecastResult};
use crate::series::{preprocess, Preprocessing, SeriesSample};

/// A model family entering the comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelSpec {
    /// FOU with the given multiplicity per rate.
    Fou { structure: Vec<usize> },
    /// AR(p) by Yule–Walker.
    Ar { p: usize },
    /// ARMA(p, q) by conditional sum of squares.
    Arma { p: usize, q: usize },
}

impl ModelSpec {
    pub fn label(&self) -> String {
        match self {
            ModelSpec::Fou { structure } => {
                let parts: Vec<String> = structure
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| {
                        let name = if structure.len() == 1 {
                            "l".to_string()
                        } else {
                            format!("l{}", i + 1)
                        };
                        if m == 1 {
                            name
                        } else {
                            format!("{name}^({m})")
                        }
                    })
                    .collect();
                format!("FOU({},sigma,H)", parts.join(","))
            }
            ModelSpec::Ar { p } => format!("AR({p})"),
            ModelSpec::Arma { p, q } => format!("ARMA({p},{q})"),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Parses `fou:1,1`, `fou:2`, `ar:7`, `arma:1,1`.
impl FromStr for ModelSpec {
    type Err = FouError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || FouError::InvalidConfig(format!("unrecognized model `{s}`; use fou:1,1 | ar:P | arma:P,Q"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind.trim().to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("fou", s) if !s.is_empty() && !s.contains(&0) => Ok(ModelSpec::Fou { structure: s.to_vec() }),
            ("ar", [p]) if *p > 0 => Ok(ModelSpec::Ar { p: *p }),
            ("arma", [p, q]) if p + q > 0 => Ok(ModelSpec::Arma { p: *p, q: *q }),
            _ => Err(bad()),
        }
    }
}

/// Which observations the models are fitted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitScope {
    /// The whole series, including the holdout.
    #[default]
    FullSeries,
    /// Only the first `n - m` observations; preprocessing is estimated on
    /// the same part and extended over the holdout.
    TrainingOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub horizon_t: f64,
    pub h_lags: usize,
    pub holdout: usize,
    pub seed: u64,
    pub variant: WillmottVariant,
    pub detrend: bool,
    pub restarts: usize,
    pub max_iters: usize,
    pub include_lag0: bool,
    pub arma_restarts: usize,
    pub scope: FitScope,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            horizon_t: 20.0,
            h_lags: 10,
            holdout: 20,
            seed: 0,
            variant: WillmottVariant::Standard,
            detrend: false,
            restarts: 32,
            max_iters: 2000,
            include_lag0: false,
            arma_restarts: 8,
            scope: FitScope::FullSeries,
        }
    }
}

impl EvalConfig {
    pub fn fit_config(&self, structure: &[usize]) -> FitConfig {
        FitConfig {
            h_lags: self.h_lags,
            structure: structure.to_vec(),
            restarts: self.restarts,
            max_iters: self.max_iters,
            bounds: ParamBounds::default(),
            seed: self.seed,
            include_lag0: self.include_lag0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelOutcome {
    pub label: String,
    pub spec: ModelSpec,
    pub forecast: ForecastResult,
    pub fit: Option<FitResult>,
    pub aic: Option<f64>,
}

/// Facts every model row shares, recorded so they can be checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Protocol {
    pub n: usize,
    pub holdout: usize,
    pub holdout_indices: Vec<usize>,
    pub identical_holdout: bool,
    pub preprocessing: Preprocessing,
    pub horizon_t: f64,
    pub scope: FitScope,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub protocol: Protocol,
    pub report: EvalReport,
    pub outcomes: Vec<ModelOutcome>,
}

/// Applies recorded preprocessing to a series of any length.
fn apply_preprocessing(raw: &[f64], p: &Preprocessing, horizon_t: f64) -> SeriesSample {
    let values = raw
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let trend = if p.detrended {
                p.intercept + p.slope * (i + 1) as f64
            } else {
                0.0
            };
            v - trend - p.mean
        })
        .collect();
    SeriesSample {
        values,
        horizon_t,
        preprocessing: *p,
    }
}

/// Runs the protocol for every spec on `raw`.
pub fn evaluate(raw: &[f64], specs: &[ModelSpec], config: &EvalConfig) -> Result<Evaluation> {
    let n = raw.len();
    let m = config.holdout;
    if m == 0 || m >= n {
        return Err(FouError::InvalidConfig(format!("holdout m = {m} must satisfy 1 ≤ m < n = {n}")));
    }
    if specs.is_empty() {
        return Err(FouError::InvalidConfig("no models requested".into()));
    }
    let (fit_series, full) = match config.scope {
        FitScope::FullSeries => {
            let s = preprocess(raw, config.detrend)?.with_horizon(config.horizon_t)?;
            (s.clone(), s)
        }
        FitScope::TrainingOnly => {
            let train = preprocess(&raw[..n - m], config.detrend)?.with_horizon(config.horizon_t)?;
            // keep the grid spacing T / n_train over the whole series
            let horizon = config.horizon_t * n as f64 / (n - m) as f64;
            let full = apply_preprocessing(raw, &train.preprocessing, horizon);
            (train, full)
        }
    };

    let mut outcomes = Vec::with_capacity(specs.len());
    for spec in specs {
        let outcome = match spec {
            ModelSpec::Fou { structure } => {
                let fitted = fit(&fit_series, &config.fit_config(structure))?;
                let forecast = one_step_predictions(&fitted.model, &full, m)?;
                ModelOutcome {
                    label: spec.label(),
                    spec: spec.clone(),
                    forecast,
                    fit: Some(fitted),
                    aic: None,
                }
            }
            ModelSpec::Ar { p } => {
                let model = fit_ar_yule_walker(&fit_series, *p)?;
                ModelOutcome {
                    label: spec.label(),
                    spec: spec.clone(),
                    aic: Some(aic(&model, &fit_series)),
                    forecast: arma_one_step(&model, &full, m)?,
                    fit: None,
                }
            }
            ModelSpec::Arma { p, q } => {
                let model = fit_arma_css(&fit_series, *p, *q, config.arma_restarts)?;
                ModelOutcome {
                    label: spec.label(),
                    spec: spec.clone(),
                    aic: Some(aic(&model, &fit_series)),
                    forecast: arma_one_step(&model, &full, m)?,
                    fit: None,
                }
            }
        };
        outcomes.push(outcome);
    }

    let holdout_indices: Vec<usize> = (n - m..n).collect();
    let identical_holdout = outcomes.iter().all(|o| o.forecast.indices == holdout_indices);
    let mut report = EvalReport::new(m, config.variant);
    for o in &outcomes {
        report.push(&o.label, &o.forecast.targets, &o.forecast.predictions)?;
    }
    Ok(Evaluation {
        protocol: Protocol {
            n,
            holdout: m,
            holdout_indices,
            identical_holdout,
            preprocessing: full.preprocessing,
            horizon_t: config.horizon_t,
            scope: config.scope,
            note: None,
        },
        report,
        outcomes,
    })
}
