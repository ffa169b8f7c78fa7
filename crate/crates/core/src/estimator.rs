//! Autocovariance-matching estimation of `(λ, σ, H)`.
//!
//! The criterion is the mean squared gap between model and empirical
//! autocovariances at the lag times `i T/n`, `i = 1..=h` (optionally also
//! `i = 0`). It is minimized by multi-start Nelder–Mead in an unconstrained
//! parameterization that keeps every parameter inside its bounds and the
//! rates strictly decreasing.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acf::{AcfBackend, AcfEvaluator};
use crate::error::{FouError, Result};
use crate::model::{FouModel, Rate};
use crate::optim::{latin_hypercube, nelder_mead, Minimum, SimplexOptions};
use crate::series::{empirical_acf, SeriesSample};
use crate::specfun::{Hurst, DEFAULT_CONFIG};

/// Criterion value assigned to parameter points where the model covariance
/// cannot be evaluated.
pub const PENALTY: f64 = 1e100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamBounds {
    pub lambda: (f64, f64),
    pub sigma: (f64, f64),
    pub hurst: (f64, f64),
}

impl Default for ParamBounds {
    fn default() -> Self {
        Self {
            lambda: (1e-3, 1e3),
            sigma: (1e-6, 1e6),
            hurst: (0.5, 0.999),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub h_lags: usize,
    /// Multiplicities of the rates, fastest rate first.
    pub structure: Vec<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub bounds: ParamBounds,
    pub seed: u64,
    pub include_lag0: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            h_lags: 10,
            structure: vec![1, 1],
            restarts: 32,
            max_iters: 2000,
            bounds: ParamBounds::default(),
            seed: 0,
            include_lag0: false,
        }
    }
}

impl FitConfig {
    pub fn with_structure(structure: &[usize]) -> Self {
        Self {
            structure: structure.to_vec(),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.structure.is_empty() || self.structure.contains(&0) {
            return Err(FouError::InvalidConfig(format!(
                "structure {:?} needs at least one positive multiplicity",
                self.structure
            )));
        }
        if self.restarts == 0 {
            return Err(FouError::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.h_lags == 0 {
            return Err(FouError::InvalidConfig("h must be at least 1".into()));
        }
        let b = &self.bounds;
        let ok = |(lo, hi): (f64, f64)| lo > 0.0 && hi > lo && hi.is_finite();
        if !ok(b.lambda) || !ok(b.sigma) || !(b.hurst.0 >= 0.5 && b.hurst.1 < 1.0 && b.hurst.1 > b.hurst.0) {
            return Err(FouError::InvalidConfig(format!("invalid parameter bounds {b:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatchedLag {
    pub lag_time: f64,
    pub empirical: f64,
    pub model: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FouModel,
    pub objective: f64,
    pub trace: Vec<(usize, f64)>,
    pub matched_lags: Vec<MatchedLag>,
    pub converged: bool,
    pub seed: u64,
    /// Index of the winning restart.
    pub best_restart: usize,
    /// Criterion value at each restart's starting point.
    pub start_objectives: Vec<f64>,
}

impl FitResult {
    /// The criterion recomputed from `matched_lags`.
    pub fn recomputed_objective(&self) -> f64 {
        criterion(self.matched_lags.iter().map(|m| (m.model, m.empirical)))
    }
}

fn criterion(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for (m, e) in pairs {
        sum += (m - e) * (m - e);
        count += 1;
    }
    sum / count as f64
}

fn evaluator_for(model: &FouModel) -> Result<AcfEvaluator> {
    let backend = if model.all_simple() {
        AcfBackend::ClosedFormDistinct
    } else {
        AcfBackend::SpectralInversion
    };
    AcfEvaluator::with_backend(model, backend, DEFAULT_CONFIG)
}

/// `(1/h) Σ (γ_model(tᵢ) - γ̂ᵢ)²` over the supplied lag times, or
/// [`PENALTY`] when the model covariance cannot be evaluated (including
/// rates closer than the distinctness guard).
pub fn objective(model: &FouModel, empirical: &[f64], lag_times: &[f64]) -> f64 {
    assert_eq!(empirical.len(), lag_times.len(), "one empirical value per lag time");
    let Ok(ev) = evaluator_for(model) else {
        return PENALTY;
    };
    let mut pairs = Vec::with_capacity(lag_times.len());
    for (&t, &e) in lag_times.iter().zip(empirical) {
        match ev.acf(t) {
            Ok(m) if m.is_finite() => pairs.push((m, e)),
            _ => return PENALTY,
        }
    }
    let v = criterion(pairs.into_iter());
    if v.is_finite() {
        v.min(PENALTY)
    } else {
        PENALTY
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn logit(p: f64) -> f64 {
    let p = p.clamp(1e-15, 1.0 - 1e-15);
    (p / (1.0 - p)).ln()
}

/// Maps unconstrained vectors `(θ_λ₁…θ_λq, θ_σ, θ_H)` to models.
///
/// With `s₁ = sigmoid(θ_λ₁)` and `s_{i+1} = sᵢ sigmoid(θ_λ{i+1})`, the rates
/// are `λᵢ = exp(lo + (hi - lo) sᵢ)` on the log-bounds, so they are strictly
/// decreasing in structure order. `σ` is log-uniform in its bounds through a
/// sigmoid, and `H` is affine in a sigmoid.
#[derive(Debug, Clone, PartialEq)]
pub struct Parameterization {
    pub structure: Vec<usize>,
    pub bounds: ParamBounds,
}

impl Parameterization {
    pub fn dim(&self) -> usize {
        self.structure.len() + 2
    }

    pub fn decode(&self, theta: &[f64]) -> Result<FouModel> {
        let q = self.structure.len();
        let (llo, lhi) = (self.bounds.lambda.0.ln(), self.bounds.lambda.1.ln());
        let mut s = 1.0;
        let mut rates = Vec::with_capacity(q);
        for (i, &mult) in self.structure.iter().enumerate() {
            s *= sigmoid(theta[i]);
            rates.push(Rate {
                value: (llo + (lhi - llo) * s).exp(),
                multiplicity: mult,
            });
        }
        let (slo, shi) = (self.bounds.sigma.0.ln(), self.bounds.sigma.1.ln());
        let sigma = (slo + (shi - slo) * sigmoid(theta[q])).exp();
        let (hlo, hhi) = self.bounds.hurst;
        let hurst = Hurst::new(hlo + (hhi - hlo) * sigmoid(theta[q + 1]))?;
        FouModel::new(rates, sigma, hurst)
    }

    /// Inverse of [`Self::decode`] for a model whose rates decrease in
    /// structure order and lie strictly inside the bounds.
    pub fn encode(&self, model: &FouModel) -> Result<Vec<f64>> {
        let rates = model.rates();
        if rates.len() != self.structure.len() {
            return Err(FouError::LengthMismatch {
                left: rates.len(),
                right: self.structure.len(),
            });
        }
        let (llo, lhi) = (self.bounds.lambda.0.ln(), self.bounds.lambda.1.ln());
        let mut theta = Vec::with_capacity(self.dim());
        let mut prev = 1.0;
        for r in rates {
            let s = (r.value.ln() - llo) / (lhi - llo);
            theta.push(logit(s / prev));
            prev = s;
        }
        let (slo, shi) = (self.bounds.sigma.0.ln(), self.bounds.sigma.1.ln());
        theta.push(logit((model.sigma().ln() - slo) / (shi - slo)));
        let (hlo, hhi) = self.bounds.hurst;
        theta.push(logit((model.hurst().value() - hlo) / (hhi - hlo)));
        Ok(theta)
    }

    /// Replaces `θ_σ` by the least-squares scale for the given shape
    /// parameters: `γ` is proportional to `σ²`.
    fn rescale_start(&self, theta: &mut [f64], empirical: &[f64], lag_times: &[f64]) {
        let q = self.structure.len();
        let (slo, shi) = (self.bounds.sigma.0.ln(), self.bounds.sigma.1.ln());
        theta[q] = logit(-slo / (shi - slo));
        let Ok(unit) = self.decode(theta) else { return };
        let Ok(ev) = evaluator_for(&unit) else { return };
        let Ok(g) = ev.acf_many(lag_times) else { return };
        let gg: f64 = g.iter().map(|v| v * v).sum();
        let ge: f64 = g.iter().zip(empirical).map(|(a, b)| a * b).sum();
        let s2 = ge / gg;
        if s2.is_finite() && s2 > 0.0 {
            let ls = (0.5 * s2.ln()).clamp(slo, shi);
            theta[q] = logit((ls - slo) / (shi - slo));
        }
    }
}

/// Fits the model to autocovariance values `empirical` observed at
/// `lag_times`.
pub fn fit_acf(empirical: &[f64], lag_times: &[f64], config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    if empirical.len() != lag_times.len() || empirical.is_empty() {
        return Err(FouError::LengthMismatch {
            left: empirical.len(),
            right: lag_times.len(),
        });
    }
    let param = Parameterization {
        structure: config.structure.clone(),
        bounds: config.bounds,
    };
    let q = config.structure.len();
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut box_bounds = vec![(-3.0, 3.0); q];
    box_bounds.push((0.0, 0.0));
    box_bounds.push((-3.0, 3.0));
    let mut starts = latin_hypercube(config.restarts, &box_bounds, &mut rng);
    for s in &mut starts {
        param.rescale_start(s, empirical, lag_times);
    }
    let f = |theta: &[f64]| match param.decode(theta) {
        Ok(m) => objective(&m, empirical, lag_times),
        Err(_) => PENALTY,
    };
    let opts = SimplexOptions {
        max_iters: config.max_iters,
        ..SimplexOptions::default()
    };
    let runs: Vec<(f64, Minimum)> = starts
        .par_iter()
        .map(|s| (f(s), nelder_mead(f, s, &opts)))
        .collect();
    let start_objectives: Vec<f64> = runs.iter().map(|r| r.0).collect();
    let (best_restart, best) = runs
        .iter()
        .map(|r| &r.1)
        .enumerate()
        .fold(None::<(usize, &Minimum)>, |acc, (i, m)| match acc {
            Some((_, b)) if b.value <= m.value => acc,
            _ => Some((i, m)),
        })
        .expect("at least one restart");
    if best.value >= PENALTY {
        return Err(FouError::NoProgress);
    }
    let model = param.decode(&best.x)?;
    let ev = evaluator_for(&model)?;
    let matched_lags = lag_times
        .iter()
        .zip(empirical)
        .map(|(&t, &e)| {
            Ok(MatchedLag {
                lag_time: t,
                empirical: e,
                model: ev.acf(t)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let objective = criterion(matched_lags.iter().map(|m| (m.model, m.empirical)));
    Ok(FitResult {
        model,
        objective,
        trace: best.trace.clone(),
        matched_lags,
        converged: best.converged,
        seed: config.seed,
        best_restart,
        start_objectives,
    })
}

/// The lag indices entering the criterion.
pub fn criterion_lags(config: &FitConfig) -> std::ops::RangeInclusive<usize> {
    (if config.include_lag0 { 0 } else { 1 })..=config.h_lags
}

/// Empirical autocovariances and lag times used by [`fit`].
pub fn matching_inputs(series: &SeriesSample, config: &FitConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = series.len();
    if 2 * config.h_lags >= n {
        return Err(FouError::InvalidConfig(format!(
            "h = {} must be below n/2 = {}",
            config.h_lags,
            n / 2
        )));
    }
    let gamma = empirical_acf(&series.values, config.h_lags)?;
    let lags = criterion_lags(config);
    let emp = lags.clone().map(|k| gamma[k]).collect();
    let times = lags.map(|k| series.lag_time(k)).collect();
    Ok((emp, times))
}

/// Fits a FOU model of the configured structure to a preprocessed series.
pub fn fit(series: &SeriesSample, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;
    if series.values.iter().all(|&v| v == series.values[0]) {
        return Err(FouError::DegenerateSeries);
    }
    let (emp, times) = matching_inputs(series, config)?;
    fit_acf(&emp, &times, config)
}
