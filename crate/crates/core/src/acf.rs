//! Autocovariance and cross-covariance of FOU(p) processes.
//!
//! Two backends evaluate `γ(t) = E(X₀ X_t)`:
//!
//! * [`AcfBackend::ClosedFormDistinct`]: `(σ²H/2) Σᵢ cᵢ f_H(λᵢ|t|)` with
//!   `cᵢ = λᵢ^{2p-2H-2} / Π_{j≠i}(λᵢ² - λⱼ²)`. Requires simple, well
//!   separated rates.
//! * [`AcfBackend::SpectralInversion`]: `2 ∫₀^∞ cos(t x) f(x) dx` over the
//!   spectral density. Handles repeated and nearly coincident rates.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};
use crate::model::{k_coefficients, FouModel, DISTINCTNESS_GUARD};
use crate::quad::{cosine_transform, integrate_power_origin, QuadOptions};
use crate::specfun::{Hurst, SpecfunConfig, DEFAULT_CONFIG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AcfBackend {
    ClosedFormDistinct,
    SpectralInversion,
}

impl AcfBackend {
    /// The closed form when every rate is simple and separated by more than
    /// [`DISTINCTNESS_GUARD`], spectral inversion otherwise.
    pub fn select(model: &FouModel) -> Self {
        if model.all_simple() && model.min_relative_gap() >= DISTINCTNESS_GUARD {
            AcfBackend::ClosedFormDistinct
        } else {
            AcfBackend::SpectralInversion
        }
    }
}

/// A memoizing autocovariance function for one fixed model.
///
/// The cache is keyed by `|t|` and guarded by a lock, so an evaluator can be
/// shared across threads and always returns the value a fresh sequential
/// evaluation would.
#[derive(Debug)]
pub struct AcfEvaluator {
    model: FouModel,
    backend: AcfBackend,
    config: SpecfunConfig,
    weights: Vec<(f64, f64)>,
    cache: RwLock<HashMap<u64, f64>>,
}

impl Clone for AcfEvaluator {
    fn clone(&self) -> Self {
        Self {
            model: self.model.clone(),
            backend: self.backend,
            config: self.config,
            weights: self.weights.clone(),
            cache: RwLock::new(self.cache.read().expect("acf cache poisoned").clone()),
        }
    }
}

impl AcfEvaluator {
    pub fn new(model: &FouModel) -> Self {
        Self::with_config(model, DEFAULT_CONFIG)
    }

    pub fn with_config(model: &FouModel, config: SpecfunConfig) -> Self {
        let backend = AcfBackend::select(model);
        Self::with_backend(model, backend, config).expect("selected backend is always admissible")
    }

    /// Forces a backend. The closed form rejects repeated rates with
    /// `InvalidModel` and near-coincident ones with `DegenerateLambdas`.
    pub fn with_backend(model: &FouModel, backend: AcfBackend, config: SpecfunConfig) -> Result<Self> {
        let weights = match backend {
            AcfBackend::ClosedFormDistinct => {
                if !model.all_simple() {
                    return Err(FouError::InvalidModel(
                        "closed-form covariance needs every multiplicity to be 1".into(),
                    ));
                }
                closed_form_weights(model)?
            }
            AcfBackend::SpectralInversion => Vec::new(),
        };
        Ok(Self {
            model: model.clone(),
            backend,
            config,
            weights,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn model(&self) -> &FouModel {
        &self.model
    }

    pub fn backend(&self) -> AcfBackend {
        self.backend
    }

    pub fn acf(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(FouError::Domain(format!("lag {t} is not finite")));
        }
        let t = t.abs();
        let key = t.to_bits();
        if let Some(&v) = self.cache.read().expect("acf cache poisoned").get(&key) {
            return Ok(v);
        }
        let v = match self.backend {
            AcfBackend::ClosedFormDistinct => self.closed_form(t)?,
            AcfBackend::SpectralInversion => self.spectral(t)?,
        };
        self.cache.write().expect("acf cache poisoned").insert(key, v);
        Ok(v)
    }

    pub fn acf_many(&self, lags: &[f64]) -> Result<Vec<f64>> {
        lags.iter().map(|&t| self.acf(t)).collect()
    }

    /// `γ(k·dt)` for `k = 0..n`.
    pub fn acf_grid(&self, n: usize, dt: f64) -> Result<Vec<f64>> {
        (0..n).map(|k| self.acf(k as f64 * dt)).collect()
    }

    fn closed_form(&self, t: f64) -> Result<f64> {
        let h = self.model.hurst();
        let s = self.model.sigma();
        let mut sum = 0.0;
        for &(lambda, c) in &self.weights {
            sum += c * self.config.f_h(lambda * t, h)?;
        }
        Ok(s * s * h.value() / 2.0 * sum)
    }

    fn spectral(&self, t: f64) -> Result<f64> {
        let m = &self.model;
        let pre = m.spectral_prefactor();
        let e = m.spectral_exponent();
        let smooth = |x: f64| pre * m.spectral_rational(x);
        let density = |x: f64| smooth(x) * x.powf(e);
        let opts = QuadOptions {
            abs_tol: 0.0,
            rel_tol: self.config.quad_rel_tol,
            max_intervals: 4000,
        };
        let head = 4.0 * m.max_rate();
        let head_rule = |b: f64, _: &dyn Fn(f64) -> f64, o: &QuadOptions| {
            integrate_power_origin(|x| (t * x).cos() * smooth(x), e, b, o)
        };
        let r = cosine_transform(density, t, head, head_rule, &opts);
        let value = 2.0 * r.value;
        if !value.is_finite() || 2.0 * r.abs_err > 1e-7 * value.abs().max(self.scale()) {
            return Err(FouError::Quadrature {
                value,
                abs_err: 2.0 * r.abs_err,
            });
        }
        Ok(value)
    }

    /// `γ(0)` of the fastest single-rate factor. Every OU transfer factor
    /// has modulus at most one, so this bounds the composed variance and
    /// sets the scale for absolute quadrature error.
    fn scale(&self) -> f64 {
        let m = &self.model;
        let h = m.hurst().value();
        let s = m.sigma();
        let bound = s * s * crate::specfun::gamma(2.0 * h + 1.0) / (2.0 * m.max_rate().powf(2.0 * h));
        bound.max(f64::MIN_POSITIVE)
    }
}

fn closed_form_weights(model: &FouModel) -> Result<Vec<(f64, f64)>> {
    let lambdas = model.expanded_rates();
    // reuse the guard of the composition weights
    k_coefficients(&lambdas)?;
    let p = lambdas.len() as i32;
    let h = model.hurst().value();
    Ok(lambdas
        .iter()
        .enumerate()
        .map(|(i, &li)| {
            let prod: f64 = lambdas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &lj)| li * li - lj * lj)
                .product();
            (li, li.powf(2.0 * p as f64 - 2.0 * h - 2.0) / prod)
        })
        .collect())
}

/// `γ(t)` with the automatically selected backend and default numerics.
pub fn acf(model: &FouModel, t: f64) -> Result<f64> {
    AcfEvaluator::new(model).acf(t)
}

/// `E(X₀^{(1)} X_t^{(2)})` for two single-rate processes driven by the same
/// `σ B_H`: `σ²H/(λ₁+λ₂) · (λ₁^{1-2H} f_H1(λ₁|t|) + λ₂^{1-2H} f_H2(λ₂|t|))`
/// for `t ≥ 0`, with the rates swapped for `t < 0`.
pub fn cross_cov(lambda1: f64, lambda2: f64, sigma: f64, hurst: Hurst, t: f64) -> Result<f64> {
    cross_cov_with(&DEFAULT_CONFIG, lambda1, lambda2, sigma, hurst, t)
}

pub fn cross_cov_with(
    config: &SpecfunConfig,
    lambda1: f64,
    lambda2: f64,
    sigma: f64,
    hurst: Hurst,
    t: f64,
) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(FouError::Domain(format!("sigma {sigma} must be positive")));
    }
    let (a, b) = if t >= 0.0 { (lambda1, lambda2) } else { (lambda2, lambda1) };
    let md = config.mixed_decay(a, b, t.abs(), hurst)?;
    Ok(sigma * sigma * hurst.value() / (lambda1 + lambda2) * md)
}
