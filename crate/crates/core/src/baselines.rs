//! AR and ARMA reference models: Yule–Walker, conditional sum of squares,
//! AIC and the recursive one-step predictor.
//!
//! Conventions: `X_t - μ = Σ φᵢ (X_{t-i} - μ) + e_t + Σ θⱼ e_{t-j}`.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};
use crate::linalg::levinson;
use crate::optim::{latin_hypercube, nelder_mead, SimplexOptions};
use crate::predictor::{check_holdout, ForecastModel, ForecastResult};
use crate::series::{empirical_acf, SeriesSample};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmaModel {
    pub ar_coeffs: Vec<f64>,
    pub ma_coeffs: Vec<f64>,
    pub noise_var: f64,
    pub mean: f64,
}

impl ArmaModel {
    pub fn p(&self) -> usize {
        self.ar_coeffs.len()
    }

    pub fn q(&self) -> usize {
        self.ma_coeffs.len()
    }

    pub fn label(&self) -> String {
        match (self.p(), self.q()) {
            (p, 0) => format!("AR({p})"),
            (p, q) => format!("ARMA({p},{q})"),
        }
    }

    pub fn is_stationary(&self) -> bool {
        to_partial(&self.ar_coeffs).is_some()
    }

    pub fn is_invertible(&self) -> bool {
        let neg: Vec<f64> = self.ma_coeffs.iter().map(|t| -t).collect();
        to_partial(&neg).is_some()
    }

    /// One-step residuals with pre-sample deviations and residuals set to
    /// zero. `e_t` for `t < skip` is still computed, so the MA recursion
    /// warms up, but callers may ignore it.
    pub fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let mut e = vec![0.0; x.len()];
        for t in 0..x.len() {
            e[t] = x[t] - self.mean - self.predict_at(x, &e, t);
        }
        e
    }

    /// Conditional mean deviation of `x[t]`, using `x[..t]` and `e[..t]`.
    fn predict_at(&self, x: &[f64], e: &[f64], t: usize) -> f64 {
        let mut s = 0.0;
        for (i, &phi) in self.ar_coeffs.iter().enumerate() {
            if t > i {
                s += phi * (x[t - 1 - i] - self.mean);
            }
        }
        for (j, &theta) in self.ma_coeffs.iter().enumerate() {
            if t > j {
                s += theta * e[t - 1 - j];
            }
        }
        s
    }
}

/// Coefficients of a stationary AR polynomial from partial
/// autocorrelations in `(-1, 1)`.
pub fn from_partial(partial: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::with_capacity(partial.len());
    for (k, &r) in partial.iter().enumerate() {
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = prev[j] - r * prev[k - 1 - j];
        }
        phi.push(r);
    }
    phi
}

/// Inverse of [`from_partial`]; `None` when the polynomial has a root on or
/// inside the unit circle.
pub fn to_partial(coeffs: &[f64]) -> Option<Vec<f64>> {
    let mut phi = coeffs.to_vec();
    let mut partial = vec![0.0; phi.len()];
    for k in (0..phi.len()).rev() {
        let r = phi[k];
        if !(r.abs() < 1.0) {
            return None;
        }
        partial[k] = r;
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = (prev[j] + r * prev[k - 1 - j]) / (1.0 - r * r);
        }
        phi.truncate(k);
    }
    Some(partial)
}

/// Seed of the start-point generator in [`fit_arma_css`].
const CSS_SEED: u64 = 0x5eed_0a2a;

/// Yule–Walker AR(p) from the biased empirical autocovariance.
pub fn fit_ar_yule_walker(series: &SeriesSample, p: usize) -> Result<ArmaModel> {
    let n = series.len();
    if p == 0 || 4 * p >= n {
        return Err(FouError::InvalidConfig(format!("AR order {p} must satisfy 1 ≤ p < n/4 = {}", n / 4)));
    }
    let mean = series.values.iter().sum::<f64>() / n as f64;
    let gamma = empirical_acf(&series.values, p)?;
    if !(gamma[0] > 0.0) {
        return Err(FouError::DegenerateSeries);
    }
    let lv = levinson(&gamma, p)?;
    Ok(ArmaModel {
        ar_coeffs: lv.coeffs,
        ma_coeffs: Vec::new(),
        noise_var: lv.innovation_var,
        mean,
    })
}

/// Sum of squared residuals from index `p` on, and the number of terms.
pub fn css(model: &ArmaModel, x: &[f64]) -> (f64, usize) {
    let e = model.residuals(x);
    let skip = model.p();
    (e[skip..].iter().map(|v| v * v).sum(), x.len() - skip)
}

fn decode(u: &[f64], p: usize, mean: f64) -> ArmaModel {
    let ar_partial: Vec<f64> = u[..p].iter().map(|v| v.tanh()).collect();
    let ma_partial: Vec<f64> = u[p..].iter().map(|v| v.tanh()).collect();
    ArmaModel {
        ar_coeffs: from_partial(&ar_partial),
        ma_coeffs: from_partial(&ma_partial).into_iter().map(|c| -c).collect(),
        noise_var: 1.0,
        mean,
    }
}

/// Conditional-sum-of-squares ARMA(p, q) with restarts.
///
/// The search runs over `atanh` of partial autocorrelations of the AR and
/// (negated) MA polynomials, so every candidate is stationary and
/// invertible. The first start is the zero model; the remaining ones are a
/// Latin hypercube in `[-1.5, 1.5]`.
pub fn fit_arma_css(series: &SeriesSample, p: usize, q: usize, restarts: usize) -> Result<ArmaModel> {
    if p + q == 0 || p > 4 || q > 4 {
        return Err(FouError::InvalidConfig(format!("ARMA({p},{q}) needs p + q ≥ 1 and p, q ≤ 4")));
    }
    if restarts == 0 {
        return Err(FouError::InvalidConfig("restarts must be at least 1".into()));
    }
    let x = &series.values;
    let n = x.len();
    if n <= 4 * (p + q) {
        return Err(FouError::InvalidConfig(format!("series of length {n} is too short for ARMA({p},{q})")));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    if x.iter().all(|&v| v == x[0]) {
        return Err(FouError::DegenerateSeries);
    }
    let objective = |u: &[f64]| css(&decode(u, p, mean), x).0;
    let mut rng = ChaCha20Rng::seed_from_u64(CSS_SEED ^ ((p as u64) << 8 | q as u64));
    let mut starts = vec![vec![0.0; p + q]];
    starts.extend(latin_hypercube(restarts - 1, &vec![(-1.5, 1.5); p + q], &mut rng));
    let opts = SimplexOptions {
        max_iters: 4000,
        diameter_tol: 1e-9,
        initial_step: 0.3,
    };
    let best = starts
        .iter()
        .map(|s| nelder_mead(objective, s, &opts))
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("at least one start");
    if !best.value.is_finite() {
        return Err(FouError::NoProgress);
    }
    let mut model = decode(&best.x, p, mean);
    let (s, count) = css(&model, x);
    model.noise_var = s / count as f64;
    Ok(model)
}

/// Gaussian AIC from CSS residuals: `n_eff ln(CSS/n_eff) + 2(p + q + 1)`,
/// with `n_eff = n - p`. Lower is better.
pub fn aic(model: &ArmaModel, series: &SeriesSample) -> f64 {
    let (s, count) = css(model, &series.values);
    let k = (model.p() + model.q() + 1) as f64;
    count as f64 * (s / count as f64).ln() + 2.0 * k
}

/// Recursive one-step predictions of the last `m` observations.
pub fn arma_one_step(model: &ArmaModel, series: &SeriesSample, m: usize) -> Result<ForecastResult> {
    check_holdout(series, m)?;
    let x = &series.values;
    let n = x.len();
    let e = model.residuals(x);
    let indices: Vec<usize> = (n - m..n).collect();
    let centered: Vec<f64> = indices.iter().map(|&t| model.mean + model.predict_at(x, &e, t)).collect();
    Ok(ForecastResult {
        model: ForecastModel::Arma(model.clone()),
        m,
        predictions: indices
            .iter()
            .zip(&centered)
            .map(|(&i, &p)| series.restore(i, p))
            .collect(),
        targets: indices.iter().map(|&i| series.restore(i, x[i])).collect(),
        indices,
        centered_predictions: centered,
        conditional_var: None,
    })
}

/// One row of an ARMA order grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridEntry {
    pub p: usize,
    pub q: usize,
    pub aic: f64,
    pub model: ArmaModel,
}

/// CSS fits and AIC for every `(p, q)` with `p ≤ max_p`, `q ≤ max_q`,
/// `p + q ≥ 1`.
pub fn arma_grid(series: &SeriesSample, max_p: usize, max_q: usize, restarts: usize) -> Result<Vec<GridEntry>> {
    let mut out = Vec::new();
    for p in 0..=max_p {
        for q in 0..=max_q {
            if p + q == 0 {
                continue;
            }
            let model = fit_arma_css(series, p, q, restarts)?;
            out.push(GridEntry {
                p,
                q,
                aic: aic(&model, series),
                model,
            });
        }
    }
    Ok(out)
}
