//! Simulation of FOU(p) paths.
//!
//! Two routes are provided:
//!
//! * exact draws from the stationary Gaussian law on a grid, by circulant
//!   embedding of the autocovariance (dense Cholesky as a fallback);
//! * the constructive route of composing discrete OU operators on a shared
//!   fractional Gaussian noise.
//!
//! The random generator is ChaCha20 seeded from a `u64`, so paths are
//! reproducible across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::acf::AcfEvaluator;
use crate::error::{FouError, Result};
use crate::linalg::Cholesky;
use crate::model::FouModel;
use crate::specfun::Hurst;

/// Largest grid handled by the dense fallback.
pub const DENSE_LIMIT: usize = 16384;

/// Largest burn-in accepted by the operator simulator.
pub const MAX_BURN_IN: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMethod {
    ExactGaussian,
    OperatorIteration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub values: Vec<f64>,
    pub dt: f64,
    pub t0: f64,
    pub seed: u64,
    pub method: SampleMethod,
}

/// Fractional Gaussian noise: increments of `B_H` over a grid of step `dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbmPath {
    pub increments: Vec<f64>,
    pub hurst: Hurst,
    pub dt: f64,
}

impl FbmPath {
    /// Levels `B_H(k dt)` for `k = 1..=n`, starting from `B_H(0) = 0`.
    pub fn levels(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.increments
            .iter()
            .map(|d| {
                acc += d;
                acc
            })
            .collect()
    }
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn normals(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// `Cov(ΔB_H(j), ΔB_H(j+k))` for unit-σ increments of length `dt`.
pub fn fgn_autocovariance(h: Hurst, dt: f64, k: usize) -> f64 {
    let a = 2.0 * h.value();
    let k = k as f64;
    let up = (k + 1.0).powf(a);
    let mid = k.powf(a);
    let down = (k - 1.0).abs().powf(a);
    0.5 * dt.powf(a) * (up - 2.0 * mid + down)
}

/// A reusable exact sampler for a stationary Gaussian sequence with a given
/// autocovariance on the grid.
#[derive(Debug, Clone)]
pub struct GaussianSampler {
    n: usize,
    kind: SamplerKind,
}

#[derive(Debug, Clone)]
enum SamplerKind {
    Circulant { sqrt_eig: Vec<f64> },
    Dense(Cholesky),
}

impl GaussianSampler {
    /// Builds a sampler for `n` points from `acf` at lags `0..` (at least
    /// `n` values; extra values allow a larger embedding).
    ///
    /// The embedding is accepted when its most negative eigenvalue is below
    /// `1e-10` of the largest; such values are clipped to zero. Otherwise
    /// the dense factorization is used.
    pub fn new(acf: &[f64], n: usize) -> Result<Self> {
        if n == 0 || acf.len() < n {
            return Err(FouError::LengthMismatch {
                left: acf.len(),
                right: n,
            });
        }
        if n == 1 {
            let chol = Cholesky::with_jitter(&[acf[0]], 1)?;
            return Ok(Self { n, kind: SamplerKind::Dense(chol) });
        }
        if let Some(sqrt_eig) = circulant_roots(&acf[..n]) {
            return Ok(Self {
                n,
                kind: SamplerKind::Circulant { sqrt_eig },
            });
        }
        if n > DENSE_LIMIT {
            return Err(FouError::FactorizationFailure { jitter: 0.0 });
        }
        let cov = crate::linalg::toeplitz(acf, n);
        Ok(Self {
            n,
            kind: SamplerKind::Dense(Cholesky::with_jitter(&cov, n)?),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn uses_embedding(&self) -> bool {
        matches!(self.kind, SamplerKind::Circulant { .. })
    }

    pub fn sample(&self, seed: u64) -> Vec<f64> {
        let mut r = rng(seed);
        self.sample_with(&mut r)
    }

    pub fn sample_with(&self, r: &mut ChaCha20Rng) -> Vec<f64> {
        match &self.kind {
            SamplerKind::Dense(chol) => chol.mul_lower(&normals(r, self.n)),
            SamplerKind::Circulant { sqrt_eig } => {
                let m = sqrt_eig.len();
                let mut buf: Vec<Complex<f64>> = sqrt_eig
                    .iter()
                    .map(|&s| {
                        let re: f64 = StandardNormal.sample(r);
                        let im: f64 = StandardNormal.sample(r);
                        Complex::new(s * re, s * im)
                    })
                    .collect();
                FftPlanner::new().plan_fft_forward(m).process(&mut buf);
                buf.truncate(self.n);
                buf.into_iter().map(|c| c.re).collect()
            }
        }
    }
}

/// `sqrt(eig / M)` of the minimal circulant embedding of `acf[0..n]`, or
/// `None` when the embedding is not positive semidefinite.
fn circulant_roots(acf: &[f64]) -> Option<Vec<f64>> {
    let n = acf.len();
    let m = 2 * (n - 1);
    let mut row: Vec<Complex<f64>> = (0..m)
        .map(|k| Complex::new(acf[if k < n { k } else { m - k }], 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut row);
    let max = row.iter().map(|c| c.re).fold(0.0, f64::max);
    let min = row.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
    if min < -1e-10 * max {
        return None;
    }
    Some(row.iter().map(|c| (c.re.max(0.0) / m as f64).sqrt()).collect())
}

/// Fractional Gaussian noise of unit scale by circulant embedding.
pub fn sample_fbm(h: Hurst, n: usize, dt: f64, seed: u64) -> Result<FbmPath> {
    if n == 0 || !(dt > 0.0) {
        return Err(FouError::InvalidConfig(format!("need n ≥ 1 and dt > 0, got n={n}, dt={dt}")));
    }
    // one extra lag gives an embedding of even size 2n
    let acf: Vec<f64> = (0..=n).map(|k| fgn_autocovariance(h, dt, k)).collect();
    let sampler = GaussianSampler::new(&acf, n + 1)?;
    let mut inc = sampler.sample(seed);
    inc.truncate(n);
    Ok(FbmPath { increments: inc, hurst: h, dt })
}

/// Exact draw of `n` equally spaced values of a stationary FOU(p) process.
pub fn sample_exact(model: &FouModel, n: usize, dt: f64, seed: u64) -> Result<SamplePath> {
    let sampler = exact_sampler(model, n, dt)?;
    Ok(SamplePath {
        values: sampler.sample(seed),
        dt,
        t0: 0.0,
        seed,
        method: SampleMethod::ExactGaussian,
    })
}

/// The sampler behind [`sample_exact`], for drawing many paths of one model.
pub fn exact_sampler(model: &FouModel, n: usize, dt: f64) -> Result<GaussianSampler> {
    if n == 0 || !(dt > 0.0) {
        return Err(FouError::InvalidConfig(format!("need n ≥ 1 and dt > 0, got n={n}, dt={dt}")));
    }
    let ev = AcfEvaluator::new(model);
    let acf = ev.acf_grid(n + 1, dt)?;
    let sampler = GaussianSampler::new(&acf, n + 1)?;
    Ok(GaussianSampler {
        n,
        kind: sampler.kind,
    })
}

/// A discrete OU operator `T_λ` acting on increments.
///
/// The recursion `y_k = a y_{k-1} + b (x_k - x_{k-1})` with
/// `a = (1 - λdt/2)/(1 + λdt/2)` and `b = 1/(1 + λdt/2)` is the trapezoidal
/// (bilinear) discretization of `dy = -λ y dt + dx`. Its transfer function is
/// the continuous one under a fixed change of variable, so compositions
/// commute and expand into the same `Kᵢ` combination as in continuous time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuOperator {
    pub lambda: f64,
    pub dt: f64,
}

impl OuOperator {
    pub fn new(lambda: f64, dt: f64) -> Result<Self> {
        if !(lambda > 0.0) || !(dt > 0.0) {
            return Err(FouError::Domain(format!("need λ > 0 and dt > 0, got λ={lambda}, dt={dt}")));
        }
        Ok(Self { lambda, dt })
    }

    fn coefficients(&self) -> (f64, f64) {
        let half = 0.5 * self.lambda * self.dt;
        ((1.0 - half) / (1.0 + half), 1.0 / (1.0 + half))
    }

    /// Output levels for input increments, starting from a zero state.
    pub fn filter(&self, increments: &[f64]) -> Vec<f64> {
        let (a, b) = self.coefficients();
        let mut y = 0.0;
        increments
            .iter()
            .map(|&d| {
                y = a * y + b * d;
                y
            })
            .collect()
    }
}

/// Increments of a level sequence whose value before the first entry is 0.
pub fn increments_of(levels: &[f64]) -> Vec<f64> {
    let mut prev = 0.0;
    levels
        .iter()
        .map(|&v| {
            let d = v - prev;
            prev = v;
            d
        })
        .collect()
}

/// Applies `T_λ` to a driving path given by its increments and drops the
/// first `burn_in` points.
pub fn apply_ou_operator(increments: &[f64], lambda: f64, dt: f64, burn_in: usize) -> Result<Vec<f64>> {
    let op = OuOperator::new(lambda, dt)?;
    let mut out = op.filter(increments);
    out.drain(..burn_in.min(out.len()));
    Ok(out)
}

/// Applies operators in sequence, each one to the increments of the previous
/// output, and returns the full-length levels.
pub fn compose_operators(increments: &[f64], lambdas: &[f64], dt: f64) -> Result<Vec<f64>> {
    let mut inc = increments.to_vec();
    let mut levels = inc.clone();
    for &l in lambdas {
        levels = OuOperator::new(l, dt)?.filter(&inc);
        inc = increments_of(&levels);
    }
    Ok(levels)
}

/// Default burn-in of twenty e-folding times of the slowest rate.
pub fn default_burn_in(model: &FouModel, dt: f64) -> usize {
    (20.0 / (model.min_rate() * dt)).ceil() as usize
}

/// A FOU(p) path built by composing OU operators on `σ`-scaled fractional
/// Gaussian noise, after `burn_in` discarded points (default
/// [`default_burn_in`]).
pub fn sample_operator(
    model: &FouModel,
    n: usize,
    dt: f64,
    seed: u64,
    burn_in: Option<usize>,
) -> Result<SamplePath> {
    let burn = burn_in.unwrap_or_else(|| default_burn_in(model, dt));
    if burn > MAX_BURN_IN {
        return Err(FouError::InvalidConfig(format!(
            "burn-in of {burn} points exceeds {MAX_BURN_IN}; increase dt"
        )));
    }
    let noise = sample_fbm(model.hurst(), n + burn, dt, seed)?;
    let scaled: Vec<f64> = noise.increments.iter().map(|d| d * model.sigma()).collect();
    let mut levels = compose_operators(&scaled, &model.expanded_rates(), dt)?;
    levels.drain(..burn);
    Ok(SamplePath {
        values: levels,
        dt,
        t0: burn as f64 * dt,
        seed,
        method: SampleMethod::OperatorIteration,
    })
}
