//! Small dense and Toeplitz solvers shared by sampling, prediction and the
//! baselines.

use crate::error::{FouError, Result};

/// Jitter multipliers tried, relative to the mean diagonal, when a
/// covariance is numerically indefinite.
pub const JITTER_SCHEDULE: [f64; 6] = [0.0, 1e-12, 1e-11, 1e-10, 1e-9, 1e-8];

/// Lower-triangular Cholesky factor of a symmetric matrix stored row-major.
#[derive(Debug, Clone)]
pub struct Cholesky {
    pub n: usize,
    pub lower: Vec<f64>,
    pub jitter: f64,
}

fn try_cholesky(a: &[f64], n: usize, add: f64) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i * n + j];
            if i == j {
                s += add;
            }
            let (ri, rj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
            s -= ri.iter().zip(rj).map(|(x, y)| x * y).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[i * n + i] = s.sqrt();
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    Some(l)
}

impl Cholesky {
    /// Factors `a`, escalating diagonal jitter along [`JITTER_SCHEDULE`].
    pub fn with_jitter(a: &[f64], n: usize) -> Result<Self> {
        assert_eq!(a.len(), n * n, "matrix must be n x n");
        let mean_diag = (0..n).map(|i| a[i * n + i]).sum::<f64>() / n.max(1) as f64;
        for &rel in &JITTER_SCHEDULE {
            let add = rel * mean_diag.abs();
            if let Some(lower) = try_cholesky(a, n, add) {
                return Ok(Self { n, lower, jitter: add });
            }
        }
        Err(FouError::FactorizationFailure {
            jitter: JITTER_SCHEDULE[JITTER_SCHEDULE.len() - 1] * mean_diag.abs(),
        })
    }

    /// `L z`.
    pub fn mul_lower(&self, z: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| self.lower[i * n..i * n + i + 1].iter().zip(z).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Solves `A x = b` via `L Lᵀ`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let l = &self.lower;
        let mut y = b.to_vec();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| l[i * n + j] * y[j]).sum();
            y[i] = (y[i] - s) / l[i * n + i];
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| l[j * n + i] * y[j]).sum();
            y[i] = (y[i] - s) / l[i * n + i];
        }
        y
    }
}

/// The symmetric Toeplitz matrix `[acf[|i-j|]]` of order `n`, row-major.
pub fn toeplitz(acf: &[f64], n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = acf[i.abs_diff(j)];
        }
    }
    m
}

/// Coefficients `φ₁..φ_p` and innovation variance of the order-`p` linear
/// predictor for a stationary sequence with autocovariance `acf[0..=p]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Levinson {
    pub coeffs: Vec<f64>,
    pub innovation_var: f64,
}

/// Durbin–Levinson recursion. Fails with `SingularCovariance` when an
/// innovation variance collapses relative to `acf[0]`.
pub fn levinson(acf: &[f64], order: usize) -> Result<Levinson> {
    if acf.len() <= order {
        return Err(FouError::LengthMismatch {
            left: acf.len(),
            right: order + 1,
        });
    }
    let mut phi: Vec<f64> = Vec::with_capacity(order);
    let mut v = acf[0];
    if !(v > 0.0) {
        return Err(FouError::SingularCovariance { jitter: 0.0 });
    }
    for k in 1..=order {
        let num = acf[k] - phi.iter().enumerate().map(|(j, &p)| p * acf[k - 1 - j]).sum::<f64>();
        let refl = num / v;
        let prev = phi.clone();
        for j in 0..k - 1 {
            phi[j] = prev[j] - refl * prev[k - 2 - j];
        }
        phi.push(refl);
        v *= 1.0 - refl * refl;
        if !(v > 1e-14 * acf[0]) {
            return Err(FouError::SingularCovariance { jitter: 0.0 });
        }
    }
    Ok(Levinson {
        coeffs: phi,
        innovation_var: v,
    })
}

/// One-step conditional means `E(X_i | X_0..X_{i-1})` and conditional
/// variances for every `i` in `from..x.len()`, given the autocovariance on
/// the sampling grid.
///
/// Runs Durbin–Levinson for exact O(n²) work and falls back to jittered
/// dense Cholesky solves if the recursion loses positivity.
pub fn one_step_conditional(acf: &[f64], x: &[f64], from: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = x.len();
    if acf.len() < n {
        return Err(FouError::LengthMismatch {
            left: acf.len(),
            right: n,
        });
    }
    match levinson_sweep(acf, x, from) {
        Ok(r) => Ok(r),
        Err(_) => dense_sweep(acf, x, from),
    }
}

fn levinson_sweep(acf: &[f64], x: &[f64], from: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = x.len();
    let mut preds = Vec::with_capacity(n.saturating_sub(from));
    let mut vars = Vec::with_capacity(n.saturating_sub(from));
    let mut phi: Vec<f64> = Vec::with_capacity(n);
    let mut scratch: Vec<f64> = Vec::with_capacity(n);
    let mut v = acf[0];
    if !(v > 0.0) {
        return Err(FouError::SingularCovariance { jitter: 0.0 });
    }
    for i in 0..n {
        // phi holds the order-i predictor of X_i from X_{i-1}, ..., X_0
        if i >= from {
            let p: f64 = phi.iter().enumerate().map(|(j, &c)| c * x[i - 1 - j]).sum();
            preds.push(p);
            vars.push(v);
        }
        if i + 1 == n {
            break;
        }
        let k = i + 1;
        let num = acf[k] - phi.iter().enumerate().map(|(j, &c)| c * acf[k - 1 - j]).sum::<f64>();
        let refl = num / v;
        scratch.clear();
        scratch.extend_from_slice(&phi);
        for j in 0..k - 1 {
            phi[j] = scratch[j] - refl * scratch[k - 2 - j];
        }
        phi.push(refl);
        v *= 1.0 - refl * refl;
        if !(v > 1e-14 * acf[0]) {
            return Err(FouError::SingularCovariance { jitter: 0.0 });
        }
    }
    Ok((preds, vars))
}

fn dense_sweep(acf: &[f64], x: &[f64], from: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = x.len();
    let mut preds = Vec::new();
    let mut vars = Vec::new();
    for i in from..n {
        if i == 0 {
            preds.push(0.0);
            vars.push(acf[0]);
            continue;
        }
        let sigma = toeplitz(acf, i);
        let chol = Cholesky::with_jitter(&sigma, i).map_err(|e| match e {
            FouError::FactorizationFailure { jitter } => FouError::SingularCovariance { jitter },
            other => other,
        })?;
        // covariance of X_i with X_0..X_{i-1}
        let k: Vec<f64> = (0..i).map(|j| acf[i - j]).collect();
        let w = chol.solve(&k);
        preds.push(w.iter().zip(&x[..i]).map(|(a, b)| a * b).sum());
        vars.push(acf[0] - w.iter().zip(&k).map(|(a, b)| a * b).sum::<f64>());
    }
    Ok((preds, vars))
}

/// Weights of the one-step predictor of `X_n` from `X_0..X_{n-1}`, ordered
/// from the oldest observation to the most recent.
pub fn prediction_weights(acf: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let lv = levinson(acf, n)?;
    Ok(lv.coeffs.iter().rev().copied().collect())
}
