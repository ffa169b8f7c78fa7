//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into `fou_core` numerics: the gamma function, the
//! double-exponential quadrature rules and the covariance double integral
//! are written from scratch so that agreement with the library means
//! something.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

/// Lanczos approximation (g = 7, nine coefficients), good to ~1e-15.
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Nodes of a double-exponential rule: `(position, weight)` pairs.
struct DeRule {
    nodes: Vec<(f64, f64)>,
}

const STEP: f64 = 1.0 / 32.0;
const HALF_WIDTH: f64 = 5.0;

/// tanh-sinh on `[0, len]`. The integrand receives the distances to the
/// left and right endpoints, both computed without cancellation, so
/// endpoint singularities are resolved to full precision.
pub fn tanh_sinh<F: Fn(f64, f64) -> f64>(len: f64, f: F) -> f64 {
    let k_max = (HALF_WIDTH / STEP) as i64;
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        let s = k as f64 * STEP;
        let u = FRAC_PI_2 * s.sinh();
        if u.abs() > 300.0 {
            continue;
        }
        let left = len / (1.0 + (-2.0 * u).exp());
        let right = len / (1.0 + (2.0 * u).exp());
        if left == 0.0 || right == 0.0 {
            continue;
        }
        let w = STEP * len * 0.5 * FRAC_PI_2 * s.cosh() / (u.cosh() * u.cosh());
        sum += w * f(left, right);
    }
    sum
}

/// exp-sinh on `[0, ∞)`; the integrand receives the distance from 0.
pub fn exp_sinh<F: Fn(f64) -> f64>(f: F) -> f64 {
    let k_max = (HALF_WIDTH / STEP) as i64;
    let mut sum = 0.0;
    for k in -k_max..=k_max {
        let s = k as f64 * STEP;
        let e = FRAC_PI_2 * s.sinh();
        if e.abs() > 700.0 {
            continue;
        }
        let v = e.exp();
        let w = STEP * v * FRAC_PI_2 * s.cosh();
        let y = f(v);
        if y != 0.0 {
            sum += w * y;
        }
    }
    sum
}

/// `∫₀^∞ e^{-μv} v^j |v - c|^{2H-2} dv`, split at the singular point.
fn inner(mu: f64, j: i32, c: f64, h: f64) -> f64 {
    let e = 2.0 * h - 2.0;
    if c <= 0.0 {
        let c = -c;
        return exp_sinh(|v| (-mu * v).exp() * v.powi(j) * (v + c).powf(e));
    }
    let below = tanh_sinh(c, |v, dist| (-mu * v).exp() * v.powi(j) * dist.powf(e));
    let above = exp_sinh(|d| (-mu * (c + d)).exp() * (c + d).powi(j) * d.powf(e));
    below + above
}

fn factorial(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Covariance of `T_λ^{(j)}(σB_H)(t)` and `T_{λ'}^{(j')}(σB_H)(0)`, by
/// direct quadrature of the double integral
/// `σ²H(2H-1)(-1)^{j+j'} λ^j λ'^{j'} / (j! j'!)
///   ∫₀^∞∫₀^∞ e^{-λw} w^j e^{-λ'v} v^{j'} |v + t - w|^{2H-2} dv dw`.
pub fn operator_cross_cov(lambda: f64, lambda_p: f64, j: i32, jp: i32, sigma: f64, h: f64, t: f64) -> f64 {
    let outer = |w: f64| (-lambda * w).exp() * w.powi(j) * inner(lambda_p, jp, w - t, h);
    let t = t.abs();
    let integral = if t > 0.0 {
        tanh_sinh(t, |w, _| outer(w)) + exp_sinh(|d| outer(t + d))
    } else {
        exp_sinh(outer)
    };
    let sign = if (j + jp) % 2 == 0 { 1.0 } else { -1.0 };
    sigma * sigma * h * (2.0 * h - 1.0) * sign * lambda.powi(j) * lambda_p.powi(jp) / (factorial(j) * factorial(jp))
        * integral
}

fn binomial(n: i32, k: i32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Oracle covariance of an FOU process given as `(rate, multiplicity)`
/// pairs. Supported shapes: pairwise distinct simple rates, or one rate
/// of any multiplicity.
pub fn fou_cov_oracle(rates: &[(f64, i32)], sigma: f64, h: f64, t: f64) -> f64 {
    match rates {
        [(lambda, p)] => {
            let mut s = 0.0;
            for j in 0..*p {
                for jp in 0..*p {
                    s += binomial(p - 1, j)
                        * binomial(p - 1, jp)
                        * operator_cross_cov(*lambda, *lambda, j, jp, sigma, h, t);
                }
            }
            s
        }
        _ => {
            assert!(rates.iter().all(|r| r.1 == 1), "oracle supports distinct simple rates or one repeated rate");
            let lambdas: Vec<f64> = rates.iter().map(|r| r.0).collect();
            let k = composition_weights(&lambdas);
            let mut s = 0.0;
            for (i, &li) in lambdas.iter().enumerate() {
                for (ip, &lip) in lambdas.iter().enumerate() {
                    s += k[i] * k[ip] * operator_cross_cov(li, lip, 0, 0, sigma, h, t);
                }
            }
            s
        }
    }
}

/// `Kᵢ = Π_{j≠i} λᵢ / (λᵢ - λⱼ)`.
pub fn composition_weights(lambdas: &[f64]) -> Vec<f64> {
    (0..lambdas.len())
        .map(|i| {
            (0..lambdas.len())
                .filter(|&j| j != i)
                .map(|j| lambdas[i] / (lambdas[i] - lambdas[j]))
                .product()
        })
        .collect()
}

/// Known-mean (zero) autocovariance with the unbiased `n - k` divisor.
pub fn known_mean_acf(x: &[f64], max_lag: usize) -> Vec<f64> {
    let n = x.len();
    (0..=max_lag)
        .map(|k| x[..n - k].iter().zip(&x[k..]).map(|(a, b)| a * b).sum::<f64>() / (n - k) as f64)
        .collect()
}

/// Mean and standard error of the mean.
pub fn mean_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Textbook metric definitions used to recompute reported tables.
pub mod metrics {
    pub fn rmse(x: &[f64], p: &[f64]) -> f64 {
        (x.iter().zip(p).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / x.len() as f64).sqrt()
    }

    pub fn mae(x: &[f64], p: &[f64]) -> f64 {
        x.iter().zip(p).map(|(a, b)| (a - b).abs()).sum::<f64>() / x.len() as f64
    }

    pub fn willmott(x: &[f64], p: &[f64], power: i32) -> f64 {
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let num: f64 = x.iter().zip(p).map(|(a, b)| (a - b).abs().powi(power)).sum();
        let den: f64 = x
            .iter()
            .zip(p)
            .map(|(a, b)| ((b - mean).abs() + (a - mean).abs()).powi(power))
            .sum();
        1.0 - num / den
    }
}
