//! The special functions behind every FOU covariance.
//!
//! With `a = 2H`:
//!
//! * `f_h1(x) = e^{-x} (Γ(a) - ∫₀ˣ e^{s} s^{a-1} ds)`
//! * `f_h2(x) = e^{x} (Γ(a) - ∫₀ˣ e^{-s} s^{a-1} ds) = e^{x} Γ(a, x)`
//! * `f_h(x) = f_h1(x) + f_h2(x)`
//!
//! For `H > 1/2` the two halves grow like `∓x^{a-1}` while their sum decays
//! like `2(a-1) x^{a-2}`, so `f_h` switches to its asymptotic series once the
//! argument passes [`SpecfunConfig::asymptotic_crossover`].
//!
//! Note on signs: `f_h1` is eventually negative and `f_h2` positive.

use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};
use crate::quad::{integrate, QuadOptions};

/// A Hurst exponent in `[1/2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Hurst(f64);

impl Hurst {
    pub fn new(value: f64) -> Result<Self> {
        if (0.5..1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(FouError::InvalidHurst(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `2H`, the shape parameter of the incomplete gamma integrals.
    pub(crate) fn shape(self) -> f64 {
        2.0 * self.0
    }

    /// The classical Brownian case, handled by closed forms.
    pub fn is_brownian(self) -> bool {
        self.0 == 0.5
    }
}

impl TryFrom<f64> for Hurst {
    type Error = FouError;
    fn try_from(value: f64) -> Result<Self> {
        Hurst::new(value)
    }
}

impl From<Hurst> for f64 {
    fn from(h: Hurst) -> f64 {
        h.0
    }
}

/// Relative agreement required between the exact and asymptotic branches of
/// `f_h` at the crossover point.
pub const CROSSOVER_AGREEMENT: f64 = 1e-8;

/// Numerical knobs for the special functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecfunConfig {
    pub quad_rel_tol: f64,
    pub asymptotic_crossover: f64,
    pub asymptotic_terms: usize,
}

impl Default for SpecfunConfig {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-10,
            asymptotic_crossover: 30.0,
            asymptotic_terms: 4,
        }
    }
}

pub(crate) const DEFAULT_CONFIG: SpecfunConfig = SpecfunConfig {
    quad_rel_tol: 1e-10,
    asymptotic_crossover: 30.0,
    asymptotic_terms: 4,
};

impl SpecfunConfig {
    /// Builds a configuration and verifies that both `f_h` branches agree to
    /// [`CROSSOVER_AGREEMENT`] at the crossover for `H ∈ [0.55, 0.95]`.
    pub fn new(quad_rel_tol: f64, asymptotic_crossover: f64, asymptotic_terms: usize) -> Result<Self> {
        if !(quad_rel_tol > 0.0) || !(asymptotic_crossover > 0.0) || asymptotic_terms < 1 {
            return Err(FouError::InvalidConfig(format!(
                "quad_rel_tol={quad_rel_tol}, asymptotic_crossover={asymptotic_crossover}, asymptotic_terms={asymptotic_terms}"
            )));
        }
        let cfg = Self {
            quad_rel_tol,
            asymptotic_crossover,
            asymptotic_terms,
        };
        let worst = cfg.crossover_mismatch();
        if worst > CROSSOVER_AGREEMENT {
            return Err(FouError::InvalidConfig(format!(
                "f_h branches disagree by {worst:e} at x = {asymptotic_crossover}"
            )));
        }
        Ok(cfg)
    }

    /// Worst relative gap between the exact and asymptotic `f_h` branches at
    /// the crossover over a grid of Hurst values.
    pub fn crossover_mismatch(&self) -> f64 {
        let x = self.asymptotic_crossover;
        [0.55, 0.65, 0.75, 0.85, 0.95]
            .iter()
            .map(|&h| {
                let h = Hurst(h);
                let exact = self.f_h_exact(x, h);
                let asym = self.f_h_asymptotic(x, h);
                ((exact - asym) / asym).abs()
            })
            .fold(0.0, f64::max)
    }

    fn opts(&self) -> QuadOptions {
        QuadOptions::rel(self.quad_rel_tol)
    }

    /// `e^{-x} ∫₀ˣ e^{s} s^{a-1} ds`, written as
    /// `(x^a / a) ∫₀¹ exp(-x (1 - v^{1/a})) dv` after `s = x v^{1/a}`.
    /// The substitution absorbs the `(x - u)^{a-1}` endpoint behaviour of the
    /// equivalent form `∫₀ˣ e^{-u} (x - u)^{a-1} du`.
    fn lower_kernel(&self, x: f64, a: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let inv_a = 1.0 / a;
        // beyond 1 - v^{1/a} = 50/x the integrand is below e^{-50}
        let v0 = if x > 50.0 { (1.0 - 50.0 / x).powf(a) } else { 0.0 };
        let g = |v: f64| (x * (v.ln() * inv_a).exp_m1()).exp();
        let r = integrate(g, v0, 1.0, &self.opts());
        x.powf(a) / a * r.value
    }

    pub fn f_h1(&self, x: f64, h: Hurst) -> Result<f64> {
        check_arg(x)?;
        if h.is_brownian() {
            return Ok(2.0 * (-x).exp() - 1.0);
        }
        let a = h.shape();
        Ok((-x).exp() * gamma(a) - self.lower_kernel(x, a))
    }

    pub fn f_h2(&self, x: f64, h: Hurst) -> Result<f64> {
        check_arg(x)?;
        if h.is_brownian() {
            return Ok(1.0);
        }
        Ok(upper_gamma_scaled(h.shape(), x))
    }

    pub fn f_h(&self, x: f64, h: Hurst) -> Result<f64> {
        check_arg(x)?;
        if h.is_brownian() {
            return Ok(2.0 * (-x).exp());
        }
        if x >= self.asymptotic_crossover {
            Ok(self.f_h_asymptotic(x, h))
        } else {
            Ok(self.f_h_exact(x, h))
        }
    }

    fn f_h_exact(&self, x: f64, h: Hurst) -> f64 {
        let a = h.shape();
        (-x).exp() * gamma(a) - self.lower_kernel(x, a) + upper_gamma_scaled(a, x)
    }

    /// `e^{-x} Γ(a) + 2(a-1) x^{a-2} (1 + Σ_m c_m x^{-2m})` with
    /// `c_m = Π_{j=2}^{2m+1} (j - a)`.
    fn f_h_asymptotic(&self, x: f64, h: Hurst) -> f64 {
        let a = h.shape();
        let inv_x2 = 1.0 / (x * x);
        let mut coeff = 1.0;
        let mut pow = 1.0;
        let mut series = 1.0;
        for m in 1..=self.asymptotic_terms {
            let j = (2 * m) as f64;
            coeff *= (j - a) * (j + 1.0 - a);
            pow *= inv_x2;
            series += coeff * pow;
        }
        (-x).exp() * gamma(a) + 2.0 * (a - 1.0) * x.powf(a - 2.0) * series
    }

    /// `α^{1-2H} f_h1(α x) + β^{1-2H} f_h2(β x)`.
    pub fn mixed_decay(&self, alpha: f64, beta: f64, x: f64, h: Hurst) -> Result<f64> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(FouError::Domain(format!(
                "mixed_decay needs positive rates, got alpha={alpha}, beta={beta}"
            )));
        }
        check_arg(x)?;
        if h.is_brownian() {
            return Ok(2.0 * (-alpha * x).exp());
        }
        let a = h.shape();
        if alpha == beta {
            return Ok(alpha.powf(1.0 - a) * self.f_h(alpha * x, h)?);
        }
        if alpha.min(beta) * x >= self.asymptotic_crossover {
            // Σ_{k ≥ 1} (1-a)_k [(-β)^{-k} - α^{-k}] x^{a-1-k}
            let terms = 2 * self.asymptotic_terms + 1;
            let mut rising = 1.0;
            let mut sum = 0.0;
            let (mut ib, mut ia, mut ix) = (1.0, 1.0, 1.0);
            for k in 1..=terms {
                rising *= k as f64 - a;
                ib *= -1.0 / beta;
                ia *= 1.0 / alpha;
                ix /= x;
                sum += rising * (ib - ia) * ix;
            }
            let lead = (-alpha * x).exp() * alpha.powf(1.0 - a) * gamma(a);
            return Ok(lead + x.powf(a - 1.0) * sum);
        }
        let first = (-alpha * x).exp() * gamma(a) - self.lower_kernel(alpha * x, a);
        let second = upper_gamma_scaled(a, beta * x);
        Ok(alpha.powf(1.0 - a) * first + beta.powf(1.0 - a) * second)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(FouError::Domain(format!("argument must be non-negative, got {x}")))
    }
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `e^{x} Γ(a, x)` without overflow: series below `x = a + 1`, Lentz's
/// continued fraction above.
pub fn upper_gamma_scaled(a: f64, x: f64) -> f64 {
    if x < a + 1.0 {
        // Γ(a, x) = Γ(a) - e^{-x} x^a Σ x^n / (a (a+1) ... (a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        for n in 1..500 {
            term *= x / (a + n as f64);
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        x.exp() * gamma(a) - x.powf(a) * sum
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        x.powf(a) * h
    }
}

pub fn f_h1(x: f64, h: Hurst) -> Result<f64> {
    DEFAULT_CONFIG.f_h1(x, h)
}

pub fn f_h2(x: f64, h: Hurst) -> Result<f64> {
    DEFAULT_CONFIG.f_h2(x, h)
}

pub fn f_h(x: f64, h: Hurst) -> Result<f64> {
    DEFAULT_CONFIG.f_h(x, h)
}

pub fn mixed_decay(alpha: f64, beta: f64, x: f64, h: Hurst) -> Result<f64> {
    DEFAULT_CONFIG.mixed_decay(alpha, beta, x, h)
}
