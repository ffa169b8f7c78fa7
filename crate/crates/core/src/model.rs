//! FOU(p) model parameters, composition weights and the spectral density.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};
use crate::specfun::{gamma, Hurst};

/// Relative gap below which two decay rates are treated as coincident by the
/// closed-form covariance.
pub const DISTINCTNESS_GUARD: f64 = 1e-4;

/// One decay rate and the number of OU operators sharing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rate {
    pub value: f64,
    pub multiplicity: usize,
}

/// `FOU(λ₁^{(p₁)}, …, λ_q^{(p_q)}, σ, H)`: `p = Σ pᵢ` OU operators applied
/// to `σ B_H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct FouModel {
    rates: Vec<Rate>,
    sigma: f64,
    hurst: Hurst,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    lambdas: Vec<f64>,
    multiplicities: Vec<usize>,
    sigma: f64,
    hurst: f64,
}

impl TryFrom<ModelRepr> for FouModel {
    type Error = FouError;
    fn try_from(r: ModelRepr) -> Result<Self> {
        if r.lambdas.len() != r.multiplicities.len() {
            return Err(FouError::LengthMismatch {
                left: r.lambdas.len(),
                right: r.multiplicities.len(),
            });
        }
        let rates = r
            .lambdas
            .iter()
            .zip(&r.multiplicities)
            .map(|(&value, &multiplicity)| Rate { value, multiplicity })
            .collect();
        FouModel::new(rates, r.sigma, Hurst::new(r.hurst)?)
    }
}

impl From<FouModel> for ModelRepr {
    fn from(m: FouModel) -> Self {
        ModelRepr {
            lambdas: m.rates.iter().map(|r| r.value).collect(),
            multiplicities: m.rates.iter().map(|r| r.multiplicity).collect(),
            sigma: m.sigma,
            hurst: m.hurst.value(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MemoryClass {
    LongMemory,
    ShortMemory,
}

impl FouModel {
    pub fn new(rates: Vec<Rate>, sigma: f64, hurst: Hurst) -> Result<Self> {
        if rates.is_empty() {
            return Err(FouError::InvalidModel("at least one decay rate is required".into()));
        }
        for r in &rates {
            if !(r.value > 0.0) || !r.value.is_finite() {
                return Err(FouError::InvalidModel(format!("decay rate {} must be positive", r.value)));
            }
            if r.multiplicity == 0 {
                return Err(FouError::InvalidModel(format!("rate {} has multiplicity 0", r.value)));
            }
        }
        for i in 0..rates.len() {
            for j in 0..i {
                if rates[i].value == rates[j].value {
                    return Err(FouError::InvalidModel(format!(
                        "rate {} listed twice; use a multiplicity instead",
                        rates[i].value
                    )));
                }
            }
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(FouError::InvalidModel(format!("sigma {sigma} must be positive")));
        }
        Ok(Self { rates, sigma, hurst })
    }

    /// A model whose rates all have multiplicity one.
    pub fn distinct(lambdas: &[f64], sigma: f64, hurst: Hurst) -> Result<Self> {
        let rates = lambdas
            .iter()
            .map(|&value| Rate { value, multiplicity: 1 })
            .collect();
        Self::new(rates, sigma, hurst)
    }

    /// The single-operator process `FOU(λ, σ, H)`.
    pub fn ou(lambda: f64, sigma: f64, hurst: Hurst) -> Result<Self> {
        Self::distinct(&[lambda], sigma, hurst)
    }

    pub fn rates(&self) -> &[Rate] {
        &self.rates
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn hurst(&self) -> Hurst {
        self.hurst
    }

    /// Total number of OU operators `p`.
    pub fn order(&self) -> usize {
        self.rates.iter().map(|r| r.multiplicity).sum()
    }

    /// Every rate repeated according to its multiplicity.
    pub fn expanded_rates(&self) -> Vec<f64> {
        self.rates
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    pub fn all_simple(&self) -> bool {
        self.rates.iter().all(|r| r.multiplicity == 1)
    }

    pub fn max_rate(&self) -> f64 {
        self.rates.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn min_rate(&self) -> f64 {
        self.rates.iter().map(|r| r.value).fold(f64::INFINITY, f64::min)
    }

    /// Smallest relative gap `|λᵢ - λⱼ| / max(λᵢ, λⱼ)`, or `∞` for one rate.
    pub fn min_relative_gap(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for i in 0..self.rates.len() {
            for j in 0..i {
                let (a, b) = (self.rates[i].value, self.rates[j].value);
                gap = gap.min((a - b).abs() / a.max(b));
            }
        }
        gap
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.rates.clone(), sigma, self.hurst)
    }

    pub fn memory_class(&self) -> MemoryClass {
        if self.order() == 1 && self.hurst.value() > 0.5 {
            MemoryClass::LongMemory
        } else {
            MemoryClass::ShortMemory
        }
    }

    /// Whether the spectral density blows up at frequency zero.
    pub fn singular_at_origin(&self) -> bool {
        self.order() == 1 && self.hurst.value() > 0.5
    }

    /// `σ² Γ(2H+1) sin(Hπ) |x|^{2p-1-2H} / (2π Π (λᵢ² + x²)^{pᵢ})`.
    ///
    /// Returns `f64::INFINITY` at `x = 0` when [`Self::singular_at_origin`].
    pub fn spectral_density(&self, x: f64) -> f64 {
        let x = x.abs();
        self.spectral_prefactor() * x.powf(self.spectral_exponent()) * self.spectral_rational(x)
    }

    pub(crate) fn spectral_prefactor(&self) -> f64 {
        let h = self.hurst.value();
        self.sigma * self.sigma * gamma(2.0 * h + 1.0) * (h * PI).sin() / (2.0 * PI)
    }

    pub(crate) fn spectral_exponent(&self) -> f64 {
        2.0 * self.order() as f64 - 1.0 - 2.0 * self.hurst.value()
    }

    /// `1 / Π (λᵢ² + x²)^{pᵢ}`, the smooth factor of the density.
    pub(crate) fn spectral_rational(&self, x: f64) -> f64 {
        let x2 = x * x;
        let mut denom = 1.0;
        for r in &self.rates {
            denom *= (r.value * r.value + x2).powi(r.multiplicity as i32);
        }
        1.0 / denom
    }
}

impl fmt::Display for FouModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FOU(")?;
        for r in &self.rates {
            if r.multiplicity == 1 {
                write!(f, "{}, ", r.value)?;
            } else {
                write!(f, "{}^({}), ", r.value, r.multiplicity)?;
            }
        }
        write!(f, "sigma={}, H={})", self.sigma, self.hurst.value())
    }
}

fn check_distinct(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() {
        return Err(FouError::InvalidModel("empty rate list".into()));
    }
    for &l in lambdas {
        if !(l > 0.0) {
            return Err(FouError::Domain(format!("decay rate {l} must be positive")));
        }
    }
    for i in 0..lambdas.len() {
        for j in 0..i {
            let (a, b) = (lambdas[i], lambdas[j]);
            if (a - b).abs() < DISTINCTNESS_GUARD * a.max(b) {
                return Err(FouError::DegenerateLambdas { a, b });
            }
        }
    }
    Ok(())
}

/// Composition weights `Kᵢ = 1 / Π_{j≠i} (1 - λⱼ/λᵢ)`, so that
/// `T_{λ₁} ∘ … ∘ T_{λ_p} = Σ Kᵢ T_{λᵢ}` for pairwise distinct rates.
pub fn k_coefficients(lambdas: &[f64]) -> Result<Vec<f64>> {
    check_distinct(lambdas)?;
    Ok(lambdas
        .iter()
        .enumerate()
        .map(|(i, &li)| {
            let prod: f64 = lambdas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &lj)| 1.0 - lj / li)
                .product();
            1.0 / prod
        })
        .collect())
}

/// The three partial-fraction identities underlying the covariance and
/// spectral formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Identity {
    /// `Kᵢ + 2λᵢ Σ_{j≠i} Kⱼ/(λᵢ+λⱼ) = λᵢ^{p-1} / Π_{j≠i}(λᵢ+λⱼ)` for a
    /// zero-based index `i`.
    CompositionWeights { index: usize },
    /// `x^{2p-2} / Π(x² - λᵢ²) = Σ λᵢ^{2p-2} / (Π_{j≠i}(λᵢ²-λⱼ²) (x² - λᵢ²))`.
    DifferenceOfSquares,
    /// `x^{2p-2} / Π(λᵢ² + x²) = Σ λᵢ^{2p-2} / (Π_{j≠i}(λᵢ²-λⱼ²) (λᵢ² + x²))`.
    SumOfSquares,
}

/// Evaluates both sides of `identity`; `x` is ignored for
/// [`Identity::CompositionWeights`].
pub fn partial_fraction_check(lambdas: &[f64], x: f64, identity: Identity) -> Result<(f64, f64)> {
    check_distinct(lambdas)?;
    let p = lambdas.len();
    let sq_weights = |i: usize| -> f64 {
        let li = lambdas[i];
        let prod: f64 = (0..p)
            .filter(|&j| j != i)
            .map(|j| li * li - lambdas[j] * lambdas[j])
            .product();
        li.powi(2 * p as i32 - 2) / prod
    };
    match identity {
        Identity::CompositionWeights { index } => {
            if index >= p {
                return Err(FouError::Domain(format!("index {index} out of range for {p} rates")));
            }
            let k = k_coefficients(lambdas)?;
            let li = lambdas[index];
            let cross: f64 = (0..p)
                .filter(|&j| j != index)
                .map(|j| k[j] / (li + lambdas[j]))
                .sum();
            let lhs = k[index] + 2.0 * li * cross;
            let denom: f64 = (0..p).filter(|&j| j != index).map(|j| li + lambdas[j]).product();
            Ok((lhs, li.powi(p as i32 - 1) / denom))
        }
        Identity::DifferenceOfSquares => {
            let x2 = x * x;
            let lhs = x.powi(2 * p as i32 - 2) / lambdas.iter().map(|l| x2 - l * l).product::<f64>();
            let rhs = (0..p).map(|i| sq_weights(i) / (x2 - lambdas[i] * lambdas[i])).sum();
            Ok((lhs, rhs))
        }
        Identity::SumOfSquares => {
            let x2 = x * x;
            let lhs = x.powi(2 * p as i32 - 2) / lambdas.iter().map(|l| l * l + x2).product::<f64>();
            let rhs = (0..p).map(|i| sq_weights(i) / (lambdas[i] * lambdas[i] + x2)).sum();
            Ok((lhs, rhs))
        }
    }
}
