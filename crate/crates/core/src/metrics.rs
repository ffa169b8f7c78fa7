//! Prediction-quality metrics: RMSE, MAE, Willmott d and d₁, and their
//! curves over the last `m` pairs.

use serde::{Deserialize, Serialize};

use crate::error::{FouError, Result};

/// Which denominator the Willmott indices use.
///
/// * `Standard`: `Σ (|X̂ - X̄| + |X - X̄|)^k`, the usual index.
/// * `PaperLiteral`: `Σ (|X̂ - X̄| + |X̂ - X̄|)^k`, transcribed as printed in
///   the source tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WillmottVariant {
    #[default]
    Standard,
    PaperLiteral,
}

fn check(targets: &[f64], preds: &[f64]) -> Result<()> {
    if targets.len() != preds.len() {
        return Err(FouError::LengthMismatch {
            left: targets.len(),
            right: preds.len(),
        });
    }
    if targets.is_empty() {
        return Err(FouError::InvalidConfig("metrics need at least one pair".into()));
    }
    Ok(())
}

pub fn rmse(targets: &[f64], preds: &[f64]) -> Result<f64> {
    check(targets, preds)?;
    let s: f64 = targets.iter().zip(preds).map(|(x, p)| (x - p) * (x - p)).sum();
    Ok((s / targets.len() as f64).sqrt())
}

pub fn mae(targets: &[f64], preds: &[f64]) -> Result<f64> {
    check(targets, preds)?;
    let s: f64 = targets.iter().zip(preds).map(|(x, p)| (x - p).abs()).sum();
    Ok(s / targets.len() as f64)
}

fn willmott(targets: &[f64], preds: &[f64], variant: WillmottVariant, power: i32) -> Result<f64> {
    check(targets, preds)?;
    let mean = targets.iter().sum::<f64>() / targets.len() as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &p) in targets.iter().zip(preds) {
        num += (x - p).abs().powi(power);
        let spread = match variant {
            WillmottVariant::Standard => (p - mean).abs() + (x - mean).abs(),
            WillmottVariant::PaperLiteral => 2.0 * (p - mean).abs(),
        };
        den += spread.powi(power);
    }
    if den == 0.0 {
        // all terms vanish only for perfect predictions of a constant target
        return Ok(if num == 0.0 { 1.0 } else { f64::NEG_INFINITY });
    }
    Ok(1.0 - num / den)
}

/// `d = 1 - Σ (X - X̂)² / Σ (spread)²` with `X̄` the mean of the targets.
pub fn willmott_d(targets: &[f64], preds: &[f64], variant: WillmottVariant) -> Result<f64> {
    willmott(targets, preds, variant, 2)
}

/// `d₁ = 1 - Σ |X - X̂| / Σ spread`.
pub fn willmott_d1(targets: &[f64], preds: &[f64], variant: WillmottVariant) -> Result<f64> {
    willmott(targets, preds, variant, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub d: f64,
    pub rmse: f64,
    pub d1: f64,
    pub mae: f64,
}

pub fn metric_row(targets: &[f64], preds: &[f64], variant: WillmottVariant) -> Result<MetricRow> {
    Ok(MetricRow {
        d: willmott_d(targets, preds, variant)?,
        rmse: rmse(targets, preds)?,
        d1: willmott_d1(targets, preds, variant)?,
        mae: mae(targets, preds)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RollingPoint {
    pub m: usize,
    #[serde(flatten)]
    pub metrics: MetricRow,
}

/// Metrics on the last `m` pairs for `m = 1..=m_max`.
pub fn rolling_curves(
    targets: &[f64],
    preds: &[f64],
    m_max: usize,
    variant: WillmottVariant,
) -> Result<Vec<RollingPoint>> {
    check(targets, preds)?;
    let n = targets.len();
    if m_max == 0 || m_max > n {
        return Err(FouError::InvalidConfig(format!("m_max = {m_max} must be in 1..={n}")));
    }
    (1..=m_max)
        .map(|m| {
            Ok(RollingPoint {
                m,
                metrics: metric_row(&targets[n - m..], &preds[n - m..], variant)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub label: String,
    #[serde(flatten)]
    pub metrics: MetricRow,
    pub rolling: Vec<RollingPoint>,
}

/// Per-model metrics over a common holdout, in table order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub m_max: usize,
    pub variant: WillmottVariant,
    pub per_model: Vec<ModelReport>,
}

impl EvalReport {
    pub fn new(m_max: usize, variant: WillmottVariant) -> Self {
        Self {
            m_max,
            variant,
            per_model: Vec::new(),
        }
    }

    pub fn push(&mut self, label: &str, targets: &[f64], preds: &[f64]) -> Result<()> {
        self.per_model.push(ModelReport {
            label: label.to_string(),
            metrics: metric_row(targets, preds, self.variant)?,
            rolling: rolling_curves(targets, preds, self.m_max, self.variant)?,
        });
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&ModelReport> {
        self.per_model.iter().find(|r| r.label == label)
    }

    /// `Model d RMSE d1 MAE`, tab separated, four decimals.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("Model\td\tRMSE\td1\tMAE\n");
        for r in &self.per_model {
            let m = &r.metrics;
            s.push_str(&format!("{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n", r.label, m.d, m.rmse, m.d1, m.mae));
        }
        s
    }

    /// `model m d RMSE d1 MAE` for every rolling point.
    pub fn rolling_tsv(&self) -> String {
        let mut s = String::from("model\tm\td\tRMSE\td1\tMAE\n");
        for r in &self.per_model {
            for p in &r.rolling {
                let m = &p.metrics;
                s.push_str(&format!(
                    "{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\n",
                    r.label, p.m, m.d, m.rmse, m.d1, m.mae
                ));
            }
        }
        s
    }
}
