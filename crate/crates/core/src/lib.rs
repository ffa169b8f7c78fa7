//! Fractional Ornstein–Uhlenbeck (FOU) processes of order `p`: special
//! functions, covariance evaluation, exact and operator sampling, lag-matching
//! estimation, one-step prediction, AR/ARMA baselines and forecast metrics.
//!
//! ```
//! use fou_core::{acf, FouModel, Hurst};
//!
//! let model = FouModel::distinct(&[1.0, 0.5], 1.0, Hurst::new(0.7).unwrap()).unwrap();
//! let v0 = acf(&model, 0.0).unwrap();
//! let v1 = acf(&model, 1.0).unwrap();
//! assert!(v0 > v1 && v1 > 0.0);
//! ```

pub mod acf;
pub mod baselines;
pub mod datasets;
pub mod error;
pub mod estimator;
pub mod evaluate;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod optim;
pub mod predictor;
pub mod quad;
pub mod sampler;
pub mod series;
pub mod specfun;

pub use acf::{acf, cross_cov, AcfBackend, AcfEvaluator};
pub use baselines::{arma_one_step, fit_ar_yule_walker, fit_arma_css, ArmaModel};
pub use error::{FouError, Result};
pub use estimator::{fit, FitConfig, FitResult};
pub use evaluate::{evaluate, EvalConfig, Evaluation, FitScope, ModelSpec};
pub use metrics::{EvalReport, MetricRow, WillmottVariant};
pub use model::{k_coefficients, FouModel, MemoryClass, Rate};
pub use predictor::{one_step_predictions, ForecastModel, ForecastResult};
pub use series::{empirical_acf, preprocess, SeriesSample};
pub use specfun::{Hurst, SpecfunConfig};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/processes.md")]
    pub struct Processes;
    #[doc = include_str!("../../../book/src/covariance.md")]
    pub struct Covariance;
    #[doc = include_str!("../../../book/src/spectral.md")]
    pub struct Spectral;
    #[doc = include_str!("../../../book/src/simulation.md")]
    pub struct Simulation;
    #[doc = include_str!("../../../book/src/estimation.md")]
    pub struct Estimation;
    #[doc = include_str!("../../../book/src/prediction.md")]
    pub struct Prediction;
    #[doc = include_str!("../../../book/src/evaluation.md")]
    pub struct Evaluation;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
