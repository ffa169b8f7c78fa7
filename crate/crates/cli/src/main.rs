mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fou_core::FouError;

#[derive(Parser)]
#[command(name = "fou", version, about = "Fractional iterated Ornstein-Uhlenbeck processes")]
struct Cli {
    /// Worker threads for restarts and Monte Carlo loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a path and write it as a one-column CSV.
    Simulate(SimulateArgs),
    /// Fit a FOU model to a series by autocovariance matching.
    Fit(FitArgs),
    /// Run the holdout protocol for FOU and AR/ARMA models.
    Evaluate(EvaluateArgs),
    /// Tabulate the spectral density of a model.
    Spectrum(SpectrumArgs),
    /// Tabulate the autocovariance of a model.
    Acf(AcfArgs),
}

/// A FOU model given by its rates, optional multiplicities, scale and Hurst index.
#[derive(Args, Clone)]
pub struct ModelArgs {
    /// Distinct decay rates, e.g. "1,2".
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    rates: Vec<f64>,
    /// Multiplicity of each rate, e.g. "2" turns rate 1 into a double rate.
    #[arg(long, value_delimiter = ',')]
    structure: Option<Vec<usize>>,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0.75)]
    hurst: f64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Exact,
    Operator,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 0.05)]
    dt: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// The series to work on: a CSV file or a bundled dataset.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// One numeric column, optional header.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    dataset: Option<Dataset>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Dataset {
    LakeHuron,
    SeriesA,
    /// Synthetic stand-in for the oxygen-saturation recording.
    Oxygen,
}

#[derive(Args)]
pub struct FitArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Multiplicity per rate, fastest first: "1,1" is FOU(l1,l2), "2" is FOU(l^(2)).
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    structure: Vec<usize>,
    /// Observation horizon T; observation i sits at time i*T/n.
    #[arg(long = "T", default_value_t = 20.0)]
    horizon: f64,
    /// Number of matched lags.
    #[arg(long = "h", default_value_t = 10)]
    lags: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    /// Remove a least-squares line before fitting.
    #[arg(long)]
    detrend: bool,
    /// Also match the variance.
    #[arg(long)]
    include_lag0: bool,
    /// Last lag written to the overlay table (default: h).
    #[arg(long)]
    max_lag: Option<usize>,
    /// Output directory for fit.json and acf_overlay.tsv; JSON to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Variant {
    Standard,
    PaperLiteral,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Scope {
    Full,
    Training,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Model to compare, repeatable: fou:1,1 | fou:2 | ar:P | arma:P,Q.
    #[arg(long = "model")]
    models: Vec<String>,
    /// Adds every ARMA(p,q) with p <= P, q <= Q (AR when q = 0), e.g. "2,1".
    #[arg(long, value_delimiter = ',', num_args = 1)]
    arma_grid: Option<Vec<usize>>,
    #[arg(long = "T", default_value_t = 20.0)]
    horizon: f64,
    #[arg(long = "h", default_value_t = 10)]
    lags: usize,
    /// Number of final observations predicted one step ahead.
    #[arg(long, default_value_t = 20)]
    holdout: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, value_enum, default_value_t = Variant::Standard)]
    variant: Variant,
    #[arg(long)]
    detrend: bool,
    #[arg(long)]
    include_lag0: bool,
    /// Fit on the full series or on the observations before the holdout.
    #[arg(long, value_enum, default_value_t = Scope::Full)]
    scope: Scope,
    /// Output directory for the report; the table goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Grid from -x-max to x-max.
    #[arg(long, default_value_t = 10.0)]
    x_max: f64,
    /// Number of grid points; odd counts include x = 0.
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AcfArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of lags after lag 0.
    #[arg(long, default_value_t = 100)]
    lags: usize,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(err: &FouError) -> u8 {
    match err {
        FouError::InvalidHurst(_)
        | FouError::Domain(_)
        | FouError::InvalidModel(_)
        | FouError::DegenerateLambdas { .. }
        | FouError::InvalidConfig(_) => 2,
        FouError::Parse { .. } | FouError::Io { .. } | FouError::DegenerateSeries | FouError::LengthMismatch { .. } => 3,
        FouError::FactorizationFailure { .. }
        | FouError::SingularCovariance { .. }
        | FouError::Quadrature { .. }
        | FouError::NoProgress => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(&a),
        Command::Fit(a) => commands::fit(&a),
        Command::Evaluate(a) => commands::evaluate(&a),
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Acf(a) => commands::acf(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
