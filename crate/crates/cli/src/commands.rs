use std::path::Path;

use fou_core::acf::AcfEvaluator;
use fou_core::datasets::{lake_huron, series_a, synthetic_oxygen, OXYGEN_NOTE};
use fou_core::io::{forecast_csv, read_series_csv, series_csv, to_json, write_text};
use fou_core::sampler::{sample_exact, sample_operator};
use fou_core::{
    empirical_acf, preprocess, EvalConfig, FitConfig, FitScope, FouError, FouModel, Hurst, ModelSpec, Rate,
    Result, WillmottVariant,
};

use crate::{AcfArgs, Dataset, EvaluateArgs, FitArgs, InputArgs, Method, ModelArgs, Scope, SimulateArgs, SpectrumArgs, Variant};

/// Seed of the bundled oxygen stand-in, fixed so every run sees the same series.
const OXYGEN_SEED: u64 = 2024;

fn build_model(a: &ModelArgs) -> Result<FouModel> {
    let multiplicities = match &a.structure {
        Some(s) if s.len() != a.rates.len() => {
            return Err(FouError::InvalidConfig(format!(
                "{} rates but {} multiplicities",
                a.rates.len(),
                s.len()
            )))
        }
        Some(s) => s.clone(),
        None => vec![1; a.rates.len()],
    };
    let rates = a
        .rates
        .iter()
        .zip(multiplicities)
        .map(|(&value, multiplicity)| Rate { value, multiplicity })
        .collect();
    FouModel::new(rates, a.sigma, Hurst::new(a.hurst)?)
}

fn load(input: &InputArgs) -> Result<(Vec<f64>, Option<String>)> {
    match (&input.input, input.dataset) {
        (Some(path), _) => Ok((read_series_csv(path)?, None)),
        (None, Some(Dataset::LakeHuron)) => Ok((lake_huron(), None)),
        (None, Some(Dataset::SeriesA)) => Ok((series_a()?, None)),
        (None, Some(Dataset::Oxygen)) => Ok((
            synthetic_oxygen(OXYGEN_SEED)?,
            Some(format!("{OXYGEN_NOTE} (seed {OXYGEN_SEED})")),
        )),
        (None, None) => Err(FouError::InvalidConfig("pass --input or --dataset".into())),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    let model = build_model(&a.model)?;
    let path = match a.method {
        Method::Exact => sample_exact(&model, a.n, a.dt, a.seed)?,
        Method::Operator => sample_operator(&model, a.n, a.dt, a.seed, None)?,
    };
    emit(a.out.as_deref(), &series_csv(&path.values))?;
    let g0 = AcfEvaluator::new(&model).acf(0.0)?;
    let line = format!("theoretical gamma(0) = {g0}");
    // keep stdout a clean CSV when the path itself goes there
    if a.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
    Ok(())
}

fn overlay_tsv(values: &[f64], model: &FouModel, horizon: f64, max_lag: usize) -> Result<String> {
    let n = values.len();
    if max_lag >= n {
        return Err(FouError::InvalidConfig(format!("max lag {max_lag} needs more than {n} observations")));
    }
    let empirical = empirical_acf(values, max_lag)?;
    let times: Vec<f64> = (0..=max_lag).map(|i| i as f64 * horizon / n as f64).collect();
    let fitted = AcfEvaluator::new(model).acf_many(&times)?;
    let mut s = String::from("lag_time\tempirical\tfitted\n");
    for i in 0..=max_lag {
        s.push_str(&format!("{}\t{}\t{}\n", times[i], empirical[i], fitted[i]));
    }
    Ok(s)
}

fn describe(model: &FouModel) -> String {
    let rates: Vec<String> = model
        .rates()
        .iter()
        .map(|r| {
            if r.multiplicity == 1 {
                format!("{:.6}", r.value)
            } else {
                format!("{:.6}^({})", r.value, r.multiplicity)
            }
        })
        .collect();
    format!(
        "lambda = [{}], sigma = {:.6}, H = {:.6}",
        rates.join(", "),
        model.sigma(),
        model.hurst().value()
    )
}

pub fn fit(a: &FitArgs) -> Result<()> {
    let (raw, _) = load(&a.input)?;
    let series = preprocess(&raw, a.detrend)?.with_horizon(a.horizon)?;
    let config = FitConfig {
        h_lags: a.lags,
        structure: a.structure.clone(),
        restarts: a.restarts,
        max_iters: a.max_iters,
        seed: a.seed,
        include_lag0: a.include_lag0,
        ..FitConfig::default()
    };
    let result = fou_core::fit(&series, &config)?;
    let json = to_json(&result)?;
    let overlay = overlay_tsv(&series.values, &result.model, a.horizon, a.max_lag.unwrap_or(a.lags))?;
    match &a.out {
        Some(dir) => {
            write_text(&dir.join("fit.json"), &json)?;
            write_text(&dir.join("acf_overlay.tsv"), &overlay)?;
            println!("{}", describe(&result.model));
            println!("objective = {:e}, converged = {}", result.objective, result.converged);
        }
        None => println!("{json}"),
    }
    Ok(())
}

fn collect_specs(a: &EvaluateArgs) -> Result<Vec<ModelSpec>> {
    let mut specs: Vec<ModelSpec> = a.models.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    if let Some(grid) = &a.arma_grid {
        let [pmax, qmax] = grid.as_slice() else {
            return Err(FouError::InvalidConfig("--arma-grid takes P,Q".into()));
        };
        for p in 0..=*pmax {
            for q in 0..=*qmax {
                let spec = match (p, q) {
                    (0, 0) => continue,
                    (p, 0) => ModelSpec::Ar { p },
                    (p, q) => ModelSpec::Arma { p, q },
                };
                if !specs.contains(&spec) {
                    specs.push(spec);
                }
            }
        }
    }
    if specs.is_empty() {
        return Err(FouError::InvalidConfig("pass at least one --model or --arma-grid".into()));
    }
    Ok(specs)
}

/// File-name form of a model spec, e.g. `arma_1_1`.
fn slug(spec: &ModelSpec) -> String {
    match spec {
        ModelSpec::Fou { structure } => {
            let parts: Vec<String> = structure.iter().map(|m| m.to_string()).collect();
            format!("fou_{}", parts.join("_"))
        }
        ModelSpec::Ar { p } => format!("ar_{p}"),
        ModelSpec::Arma { p, q } => format!("arma_{p}_{q}"),
    }
}

pub fn evaluate(a: &EvaluateArgs) -> Result<()> {
    let specs = collect_specs(a)?;
    let (raw, note) = load(&a.input)?;
    let config = EvalConfig {
        horizon_t: a.horizon,
        h_lags: a.lags,
        holdout: a.holdout,
        seed: a.seed,
        variant: match a.variant {
            Variant::Standard => WillmottVariant::Standard,
            Variant::PaperLiteral => WillmottVariant::PaperLiteral,
        },
        detrend: a.detrend,
        restarts: a.restarts,
        include_lag0: a.include_lag0,
        scope: match a.scope {
            Scope::Full => FitScope::FullSeries,
            Scope::Training => FitScope::TrainingOnly,
        },
        ..EvalConfig::default()
    };
    let mut ev = fou_core::evaluate(&raw, &specs, &config)?;
    if note.is_some() {
        ev.protocol.note = note;
    }
    let table = ev.report.to_tsv();
    match &a.out {
        Some(dir) => {
            write_text(&dir.join("table.tsv"), &table)?;
            write_text(&dir.join("rolling.tsv"), &ev.report.rolling_tsv())?;
            write_text(&dir.join("evaluation.json"), &to_json(&ev)?)?;
            for o in &ev.outcomes {
                let file = dir.join("predictions").join(format!("{}.csv", slug(&o.spec)));
                write_text(&file, &forecast_csv(&o.forecast))?;
            }
            print!("{table}");
        }
        None => print!("{table}"),
    }
    if let Some(n) = &ev.protocol.note {
        eprintln!("note: {n}");
    }
    Ok(())
}

pub fn spectrum(a: &SpectrumArgs) -> Result<()> {
    let model = build_model(&a.model)?;
    if a.points < 2 || !(a.x_max > 0.0) {
        return Err(FouError::InvalidConfig("need --points >= 2 and --x-max > 0".into()));
    }
    let half_step = a.x_max / (a.points - 1) as f64;
    let mut s = String::from("x\tdensity\tsingular\n");
    for i in 0..a.points {
        // an odd integer multiple of the half step, so the grid mirrors exactly about zero
        let x = (2 * i as i64 - (a.points as i64 - 1)) as f64 * half_step;
        let singular = x == 0.0 && model.singular_at_origin();
        let density = if singular { f64::INFINITY } else { model.spectral_density(x) };
        s.push_str(&format!("{x}\t{density}\t{}\n", u8::from(singular)));
    }
    emit(a.out.as_deref(), &s)
}

pub fn acf(a: &AcfArgs) -> Result<()> {
    let model = build_model(&a.model)?;
    let values = AcfEvaluator::new(&model).acf_grid(a.lags + 1, a.dt)?;
    let mut s = String::from("lag_time\tautocovariance\n");
    for (i, v) in values.iter().enumerate() {
        s.push_str(&format!("{}\t{v}\n", i as f64 * a.dt));
    }
    emit(a.out.as_deref(), &s)
}
