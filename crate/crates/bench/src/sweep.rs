//! Parallel sweeps over the loss and cat-size grids.

use rayon::prelude::*;

use cwoverlap::cat::{cat_codeword_overlap, cat_concurrence, CatCode};
use cwoverlap::gaussian::{verify_nogo_with, NogoReport};
use cwoverlap::measures::{codeword_overlap, safeguarded_concurrence};
use cwoverlap::CodeId;

use crate::config::{Experiment, SweepConfig};
use crate::error::{config_err, BenchError, Result};

/// Environment variable holding the worker count; unset means one per core.
pub const WORKERS_ENV: &str = "CWOVERLAP_WORKERS";

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub parameter: f64,
    pub code: String,
    pub f_cw: f64,
    pub concurrence: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub experiment: Experiment,
    pub rows: Vec<Row>,
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    /// Distinct code labels in row order.
    pub fn codes(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for r in &self.rows {
            if !seen.contains(&r.code.as_str()) {
                seen.push(&r.code);
            }
        }
        seen
    }

    pub fn series<'a>(&'a self, code: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.code == code)
    }

    /// Rows whose values are not finite numbers in `[0, 1]`.
    pub fn invalid_rows(&self) -> Vec<&Row> {
        let ok = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        self.rows.iter().filter(|r| !ok(r.f_cw) || !ok(r.concurrence)).collect()
    }
}

/// A pool sized by [`WORKERS_ENV`].
pub fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v.trim().parse().map_err(|_| config_err(format!("{WORKERS_ENV}=`{v}` is not a count")))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}

fn metadata(config: &SweepConfig) -> Vec<(String, String)> {
    let mut meta = vec![
        ("tool".to_string(), env!("CARGO_PKG_NAME").to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ];
    meta.extend(config.echo());
    meta
}

/// Evaluates `f` on every `(parameter, code)` pair, parameter-major, in the
/// configured order; the output order does not depend on scheduling.
fn sweep<F>(config: &SweepConfig, f: F) -> Result<Vec<Row>>
where
    F: Fn(f64, &str) -> Result<(f64, f64)> + Sync,
{
    let tasks: Vec<(f64, &str)> =
        config.grid.iter().flat_map(|&x| config.codes.iter().map(move |c| (x, c.as_str()))).collect();
    let pool = worker_pool()?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|&(x, code)| {
                let (f_cw, concurrence) = f(x, code)?;
                Ok(Row { parameter: x, code: code.to_string(), f_cw, concurrence })
            })
            .collect()
    })
}

fn expect(config: &SweepConfig, experiment: Experiment) -> Result<()> {
    if config.experiment != experiment {
        return Err(config_err(format!("config is for {}, not {experiment}", config.experiment)));
    }
    if config.grid.is_empty() {
        return Err(config_err("empty grid"));
    }
    Ok(())
}

/// Codeword overlap and concurrence of the discrete codes against γ.
pub fn run_fig1(config: &SweepConfig) -> Result<SweepResult> {
    expect(config, Experiment::Fig1Gamma)?;
    let specs: Vec<_> =
        config.codes.iter().map(|c| c.parse::<CodeId>().map(|id| (c.clone(), id.spec()))).collect::<std::result::Result<_, _>>()?;
    let rows = sweep(config, |gamma, code| {
        let spec = &specs.iter().find(|(c, _)| c == code).expect("configured code").1;
        let f = codeword_overlap(spec, gamma, &config.sampling)?;
        Ok((f.value, safeguarded_concurrence(spec, gamma)?))
    })?;
    Ok(SweepResult { experiment: Experiment::Fig1Gamma, rows, metadata: metadata(config) })
}

/// Codeword overlap and concurrence of the cat codes against α at fixed γ.
pub fn run_fig2(config: &SweepConfig) -> Result<SweepResult> {
    expect(config, Experiment::Fig2Alpha)?;
    let codes: Vec<CatCode> = config.codes.iter().map(|c| c.parse()).collect::<std::result::Result<_, _>>()?;
    let model = config.cat_model();
    let rows = sweep(config, |alpha, label| {
        let code = *codes.iter().find(|c| c.label() == label).expect("configured code");
        let f = cat_codeword_overlap(code, alpha, config.gamma, &config.sampling, &model)?;
        Ok((f.value, cat_concurrence(code, alpha, config.gamma, &model)?))
    })?;
    Ok(SweepResult { experiment: Experiment::Fig2Alpha, rows, metadata: metadata(config) })
}

/// Runs the Gaussian no-go check.
pub fn run_nogo(config: &SweepConfig) -> Result<NogoReport> {
    if config.experiment != Experiment::GaussianNogo {
        return Err(config_err(format!("config is for {}, not {}", config.experiment, Experiment::GaussianNogo)));
    }
    verify_nogo_with(config.samples, config.seed, config.nogo_mode).map_err(BenchError::from)
}
