//! Sweep configuration: flat `key = value` files merged with flag overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use cwoverlap::cat::{CatChannel, CatCode, CatModel, DeterministicEncoder, IdealEncoder};
use cwoverlap::gaussian::NogoMode;
use cwoverlap::{CodeId, SphereSampling};

use crate::error::{config_err, io_err, Result};

/// Keys accepted in config files; flags map onto the same names.
pub const KEYS: [&str; 11] = [
    "gamma_grid",
    "alpha_grid",
    "gamma",
    "codes",
    "samples",
    "sampling",
    "seed",
    "out",
    "encoder",
    "channel",
    "mode",
];

pub const DEFAULT_GAMMA_GRID: &str = "0:0.02:1";
pub const DEFAULT_ALPHA_GRID: &str = "0.05:0.05:3";
pub const DEFAULT_FIG2_GAMMA: f64 = 0.32;
pub const DEFAULT_SPHERE_POINTS: usize = 1024;
pub const DEFAULT_NOGO_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Fig1Gamma,
    Fig2Alpha,
    GaussianNogo,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Fig1Gamma => "fig1_gamma",
            Experiment::Fig2Alpha => "fig2_alpha",
            Experiment::GaussianNogo => "gaussian_nogo",
        }
    }

    /// Axis label of the swept parameter.
    pub fn parameter_name(self) -> &'static str {
        match self {
            Experiment::Fig1Gamma => "gamma",
            Experiment::Fig2Alpha => "alpha",
            Experiment::GaussianNogo => "sample",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = crate::BenchError;

    fn from_str(s: &str) -> Result<Self> {
        [Experiment::Fig1Gamma, Experiment::Fig2Alpha, Experiment::GaussianNogo]
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| config_err(format!("unknown experiment `{s}`")))
    }
}

/// Encoder used by the coherent-state repetition code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncoderChoice {
    Ideal,
    Deterministic,
}

impl EncoderChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            EncoderChoice::Ideal => "ideal",
            EncoderChoice::Deterministic => "deterministic",
        }
    }
}

/// Raw settings; later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Settings::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_err(format!("line {}: expected key = value", no + 1)))?;
            out.set(k.trim(), v.trim())?;
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(config_err(format!("unknown key `{key}`")));
        }
        self.0.insert(key, value.into());
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// `self` with every entry of `over` applied on top.
    pub fn merged(mut self, over: &Settings) -> Self {
        for (k, v) in &over.0 {
            self.0.insert(k.clone(), v.clone());
        }
        self
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|e| config_err(format!("{key}: `{v}`: {e}"))))
            .transpose()
    }
}

/// Parses `start:step:stop` (inclusive) or a comma-separated list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| config_err(format!("grid value `{s}`: {e}")));
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, step, stop] => {
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if step.is_nan() || step <= 0.0 || stop.is_nan() || stop < start {
                return Err(config_err(format!("grid `{spec}` needs step > 0 and stop >= start")));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            (0..=n).map(|i| start + i as f64 * step).collect()
        }
        [_] => spec.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(config_err(format!("grid `{spec}` is neither start:step:stop nor a list"))),
    };
    if grid.is_empty() {
        return Err(config_err("empty grid"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(config_err(format!("grid `{spec}` has non-finite values")));
    }
    Ok(grid)
}

/// A fully resolved run description.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub experiment: Experiment,
    /// Sorted ascending, no duplicates.
    pub grid: Vec<f64>,
    /// Canonical order: code-id order for discrete codes, mode count for cats.
    pub codes: Vec<String>,
    /// Loss parameter of the coherent-state sweep.
    pub gamma: f64,
    pub sampling: SphereSampling,
    pub seed: u64,
    /// Channel draws of the no-go run.
    pub samples: usize,
    pub nogo_mode: NogoMode,
    pub encoder: EncoderChoice,
    pub channel: CatChannel,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn defaults(experiment: Experiment) -> Self {
        Self::from_settings(experiment, &Settings::new()).expect("defaults are valid")
    }

    pub fn from_settings(experiment: Experiment, s: &Settings) -> Result<Self> {
        let seed = s.parsed::<u64>("seed")?.unwrap_or(DEFAULT_SEED);
        let samples = s.parsed::<usize>("samples")?;
        let sphere_points = samples.unwrap_or(DEFAULT_SPHERE_POINTS);
        let sampling = match s.get("sampling").unwrap_or("quadrature") {
            "quadrature" => SphereSampling::Quadrature { n_points: sphere_points },
            "monte_carlo" => SphereSampling::MonteCarlo { n_points: sphere_points, seed },
            other => return Err(config_err(format!("sampling `{other}` is not quadrature or monte_carlo"))),
        };
        let encoder = match s.get("encoder").unwrap_or("deterministic") {
            "ideal" => EncoderChoice::Ideal,
            "deterministic" => EncoderChoice::Deterministic,
            other => return Err(config_err(format!("encoder `{other}` is not ideal or deterministic"))),
        };
        let channel = match s.get("channel").unwrap_or("parity_flip") {
            "parity_flip" => CatChannel::ParityFlip,
            "exact" => CatChannel::Exact,
            other => return Err(config_err(format!("channel `{other}` is not parity_flip or exact"))),
        };
        let nogo_mode = s.parsed::<NogoMode>("mode")?.unwrap_or(NogoMode::Mixed);
        let gamma = s.parsed::<f64>("gamma")?.unwrap_or(DEFAULT_FIG2_GAMMA);
        let output_path = s.get("out").map(PathBuf::from);

        let (grid, codes) = match experiment {
            Experiment::Fig1Gamma => {
                let grid = parse_grid(s.get("gamma_grid").unwrap_or(DEFAULT_GAMMA_GRID))?;
                if let Some(g) = grid.iter().find(|g| !(0.0..=1.0).contains(*g)) {
                    return Err(config_err(format!("gamma {g} outside [0, 1]")));
                }
                let mut ids = match s.get("codes") {
                    Some(list) => split_list(list).map(|c| c.parse::<CodeId>()).collect::<std::result::Result<Vec<_>, _>>()?,
                    None => vec![CodeId::DualRail, CodeId::ThreeQubit, CodeId::Bosonic, CodeId::FourQubitApprox],
                };
                ids.sort();
                ids.dedup();
                (grid, ids.iter().map(|c| c.as_str().to_string()).collect())
            }
            Experiment::Fig2Alpha => {
                let grid = parse_grid(s.get("alpha_grid").unwrap_or(DEFAULT_ALPHA_GRID))?;
                if let Some(a) = grid.iter().find(|a| **a <= 0.0) {
                    return Err(config_err(format!("alpha {a} must be positive")));
                }
                if !(0.0..=1.0).contains(&gamma) {
                    return Err(config_err(format!("gamma {gamma} outside [0, 1]")));
                }
                let mut cats = split_list(s.get("codes").unwrap_or("direct,rep3,rep5,rep11,rep51"))
                    .map(|c| c.parse::<CatCode>())
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                cats.sort_by_key(|c| c.n_modes());
                cats.dedup();
                (grid, cats.iter().map(|c| c.label()).collect())
            }
            Experiment::GaussianNogo => (Vec::new(), Vec::new()),
        };
        let mut grid = grid;
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        if experiment != Experiment::GaussianNogo && codes.is_empty() {
            return Err(config_err("no codes selected"));
        }
        let samples = match experiment {
            Experiment::GaussianNogo => samples.unwrap_or(DEFAULT_NOGO_SAMPLES),
            _ => sphere_points,
        };
        if samples == 0 {
            return Err(config_err("samples must be at least 1"));
        }
        Ok(Self { experiment, grid, codes, gamma, sampling, seed, samples, nogo_mode, encoder, channel, output_path })
    }

    pub fn cat_model(&self) -> CatModel {
        let model = CatModel::default().with_channel(self.channel);
        match self.encoder {
            EncoderChoice::Ideal => model.with_encoder(Arc::new(IdealEncoder)),
            EncoderChoice::Deterministic => model.with_encoder(Arc::new(DeterministicEncoder)),
        }
    }

    /// Resolved settings as ordered `(key, value)` pairs.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out = vec![("experiment".to_string(), self.experiment.to_string())];
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        push("seed", self.seed.to_string());
        match self.experiment {
            Experiment::GaussianNogo => {
                push("samples", self.samples.to_string());
                push("mode", self.nogo_mode.as_str().to_string());
            }
            _ => {
                let grid: Vec<String> = self.grid.iter().map(|x| format!("{x}")).collect();
                push("grid", grid.join(","));
                push("codes", self.codes.join(","));
                let (kind, n) = match self.sampling {
                    SphereSampling::Quadrature { n_points } => ("quadrature", n_points),
                    SphereSampling::MonteCarlo { n_points, .. } => ("monte_carlo", n_points),
                };
                push("sampling", kind.to_string());
                push("samples", n.to_string());
                if self.experiment == Experiment::Fig2Alpha {
                    push("gamma", format!("{}", self.gamma));
                    push("encoder", self.encoder.as_str().to_string());
                    let ch = match self.channel {
                        CatChannel::ParityFlip => "parity_flip",
                        CatChannel::Exact => "exact",
                    };
                    push("channel", ch.to_string());
                }
            }
        }
        out
    }
}

fn split_list(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}
