use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cwoverlap_bench::config::Experiment;
use cwoverlap_bench::output::{csv_string, write_csv, write_report};
use cwoverlap_bench::{emit_plot, read_csv, run_fig1, run_fig2, run_nogo, Result, Settings, SweepConfig, SweepResult};

/// Codeword-overlap sweeps and the Gaussian no-go check.
///
/// Settings come from an optional `key = value` file (--config); flags
/// override it. The worker count is read from CWOVERLAP_WORKERS.
#[derive(Parser)]
#[command(name = "cwoverlap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete codes against the loss parameter.
    Fig1 {
        #[command(flatten)]
        common: Common,
        /// `start:step:stop` or a comma list.
        #[arg(long)]
        gamma_grid: Option<String>,
        /// Also write `<PLOT>_overlap.svg` and `<PLOT>_concurrence.svg`.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Cat repetition codes against the coherent amplitude.
    Fig2 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        alpha_grid: Option<String>,
        /// Loss parameter (default 0.32).
        #[arg(long)]
        gamma: Option<String>,
        /// `ideal` or `deterministic`.
        #[arg(long)]
        encoder: Option<String>,
        /// `parity_flip` or `exact`.
        #[arg(long)]
        channel: Option<String>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Random search for Gaussian channels that reduce state fidelity.
    Nogo {
        #[command(flatten)]
        common: Common,
        /// `mixed`, `general`, `boundary` or `symplectic`.
        #[arg(long)]
        mode: Option<String>,
    },
    /// Render a CSV table as two SVG files.
    Plot {
        input: PathBuf,
        /// Output stem.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated code ids.
    #[arg(long)]
    codes: Option<String>,
    /// Sphere points for sweeps, channel draws for `nogo`.
    #[arg(long)]
    samples: Option<String>,
    /// `quadrature` or `monte_carlo`.
    #[arg(long)]
    sampling: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn settings(&self, extra: &[(&str, &Option<String>)]) -> Result<Settings> {
        let base = match &self.config {
            Some(p) => Settings::load(p)?,
            None => Settings::new(),
        };
        let mut flags = Settings::new();
        let out = self.out.as_ref().map(|p| p.display().to_string());
        let common = [("codes", &self.codes), ("samples", &self.samples), ("sampling", &self.sampling), ("seed", &self.seed), ("out", &out)];
        for (k, v) in common.iter().chain(extra) {
            if let Some(v) = v {
                flags.set(k, v.as_str())?;
            }
        }
        Ok(base.merged(&flags))
    }
}

fn emit(result: &SweepResult, config: &SweepConfig, plot: &Option<PathBuf>) -> Result<bool> {
    match &config.output_path {
        Some(path) => write_csv(result, path)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(csv_string(result).as_bytes());
        }
    }
    if let Some(stem) = plot {
        emit_plot(result, stem)?;
    }
    let bad = result.invalid_rows();
    for r in &bad {
        eprintln!("invalid row: parameter={} code={} f_cw={} concurrence={}", r.parameter, r.code, r.f_cw, r.concurrence);
    }
    Ok(bad.is_empty())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Fig1 { common, gamma_grid, plot } => {
            let config = SweepConfig::from_settings(Experiment::Fig1Gamma, &common.settings(&[("gamma_grid", &gamma_grid)])?)?;
            emit(&run_fig1(&config)?, &config, &plot)
        }
        Command::Fig2 { common, alpha_grid, gamma, encoder, channel, plot } => {
            let extra = [("alpha_grid", &alpha_grid), ("gamma", &gamma), ("encoder", &encoder), ("channel", &channel)];
            let config = SweepConfig::from_settings(Experiment::Fig2Alpha, &common.settings(&extra)?)?;
            emit(&run_fig2(&config)?, &config, &plot)
        }
        Command::Nogo { common, mode } => {
            let config = SweepConfig::from_settings(Experiment::GaussianNogo, &common.settings(&[("mode", &mode)])?)?;
            let report = run_nogo(&config)?;
            match &config.output_path {
                Some(path) => write_report(&report, path)?,
                None => print!("{report}"),
            }
            Ok(report.violations == 0)
        }
        Command::Plot { input, out } => {
            emit_plot(&read_csv(&input)?, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
