//! Sweep runner for the codeword-overlap experiments.
//!
//! Loss sweeps of the discrete codes, cat-size sweeps of the coherent-state
//! repetition code and the randomized Gaussian no-go check, written as CSV
//! tables, SVG plots and plain-text reports.

pub mod config;
pub mod error;
pub mod output;
pub mod plot;
pub mod sweep;

pub use config::{parse_grid, Experiment, Settings, SweepConfig};
pub use error::{BenchError, Result};
pub use output::{read_csv, write_csv, write_report};
pub use plot::emit_plot;
pub use sweep::{run_fig1, run_fig2, run_nogo, Row, SweepResult, WORKERS_ENV};
