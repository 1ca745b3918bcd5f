//! Stratified cross-validation of the three classifiers and the comparison
//! report behind the `esdbench` command line.

mod config;
mod cv;
mod fetch;
mod report;

pub use config::{Algorithm, ExperimentConfig, MissingMode, ModelConfigs, OutputFormat};
pub use cv::{cross_validate, emit_trace, load_trace, CvResult, Timings};
pub use fetch::{fetch_data, sha256_hex, DATA_FILE, DATA_URL};
pub use report::{figure_csv, render_report, run_benchmark, Benchmark, ROW_NAMES};
