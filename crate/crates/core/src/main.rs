use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use esdbench::harness::{
    fetch_data, figure_csv, render_report, run_benchmark, Algorithm, ExperimentConfig, MissingMode,
    OutputFormat,
};

#[derive(Parser)]
#[command(
    name = "esdbench",
    version,
    about = "Cross-validated classifier benchmark on the dermatology data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-validate the selected classifiers and print the comparison.
    Run {
        #[arg(long)]
        data: PathBuf,
        /// nb, mlp, j48 or all
        #[arg(long, default_value = "all")]
        algo: String,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// drop or raw
        #[arg(long, default_value = "drop")]
        missing: String,
        /// md, csv or json
        #[arg(long, default_value = "md")]
        format: String,
        /// Write held-out predictions here.
        #[arg(long)]
        emit_trace: Option<PathBuf>,
        /// key = value hyperparameter overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write grouped-bar plot data as CSV here.
        #[arg(long)]
        figure: Option<PathBuf>,
    },
    /// Download and checksum the dermatology data file.
    FetchData { dir: PathBuf },
}

fn run(cli: Cli) -> esdbench::Result<()> {
    match cli.command {
        Command::Run {
            data,
            algo,
            folds,
            seed,
            missing,
            format,
            emit_trace,
            config,
            figure,
        } => {
            let mut cfg = ExperimentConfig::new(data);
            cfg.algorithms = Algorithm::parse_selector(&algo)?;
            cfg.folds = folds;
            cfg.seed = seed;
            cfg.missing = MissingMode::parse(&missing)?;
            cfg.format = OutputFormat::parse(&format)?;
            cfg.emit_trace = emit_trace;
            if let Some(path) = config {
                cfg.load_overrides(&path)?;
            }
            let bench = run_benchmark(&cfg)?;
            print!("{}", render_report(&bench, cfg.format));
            if let Some(path) = figure {
                std::fs::write(&path, figure_csv(&bench))
                    .map_err(|e| esdbench::Error::Io { path, source: e })?;
            }
        }
        Command::FetchData { dir } => {
            let path = fetch_data(&dir)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("esdbench: {e}");
            ExitCode::FAILURE
        }
    }
}
