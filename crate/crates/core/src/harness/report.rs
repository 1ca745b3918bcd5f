use std::fmt::Write as _;
use std::path::PathBuf;

use log::info;
use serde::Serialize;

use super::{cross_validate, Algorithm, CvResult, ExperimentConfig, MissingMode, OutputFormat};
use crate::data::{drop_missing_age, load_dataset, FoldPlan, Samples};
use crate::error::Result;
use crate::metrics::MetricsReport;

/// Report rows, in order.
pub const ROW_NAMES: [&str; 11] = [
    "Correctly Classified Instances",
    "Mean absolute error",
    "Root mean squared error",
    "Relative absolute error",
    "Root relative squared error",
    "TP Rate",
    "FP Rate",
    "Precision",
    "Recall",
    "F-Measure",
    "ROC Area",
];

const CA_ROW: &str = "Fold-mean accuracy";

/// Results of one benchmark run, all algorithms on one fold plan.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub instances: usize,
    pub folds: usize,
    pub seed: u64,
    pub missing: MissingMode,
    pub plan: FoldPlan,
    pub results: Vec<CvResult<f64>>,
}

fn row_values(r: &MetricsReport<f64>) -> [Option<f64>; 11] {
    [
        Some(r.accuracy),
        Some(r.mae),
        Some(r.rmse),
        r.rae,
        r.rrse,
        Some(r.weighted.tpr),
        Some(r.weighted.fpr),
        Some(r.weighted.precision),
        Some(r.weighted.recall),
        Some(r.weighted.f_measure),
        r.weighted.auc,
    ]
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{:.1}", 100.0 * x))
}

fn table(b: &Benchmark) -> Vec<(String, Vec<String>)> {
    let mut rows: Vec<(String, Vec<String>)> = ROW_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let cells = b
                .results
                .iter()
                .map(|r| pct(row_values(&r.pooled)[i]))
                .collect();
            (name.to_string(), cells)
        })
        .collect();
    rows.push((
        CA_ROW.to_string(),
        b.results
            .iter()
            .map(|r| pct(Some(r.cross_accuracy)))
            .collect(),
    ));
    rows
}

#[derive(Serialize)]
struct JsonAlgorithm<'a> {
    algorithm: Algorithm,
    label: &'static str,
    pooled: &'a MetricsReport<f64>,
    fold_accuracies: &'a [f64],
    cross_accuracy: f64,
    folds: &'a [MetricsReport<f64>],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    instances: usize,
    folds: usize,
    seed: u64,
    missing: MissingMode,
    fold_assignment: &'a [usize],
    results: Vec<JsonAlgorithm<'a>>,
}

/// Renders the comparison table. Markdown and CSV print percentages to one
/// decimal; JSON carries the raw fractions.
pub fn render_report(b: &Benchmark, format: OutputFormat) -> String {
    let labels: Vec<&str> = b.results.iter().map(|r| r.algorithm.label()).collect();
    let mut out = String::new();
    match format {
        OutputFormat::Markdown => {
            writeln!(
                out,
                "Stratified {}-fold cross-validation, seed {}, {} instances ({} mode)\n",
                b.folds,
                b.seed,
                b.instances,
                match b.missing {
                    MissingMode::Drop => "drop",
                    MissingMode::Raw => "raw",
                }
            )
            .unwrap();
            writeln!(out, "| Measure | {} |", labels.join(" | ")).unwrap();
            writeln!(out, "|---|{}", "---:|".repeat(labels.len())).unwrap();
            for (name, cells) in table(b) {
                writeln!(out, "| {} | {} |", name, cells.join(" | ")).unwrap();
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "measure,{}", labels.join(",")).unwrap();
            for (name, cells) in table(b) {
                writeln!(out, "{},{}", name, cells.join(",")).unwrap();
            }
        }
        OutputFormat::Json => {
            let report = JsonReport {
                instances: b.instances,
                folds: b.folds,
                seed: b.seed,
                missing: b.missing,
                fold_assignment: &b.plan.assignment,
                results: b
                    .results
                    .iter()
                    .map(|r| JsonAlgorithm {
                        algorithm: r.algorithm,
                        label: r.algorithm.label(),
                        pooled: &r.pooled,
                        fold_accuracies: &r.fold_accuracies,
                        cross_accuracy: r.cross_accuracy,
                        folds: &r.fold_reports,
                    })
                    .collect(),
            };
            out = serde_json::to_string_pretty(&report).expect("report serialises");
            out.push('\n');
        }
    }
    out
}

/// Grouped-bar data: one line per (measure, algorithm) pair, values in
/// percent.
pub fn figure_csv(b: &Benchmark) -> String {
    let mut out = String::from("measure,algorithm,value\n");
    for (i, name) in ROW_NAMES.iter().enumerate() {
        for r in &b.results {
            writeln!(
                out,
                "{},{},{}",
                name,
                r.algorithm.label(),
                pct(row_values(&r.pooled)[i])
            )
            .unwrap();
        }
    }
    out
}

/// Trace path for `algorithm`: the configured path itself for a single
/// algorithm, otherwise with the algorithm key inserted before the
/// extension.
fn trace_path(base: &std::path::Path, algorithm: Algorithm, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{}.{}", algorithm.key(), ext.to_string_lossy()),
        None => format!("{stem}.{}", algorithm.key()),
    };
    base.with_file_name(name)
}

/// Cross-validates every selected algorithm on one shared fold plan. Writes traces when `emit_trace` is set.
pub fn run_benchmark(config: &ExperimentConfig) -> Result<Benchmark> {
    config.validate()?;
    let mut dataset = load_dataset(&config.data)?;
    if config.missing == MissingMode::Drop {
        dataset = drop_missing_age(&dataset);
    }
    info!(
        "{} instances after {:?} handling of missing age",
        dataset.len(),
        config.missing
    );
    let samples: Samples<f64> = Samples::from_dataset(&dataset);
    let plan = FoldPlan::stratified(samples.labels(), config.folds, config.seed)?;
    let mut results = Vec::with_capacity(config.algorithms.len());
    for &alg in &config.algorithms {
        let r = cross_validate(&samples, &plan, alg, &config.models)?;
        if let Some(base) = &config.emit_trace {
            r.trace
                .save(trace_path(base, alg, config.algorithms.len() > 1))?;
        }
        results.push(r);
    }
    Ok(Benchmark {
        instances: samples.len(),
        folds: config.folds,
        seed: config.seed,
        missing: config.missing,
        plan,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    #[test]
    fn trace_paths() {
        let p = Path::new("/tmp/out/trace.csv");
        assert_eq!(trace_path(p, Algorithm::Mlp, false), p);
        assert_eq!(
            trace_path(p, Algorithm::Mlp, true),
            Path::new("/tmp/out/trace.mlp.csv")
        );
        assert_eq!(
            trace_path(Path::new("t"), Algorithm::J48, true),
            Path::new("t.j48")
        );
    }

    #[test]
    fn percent_formatting() {
        assert_eq!(pct(Some(0.974)), "97.4");
        assert_eq!(pct(Some(0.0104)), "1.0");
        assert_eq!(pct(None), "n/a");
    }
}
