use std::path::Path;
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;

use super::{Algorithm, ModelConfigs};
use crate::bayes::NaiveBayesModel;
use crate::data::{FoldPlan, Samples};
use crate::error::{Error, Result};
use crate::metrics::{BaselinePredictor, MetricsReport, PredictionTrace};
use crate::mlp::MlpModel;
use crate::rng::mix;
use crate::tree::TreeNode;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Timings {
    pub fold_seconds: Vec<f64>,
    pub total_seconds: f64,
}

/// Outcome of one cross-validation run.
#[derive(Debug, Clone)]
pub struct CvResult<T> {
    pub algorithm: Algorithm,
    /// Held-out predictions, fold by fold, each fold in instance order.
    pub trace: PredictionTrace<T>,
    pub fold_accuracies: Vec<T>,
    pub fold_reports: Vec<MetricsReport<T>>,
    /// Training-prior baseline of each fold.
    pub baselines: Vec<BaselinePredictor<T>>,
    /// Metrics of the pooled trace.
    pub pooled: MetricsReport<T>,
    /// Mean of the fold accuracies.
    pub cross_accuracy: T,
    pub timings: Timings,
}

struct FoldOutcome<T> {
    test: Vec<usize>,
    probabilities: Vec<Vec<T>>,
    baseline: BaselinePredictor<T>,
    seconds: f64,
}

fn run_fold<T: Scalar>(
    samples: &Samples<T>,
    plan: &FoldPlan,
    fold: usize,
    algorithm: Algorithm,
    models: &ModelConfigs,
) -> Result<FoldOutcome<T>> {
    let start = Instant::now();
    let train = samples.subset(&plan.train_indices(fold));
    let test = plan.test_indices(fold);
    let baseline = BaselinePredictor::from_counts(&train.class_counts())?;
    let probabilities: Vec<Vec<T>> = match algorithm {
        Algorithm::NaiveBayes => {
            let m = NaiveBayesModel::train(&train, &models.bayes)?;
            test.iter().map(|&i| m.posterior(samples.row(i))).collect()
        }
        Algorithm::Mlp => {
            let mut cfg = models.mlp;
            cfg.seed = mix(plan.seed, fold as u64);
            let m = MlpModel::train(&train, &cfg)?;
            test.iter()
                .map(|&i| m.predict_proba(samples.row(i)))
                .collect()
        }
        Algorithm::J48 => {
            let m = TreeNode::fit(&train, &models.tree)?;
            test.iter()
                .map(|&i| m.predict_proba(samples.row(i)))
                .collect()
        }
    };
    Ok(FoldOutcome {
        test,
        probabilities,
        baseline,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Trains on all folds but `t` and predicts fold `t`, for every `t`.
///
/// Folds run in parallel and are merged in fold order, so the result does
/// not depend on scheduling. The MLP of fold `t` is seeded with
/// `mix(plan.seed, t)`.
pub fn cross_validate<T: Scalar>(
    samples: &Samples<T>,
    plan: &FoldPlan,
    algorithm: Algorithm,
    models: &ModelConfigs,
) -> Result<CvResult<T>> {
    if plan.assignment.len() != samples.len() {
        return Err(Error::Config(format!(
            "fold plan covers {} instances, data has {}",
            plan.assignment.len(),
            samples.len()
        )));
    }
    let start = Instant::now();
    let outcomes: Vec<FoldOutcome<T>> = (0..plan.k)
        .into_par_iter()
        .map(|t| {
            run_fold(samples, plan, t, algorithm, models).map_err(|e| Error::Fold {
                fold: t,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let mut trace = PredictionTrace::new(samples.n_classes());
    let mut fold_reports = Vec::with_capacity(plan.k);
    let mut fold_accuracies = Vec::with_capacity(plan.k);
    let mut baselines = Vec::with_capacity(plan.k);
    for (t, o) in outcomes.iter().enumerate() {
        let mut fold_trace = PredictionTrace::new(samples.n_classes());
        for (&i, p) in o.test.iter().zip(&o.probabilities) {
            fold_trace.push(i, samples.label(i), p.clone(), t);
            trace.push(i, samples.label(i), p.clone(), t);
        }
        let report = MetricsReport::from_trace(&fold_trace, std::slice::from_ref(&o.baseline))
            .map_err(|e| Error::Fold {
                fold: t,
                source: Box::new(e),
            })?;
        fold_accuracies.push(report.accuracy);
        fold_reports.push(report);
        baselines.push(o.baseline.clone());
    }
    let pooled = MetricsReport::from_trace(&trace, &baselines)?;
    let cross_accuracy = fold_accuracies.iter().copied().sum::<T>() / T::of_usize(plan.k);
    let gap = (cross_accuracy - pooled.accuracy).abs().as_f64();
    if gap > 0.005 {
        warn!(
            "{algorithm}: fold-mean accuracy {} differs from pooled {} by more than 0.5 points",
            cross_accuracy, pooled.accuracy
        );
    }
    let timings = Timings {
        fold_seconds: outcomes.iter().map(|o| o.seconds).collect(),
        total_seconds: start.elapsed().as_secs_f64(),
    };
    info!(
        "{algorithm}: accuracy {:.4} over {} folds in {:.3}s",
        pooled.accuracy.as_f64(),
        plan.k,
        timings.total_seconds
    );
    Ok(CvResult {
        algorithm,
        trace,
        fold_accuracies,
        fold_reports,
        baselines,
        pooled,
        cross_accuracy,
        timings,
    })
}

pub fn emit_trace<T: Scalar>(result: &CvResult<T>, path: impl AsRef<Path>) -> Result<()> {
    result.trace.save(path)
}

/// Loads a trace written by [`emit_trace`] for the six ESD classes.
pub fn load_trace(path: impl AsRef<Path>) -> Result<PredictionTrace<f64>> {
    PredictionTrace::load(path, crate::N_CLASSES)
}
