use serde::Serialize;

use super::{
    mae, rae, rmse, roc_auc, rrse, weighted_average, BaselinePredictor, ConfusionMatrix,
    PredictionTrace,
};
use crate::error::Result;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics<T> {
    pub support: usize,
    pub tpr: T,
    pub fpr: T,
    pub specificity: T,
    pub precision: T,
    pub recall: T,
    pub f_measure: T,
    /// `None` when the class has no positives or no negatives.
    pub auc: Option<T>,
    /// Some rate hit a zero denominator and was reported as 0.
    pub degenerate: bool,
}

/// Support-weighted averages of the per-class values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedMetrics<T> {
    pub tpr: T,
    pub fpr: T,
    pub specificity: T,
    pub precision: T,
    pub recall: T,
    pub f_measure: T,
    /// Averaged over classes with a defined AUC.
    pub auc: Option<T>,
}

/// Every figure of a benchmark row, as fractions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport<T> {
    pub instances: usize,
    pub correct: usize,
    pub accuracy: T,
    pub confusion: Vec<Vec<usize>>,
    pub per_class: Vec<ClassMetrics<T>>,
    pub weighted: WeightedMetrics<T>,
    pub mae: T,
    pub rmse: T,
    /// `None` when the baseline is exact.
    pub rae: Option<T>,
    pub rrse: Option<T>,
}

impl<T: Scalar> MetricsReport<T> {
    /// Fails only on an empty trace.
    pub fn from_trace(
        trace: &PredictionTrace<T>,
        baselines: &[BaselinePredictor<T>],
    ) -> Result<Self> {
        let cm = ConfusionMatrix::from_trace(trace);
        let accuracy = cm.accuracy::<T>()?;
        let supports = cm.supports();
        let per_class: Vec<ClassMetrics<T>> = (0..trace.n_classes)
            .map(|c| {
                let r = cm.class_rates::<T>(c);
                ClassMetrics {
                    support: supports[c],
                    tpr: r.tpr,
                    fpr: r.fpr,
                    specificity: r.specificity,
                    precision: r.precision,
                    recall: r.recall,
                    f_measure: r.f_measure,
                    auc: roc_auc(trace, c).ok(),
                    degenerate: r.degenerate,
                }
            })
            .collect();
        let avg = |f: fn(&ClassMetrics<T>) -> T| -> Result<T> {
            let v: Vec<T> = per_class.iter().map(f).collect();
            weighted_average(&v, &supports)
        };
        let (auc_v, auc_w): (Vec<T>, Vec<usize>) = per_class
            .iter()
            .filter_map(|m| m.auc.map(|a| (a, m.support)))
            .unzip();
        let weighted = WeightedMetrics {
            tpr: avg(|m| m.tpr)?,
            fpr: avg(|m| m.fpr)?,
            specificity: avg(|m| m.specificity)?,
            precision: avg(|m| m.precision)?,
            recall: avg(|m| m.recall)?,
            f_measure: avg(|m| m.f_measure)?,
            auc: weighted_average(&auc_v, &auc_w).ok(),
        };
        Ok(MetricsReport {
            instances: cm.total(),
            correct: cm.correct(),
            accuracy,
            confusion: cm.rows(),
            per_class,
            weighted,
            mae: mae(trace)?,
            rmse: rmse(trace)?,
            rae: rae(trace, baselines).ok(),
            rrse: rrse(trace, baselines).ok(),
        })
    }
}
