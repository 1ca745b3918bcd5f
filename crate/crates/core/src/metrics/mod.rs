//! Evaluation of probabilistic multi-class predictions. Rates and AUC are
//! one-vs-rest per class, with support-weighted averages for single-row
//! summaries; error measures compare probabilities against one-hot truth.

mod auc;
mod confusion;
mod errors;
mod report;
mod trace;

pub use auc::{roc_auc, roc_points, weighted_auc};
pub use confusion::{weighted_average, ClassRates, ConfusionMatrix};
pub use errors::{mae, rae, rmse, rrse, BaselinePredictor};
pub use report::{ClassMetrics, MetricsReport, WeightedMetrics};
pub use trace::{PredictionRecord, PredictionTrace};
