//! Naive Bayes, multilayer perceptron and C4.5 decision-tree classifiers for
//! the UCI erythemato-squamous (dermatology) data, together with the
//! evaluation mathematics and the stratified cross-validation harness used to
//! compare them.
//!
//! The numeric core is generic over the scalar type (see [`Scalar`]); the
//! aliases below pin the `f64` instantiations the harness and CLI use.

pub mod bayes;
pub mod data;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod mlp;
pub mod rng;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Number of diagnosis classes in the dermatology data.
pub const N_CLASSES: usize = 6;
/// Number of attributes per record (excluding the class).
pub const N_FEATURES: usize = 34;

pub type NaiveBayes = bayes::NaiveBayesModel<f64>;
pub type NaiveBayes32 = bayes::NaiveBayesModel<f32>;
pub type Mlp = mlp::MlpModel<f64>;
pub type Mlp32 = mlp::MlpModel<f32>;
pub type Tree = tree::TreeNode<f64>;
pub type Tree32 = tree::TreeNode<f32>;
pub type Trace = metrics::PredictionTrace<f64>;
pub type Report = metrics::MetricsReport<f64>;
pub type Samples = data::Samples<f64>;
