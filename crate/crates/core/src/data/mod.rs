//! Dataset parsing and cleaning, plus the stratified fold plans and feature
//! scaling built on top.

mod dataset;
mod folds;
mod samples;
mod scaling;
mod schema;

pub use dataset::{
    drop_missing_age, load_dataset, parse_dataset, parse_record, Dataset, Instance, Provenance,
};
pub use folds::{stratified_split, FoldPlan};
pub use samples::Samples;
pub use scaling::ScalingParams;
pub use schema::{
    esd_schema, AttributeKind, AttributeSpec, AGE_INDEX, CLASS_NAMES, FAMILY_HISTORY_INDEX,
};
