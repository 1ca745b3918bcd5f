use log::warn;
use serde::Serialize;

use super::dataset::Dataset;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Assignment of every instance to one of `k` folds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub assignment: Vec<usize>,
}

impl FoldPlan {
    /// Builds a stratified plan from zero-based class labels.
    ///
    /// One generator seeded with `seed` is used for the whole plan. Classes
    /// are visited in ascending order; each class's instance indices (in
    /// input order) are shuffled and dealt round-robin to the folds, starting
    /// at the fold after the one that received the previous class's last
    /// instance.
    pub fn stratified(labels: &[usize], k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Config(format!("need at least 2 folds, got {k}")));
        }
        if k > labels.len() {
            return Err(Error::Config(format!(
                "{k} folds requested for {} instances",
                labels.len()
            )));
        }
        let n_classes = labels.iter().max().map_or(0, |&m| m + 1);
        let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
        for (i, &l) in labels.iter().enumerate() {
            by_class[l].push(i);
        }

        let mut rng = SplitMix64::new(seed);
        let mut assignment = vec![usize::MAX; labels.len()];
        let mut dealt = 0usize;
        for (class, members) in by_class.iter_mut().enumerate() {
            if members.is_empty() {
                continue;
            }
            if members.len() < k {
                warn!(
                    "class {class} has {} instances, fewer than {k} folds",
                    members.len()
                );
            }
            rng.shuffle(members);
            for &i in members.iter() {
                assignment[i] = dealt % k;
                dealt += 1;
            }
        }

        Ok(FoldPlan {
            k,
            seed,
            assignment,
        })
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }

    /// `counts[fold][class]`.
    pub fn class_counts(&self, labels: &[usize]) -> Vec<Vec<usize>> {
        let n_classes = labels.iter().max().map_or(0, |&m| m + 1);
        let mut counts = vec![vec![0; n_classes]; self.k];
        for (&f, &l) in self.assignment.iter().zip(labels) {
            counts[f][l] += 1;
        }
        counts
    }
}

pub fn stratified_split(dataset: &Dataset, k: usize, seed: u64) -> Result<FoldPlan> {
    FoldPlan::stratified(&dataset.labels(), k, seed)
}
