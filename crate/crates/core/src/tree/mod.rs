//! C4.5-style decision trees: binary threshold splits chosen by gain ratio,
//! pessimistic subtree-replacement pruning, and rule extraction.

mod prune;
mod rules;
mod text;

pub use prune::{added_errors, prune};
pub use rules::{extract_rules, Condition, Rule, RuleSet};

use crate::data::Samples;
use crate::error::{Error, Result};
use crate::scalar::argmax;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C45Config {
    /// Confidence factor for pessimistic pruning, in `(0, 0.5)`.
    pub confidence: f64,
    /// Minimum number of instances on each side of a split.
    pub min_leaf: usize,
    pub prune: bool,
}

impl Default for C45Config {
    fn default() -> Self {
        C45Config {
            confidence: 0.25,
            min_leaf: 2,
            prune: true,
        }
    }
}

impl C45Config {
    pub fn validate(&self) -> Result<()> {
        if !(self.confidence > 0.0 && self.confidence < 0.5) {
            return Err(Error::Config(format!(
                "confidence factor {} outside (0, 0.5)",
                self.confidence
            )));
        }
        if self.min_leaf == 0 {
            return Err(Error::Config("min_leaf must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode<T> {
    /// Instances with `value <= threshold` go left, the rest right. Missing
    /// values follow the branch that received more training instances.
    Internal {
        attribute: usize,
        threshold: T,
        left: Box<TreeNode<T>>,
        right: Box<TreeNode<T>>,
    },
    Leaf {
        /// Training class counts reaching this leaf.
        counts: Vec<usize>,
        class: usize,
    },
}

fn entropy<T: Scalar>(counts: &[usize], total: usize) -> T {
    if total == 0 {
        return T::zero();
    }
    let n = T::of_usize(total);
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = T::of_usize(c) / n;
            -p * p.log2()
        })
        .sum()
}

/// Information gain and split information of a two-way partition given the
/// class counts on each side.
fn gain_and_split<T: Scalar>(left: &[usize], right: &[usize]) -> (T, T) {
    let nl: usize = left.iter().sum();
    let nr: usize = right.iter().sum();
    let n = nl + nr;
    let parent: Vec<usize> = left.iter().zip(right).map(|(a, b)| a + b).collect();
    let total = T::of_usize(n);
    let wl = T::of_usize(nl) / total;
    let wr = T::of_usize(nr) / total;
    let gain =
        entropy::<T>(&parent, n) - wl * entropy::<T>(left, nl) - wr * entropy::<T>(right, nr);
    let split = entropy::<T>(&[nl, nr], n);
    (gain, split)
}

/// Gain ratio of splitting `samples` on `attribute <= threshold`, computed
/// over the instances whose value for `attribute` is known. `None` when one
/// side would be empty.
pub fn gain_ratio<T: Scalar>(samples: &Samples<T>, attribute: usize, threshold: T) -> Option<T> {
    let k = samples.n_classes();
    let mut left = vec![0; k];
    let mut right = vec![0; k];
    for (row, label) in samples.iter() {
        match row[attribute] {
            Some(v) if v <= threshold => left[label] += 1,
            Some(_) => right[label] += 1,
            None => {}
        }
    }
    if left.iter().sum::<usize>() == 0 || right.iter().sum::<usize>() == 0 {
        return None;
    }
    let (gain, split) = gain_and_split::<T>(&left, &right);
    Some(gain / split)
}

struct Split<T> {
    attribute: usize,
    threshold: T,
    ratio: T,
}

fn minimum_gain<T: Scalar>() -> T {
    T::of(1e-10)
}

fn best_split<T: Scalar>(
    samples: &Samples<T>,
    idx: &[usize],
    config: &C45Config,
) -> Option<Split<T>> {
    let k = samples.n_classes();
    let mut best: Option<Split<T>> = None;
    let mut column: Vec<(T, usize)> = Vec::with_capacity(idx.len());
    for attribute in 0..samples.n_features() {
        column.clear();
        column.extend(
            idx.iter()
                .filter_map(|&i| samples.row(i)[attribute].map(|v| (v, samples.label(i)))),
        );
        if column.len() < 2 * config.min_leaf {
            continue;
        }
        column.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite feature values"));

        let mut right = vec![0usize; k];
        for &(_, l) in &column {
            right[l] += 1;
        }
        let mut left = vec![0usize; k];
        for pos in 0..column.len() - 1 {
            let (v, l) = column[pos];
            left[l] += 1;
            right[l] -= 1;
            let next = column[pos + 1].0;
            if next == v {
                continue;
            }
            let n_left = pos + 1;
            if n_left < config.min_leaf || column.len() - n_left < config.min_leaf {
                continue;
            }
            let (gain, split) = gain_and_split::<T>(&left, &right);
            if gain <= minimum_gain() {
                continue;
            }
            let ratio = gain / split;
            if best.as_ref().is_none_or(|b| ratio > b.ratio) {
                best = Some(Split {
                    attribute,
                    threshold: (v + next) / T::of(2.0),
                    ratio,
                });
            }
        }
    }
    best
}

impl<T: Scalar> TreeNode<T> {
    pub fn leaf(counts: Vec<usize>) -> Self {
        let class = argmax(&counts);
        TreeNode::Leaf { counts, class }
    }

    /// Grows an unpruned tree on `samples`.
    ///
    /// A node becomes a leaf when it is pure or holds fewer than
    /// `2 * min_leaf` instances. It also stays a leaf when no threshold split
    /// yields positive information gain with `min_leaf` instances per side.
    /// Otherwise the split with the largest gain ratio is taken; ties keep
    /// the lowest attribute index, then the lowest threshold.
    pub fn build(samples: &Samples<T>, config: &C45Config) -> Result<Self> {
        config.validate()?;
        if samples.is_empty() {
            return Err(Error::NoInstances);
        }
        let idx: Vec<usize> = (0..samples.len()).collect();
        Ok(grow(samples, idx, config))
    }

    /// Builds, then prunes unless `config.prune` is off.
    pub fn fit(samples: &Samples<T>, config: &C45Config) -> Result<Self> {
        let tree = Self::build(samples, config)?;
        Ok(if config.prune {
            prune(tree, config.confidence)
        } else {
            tree
        })
    }

    /// Class counts of the training instances that reached this node.
    pub fn distribution(&self) -> Vec<usize> {
        match self {
            TreeNode::Leaf { counts, .. } => counts.clone(),
            TreeNode::Internal { left, right, .. } => left
                .distribution()
                .iter()
                .zip(right.distribution())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            TreeNode::Leaf { counts, .. } => counts.iter().sum(),
            TreeNode::Internal { left, right, .. } => left.weight() + right.weight(),
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { left, right, .. } => left.n_leaves() + right.n_leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Internal { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Whether a missing value at this internal node goes left.
    pub(crate) fn missing_goes_left(left: &Self, right: &Self) -> bool {
        left.weight() >= right.weight()
    }

    /// The leaf an observation lands in.
    pub fn find_leaf(&self, row: &[Option<T>]) -> &Self {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { .. } => return node,
                TreeNode::Internal {
                    attribute,
                    threshold,
                    left,
                    right,
                } => {
                    let go_left = match row[*attribute] {
                        Some(v) => v <= *threshold,
                        None => Self::missing_goes_left(left, right),
                    };
                    node = if go_left { left } else { right };
                }
            }
        }
    }

    /// Predicted class and Laplace-smoothed leaf distribution
    /// `(count + 1) / (total + K)`.
    pub fn predict(&self, row: &[Option<T>]) -> (usize, Vec<T>) {
        match self.find_leaf(row) {
            TreeNode::Leaf { counts, class } => (*class, laplace(counts)),
            TreeNode::Internal { .. } => unreachable!("find_leaf returns a leaf"),
        }
    }

    pub fn predict_proba(&self, row: &[Option<T>]) -> Vec<T> {
        self.predict(row).1
    }
}

pub(crate) fn laplace<T: Scalar>(counts: &[usize]) -> Vec<T> {
    let total: usize = counts.iter().sum();
    let denom = T::of_usize(total + counts.len());
    counts.iter().map(|&c| T::of_usize(c + 1) / denom).collect()
}

fn grow<T: Scalar>(samples: &Samples<T>, idx: Vec<usize>, config: &C45Config) -> TreeNode<T> {
    let mut counts = vec![0; samples.n_classes()];
    for &i in &idx {
        counts[samples.label(i)] += 1;
    }
    let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
    if pure || idx.len() < 2 * config.min_leaf {
        return TreeNode::leaf(counts);
    }
    let Some(split) = best_split(samples, &idx, config) else {
        return TreeNode::leaf(counts);
    };

    let mut left_idx = Vec::new();
    let mut right_idx = Vec::new();
    let mut missing = Vec::new();
    for &i in &idx {
        match samples.row(i)[split.attribute] {
            Some(v) if v <= split.threshold => left_idx.push(i),
            Some(_) => right_idx.push(i),
            None => missing.push(i),
        }
    }
    if left_idx.len() >= right_idx.len() {
        left_idx.extend(missing);
    } else {
        right_idx.extend(missing);
    }

    TreeNode::Internal {
        attribute: split.attribute,
        threshold: split.threshold,
        left: Box::new(grow(samples, left_idx, config)),
        right: Box::new(grow(samples, right_idx, config)),
    }
}
