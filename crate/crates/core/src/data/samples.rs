use super::dataset::Dataset;
use crate::error::{Error, Result};
use crate::Scalar;

/// Numeric training/evaluation view the classifiers consume: one row of
/// optional feature values per instance plus a zero-based class index.
///
/// Unlike [`Dataset`] it is not tied to the 34-attribute schema, so the
/// classifiers can be exercised on small synthetic problems too.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples<T> {
    rows: Vec<Vec<Option<T>>>,
    labels: Vec<usize>,
    n_classes: usize,
}

impl<T: Scalar> Samples<T> {
    pub fn new(rows: Vec<Vec<Option<T>>>, labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::Config(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        if n_classes == 0 {
            return Err(Error::Config("at least one class is required".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= n_classes) {
            return Err(Error::Config(format!("label {bad} outside 0..{n_classes}")));
        }
        if let Some(first) = rows.first() {
            if rows.iter().any(|r| r.len() != first.len()) {
                return Err(Error::Config("rows have differing lengths".into()));
            }
        }
        Ok(Samples {
            rows,
            labels,
            n_classes,
        })
    }

    /// Fully observed rows.
    pub fn dense(rows: Vec<Vec<T>>, labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Some).collect())
            .collect();
        Self::new(rows, labels, n_classes)
    }

    pub fn from_dataset(dataset: &Dataset) -> Self {
        let rows = dataset
            .instances
            .iter()
            .map(|inst| {
                inst.features
                    .iter()
                    .map(|v| v.map(|x| T::of(f64::from(x))))
                    .collect()
            })
            .collect();
        Samples {
            rows,
            labels: dataset.labels(),
            n_classes: crate::N_CLASSES,
        }
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Samples {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            n_classes: self.n_classes,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn n_features(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<Option<T>>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Option<T>] {
        &self.rows[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Option<T>], usize)> {
        self.rows
            .iter()
            .map(Vec::as_slice)
            .zip(self.labels.iter().copied())
    }
}
