use serde::Serialize;

use super::samples::Samples;
use crate::Scalar;

/// Per-attribute range observed on a training partition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingParams<T> {
    pub min: Vec<T>,
    pub max: Vec<T>,
}

impl<T: Scalar> ScalingParams<T> {
    /// Records each attribute's observed min and max. Attributes with no
    /// observed value get the degenerate range `[0, 0]`.
    pub fn fit(samples: &Samples<T>) -> Self {
        let n = samples.n_features();
        let mut min = vec![T::infinity(); n];
        let mut max = vec![T::neg_infinity(); n];
        for (row, _) in samples.iter() {
            for (j, v) in row.iter().enumerate() {
                if let Some(x) = *v {
                    min[j] = min[j].min(x);
                    max[j] = max[j].max(x);
                }
            }
        }
        for j in 0..n {
            if min[j] > max[j] {
                min[j] = T::zero();
                max[j] = T::zero();
            }
        }
        ScalingParams { min, max }
    }

    /// Maps the training range affinely onto `[-1, 1]`. Values outside the
    /// training range extrapolate; constant attributes and missing values
    /// map to 0.
    pub fn apply(&self, row: &[Option<T>]) -> Vec<T> {
        let two = T::of(2.0);
        row.iter()
            .enumerate()
            .map(|(j, v)| match *v {
                Some(x) if self.max[j] > self.min[j] => {
                    two * (x - self.min[j]) / (self.max[j] - self.min[j]) - T::one()
                }
                _ => T::zero(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(col: &[f64]) -> ScalingParams<f64> {
        let rows = col.iter().map(|&x| vec![x]).collect();
        ScalingParams::fit(&Samples::dense(rows, vec![0; col.len()], 1).unwrap())
    }

    #[test]
    fn range_endpoints() {
        let p = fit(&[0.0, 1.0, 3.0]);
        assert_eq!(p.apply(&[Some(3.0)]), vec![1.0]);
        assert_eq!(p.apply(&[Some(0.0)]), vec![-1.0]);
    }

    #[test]
    fn constant_feature() {
        let p = fit(&[2.0, 2.0]);
        assert_eq!(p.apply(&[Some(2.0)]), vec![0.0]);
        assert_eq!(p.apply(&[Some(7.0)]), vec![0.0]);
    }

    #[test]
    fn extrapolates_without_clamping() {
        let p = fit(&[0.0, 60.0]);
        assert_eq!(p.apply(&[Some(90.0)]), vec![2.0]);
    }

    #[test]
    fn missing_maps_to_zero() {
        let p = fit(&[0.0, 60.0]);
        assert_eq!(p.apply(&[None]), vec![0.0]);
    }
}
