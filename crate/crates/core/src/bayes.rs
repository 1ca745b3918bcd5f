//! Gaussian Naive Bayes.
//!
//! The posterior of class `c` given an observation `x` is
//! `P(c | x) = P(x | c) P(c) / P(x)`, with `P(x | c)` the product of
//! per-attribute normal densities and `P(x)` the normaliser over classes.
//! Everything is evaluated in log space and normalised with log-sum-exp.

use std::fmt::Write as _;

use crate::data::Samples;
use crate::error::{Error, Result};
use crate::scalar::{argmax, fmt_exact};
use crate::Scalar;

/// Smallest variance a per-class attribute estimate may take: the square of
/// the minimum standard deviation `1/6` the reference toolkit uses for
/// attributes recorded at unit precision.
pub const DEFAULT_VARIANCE_FLOOR: f64 = 1.0 / 36.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaiveBayesConfig {
    pub variance_floor: f64,
}

impl Default for NaiveBayesConfig {
    fn default() -> Self {
        NaiveBayesConfig {
            variance_floor: DEFAULT_VARIANCE_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel<T> {
    pub class_log_priors: Vec<T>,
    /// `means[class][attribute]`
    pub means: Vec<Vec<T>>,
    /// `variances[class][attribute]`, each at least `variance_floor`.
    pub variances: Vec<Vec<T>>,
    pub variance_floor: T,
}

impl<T: Scalar> NaiveBayesModel<T> {
    /// Fits add-one smoothed priors `(n_c + 1) / (N + K)` and per-class
    /// sample means and unbiased variances.
    ///
    /// Missing attribute values are left out of the estimates. A class with
    /// a single observed value for an attribute gets the floor variance
    /// around that value; a class with none falls back to the attribute's
    /// overall training mean.
    pub fn train(samples: &Samples<T>, config: &NaiveBayesConfig) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::NoInstances);
        }
        if !config.variance_floor.is_finite() || config.variance_floor <= 0.0 {
            return Err(Error::Config("variance floor must be positive".into()));
        }
        let floor = T::of(config.variance_floor);
        let n_classes = samples.n_classes();
        let n_features = samples.n_features();

        let counts = samples.class_counts();
        let denom = T::of_usize(samples.len() + n_classes);
        let class_log_priors = counts
            .iter()
            .map(|&c| (T::of_usize(c + 1) / denom).ln())
            .collect();

        // Running sums per class and attribute.
        let mut n = vec![vec![0usize; n_features]; n_classes];
        let mut sum = vec![vec![T::zero(); n_features]; n_classes];
        let mut global_n = vec![0usize; n_features];
        let mut global_sum = vec![T::zero(); n_features];
        for (row, label) in samples.iter() {
            for (j, v) in row.iter().enumerate() {
                if let Some(x) = *v {
                    n[label][j] += 1;
                    sum[label][j] = sum[label][j] + x;
                    global_n[j] += 1;
                    global_sum[j] = global_sum[j] + x;
                }
            }
        }

        let mut means = vec![vec![T::zero(); n_features]; n_classes];
        for c in 0..n_classes {
            for j in 0..n_features {
                means[c][j] = if n[c][j] > 0 {
                    sum[c][j] / T::of_usize(n[c][j])
                } else if global_n[j] > 0 {
                    global_sum[j] / T::of_usize(global_n[j])
                } else {
                    T::zero()
                };
            }
        }

        let mut sq = vec![vec![T::zero(); n_features]; n_classes];
        for (row, label) in samples.iter() {
            for (j, v) in row.iter().enumerate() {
                if let Some(x) = *v {
                    let d = x - means[label][j];
                    sq[label][j] = sq[label][j] + d * d;
                }
            }
        }
        let variances = (0..n_classes)
            .map(|c| {
                (0..n_features)
                    .map(|j| {
                        if n[c][j] >= 2 {
                            (sq[c][j] / T::of_usize(n[c][j] - 1)).max(floor)
                        } else {
                            floor
                        }
                    })
                    .collect()
            })
            .collect();

        Ok(NaiveBayesModel {
            class_log_priors,
            means,
            variances,
            variance_floor: floor,
        })
    }

    pub fn n_classes(&self) -> usize {
        self.class_log_priors.len()
    }

    /// Unnormalised log posterior per class; missing attributes contribute
    /// nothing.
    pub fn log_scores(&self, row: &[Option<T>]) -> Vec<T> {
        let half_ln_2pi = T::of(0.5 * (2.0 * std::f64::consts::PI).ln());
        let half = T::of(0.5);
        (0..self.n_classes())
            .map(|c| {
                let mut score = self.class_log_priors[c];
                for (j, v) in row.iter().enumerate() {
                    if let Some(x) = *v {
                        let var = self.variances[c][j];
                        let d = x - self.means[c][j];
                        score = score - half_ln_2pi - half * var.ln() - d * d / (var + var);
                    }
                }
                score
            })
            .collect()
    }

    pub fn posterior(&self, row: &[Option<T>]) -> Vec<T> {
        normalize_log(&self.log_scores(row))
    }

    /// Most probable zero-based class; ties go to the lowest index.
    pub fn predict(&self, row: &[Option<T>]) -> usize {
        argmax(&self.posterior(row))
    }

    /// Plain-text dump: header lines, then one `log_prior` line per class
    /// and one `gaussian class attribute mean variance` line per pair, all
    /// at 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "naive-bayes").unwrap();
        writeln!(out, "classes {}", self.n_classes()).unwrap();
        writeln!(out, "features {}", self.means.first().map_or(0, Vec::len)).unwrap();
        writeln!(out, "variance_floor {}", fmt_exact(self.variance_floor)).unwrap();
        for (c, lp) in self.class_log_priors.iter().enumerate() {
            writeln!(out, "log_prior {c} {}", fmt_exact(*lp)).unwrap();
        }
        for c in 0..self.n_classes() {
            for (j, (m, v)) in self.means[c].iter().zip(&self.variances[c]).enumerate() {
                writeln!(out, "gaussian {c} {j} {} {}", fmt_exact(*m), fmt_exact(*v)).unwrap();
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        const KIND: &str = "naive bayes model";
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut header = |key: &str| -> Result<String> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::format(KIND, 0, "truncated header"))?;
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| Error::format(KIND, no, format!("expected '{key}'")))?;
            Ok(rest.trim().to_string())
        };
        header("naive-bayes")?;
        let n_classes: usize = parse_num(&header("classes")?, KIND, 2)?;
        let n_features: usize = parse_num(&header("features")?, KIND, 3)?;
        let variance_floor = T::of(parse_num(&header("variance_floor")?, KIND, 4)?);

        let mut class_log_priors = vec![T::nan(); n_classes];
        let mut means = vec![vec![T::nan(); n_features]; n_classes];
        let mut variances = vec![vec![T::nan(); n_features]; n_classes];
        for (no, line) in lines {
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["log_prior", c, v] => {
                    let c: usize = parse_num(c, KIND, no)?;
                    *class_log_priors
                        .get_mut(c)
                        .ok_or_else(|| Error::format(KIND, no, "class out of range"))? =
                        T::of(parse_num(v, KIND, no)?);
                }
                ["gaussian", c, j, m, v] => {
                    let c: usize = parse_num(c, KIND, no)?;
                    let j: usize = parse_num(j, KIND, no)?;
                    if c >= n_classes || j >= n_features {
                        return Err(Error::format(KIND, no, "index out of range"));
                    }
                    means[c][j] = T::of(parse_num(m, KIND, no)?);
                    variances[c][j] = T::of(parse_num(v, KIND, no)?);
                }
                _ => {
                    return Err(Error::format(
                        KIND,
                        no,
                        format!("unrecognised line '{line}'"),
                    ))
                }
            }
        }
        let complete = class_log_priors.iter().all(|v| !v.is_nan())
            && means.iter().flatten().all(|v| !v.is_nan())
            && variances.iter().flatten().all(|v| !v.is_nan());
        if !complete {
            return Err(Error::format(KIND, 0, "missing entries"));
        }
        Ok(NaiveBayesModel {
            class_log_priors,
            means,
            variances,
            variance_floor,
        })
    }
}

pub(crate) fn parse_num<N: std::str::FromStr>(
    s: &str,
    kind: &'static str,
    line: usize,
) -> Result<N> {
    s.trim()
        .parse()
        .map_err(|_| Error::format(kind, line, format!("bad number '{s}'")))
}

/// Turns log scores into probabilities with log-sum-exp.
pub fn normalize_log<T: Scalar>(scores: &[T]) -> Vec<T> {
    let max = scores.iter().copied().fold(T::neg_infinity(), T::max);
    let exps: Vec<T> = scores.iter().map(|&s| (s - max).exp()).collect();
    let total: T = exps.iter().copied().sum();
    exps.into_iter().map(|e| e / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn config(floor: f64) -> NaiveBayesConfig {
        NaiveBayesConfig {
            variance_floor: floor,
        }
    }

    #[test]
    fn smoothed_priors() {
        let s = Samples::<f64>::dense(
            vec![vec![0.0], vec![1.0], vec![5.0], vec![6.0]],
            vec![0, 0, 1, 1],
            6,
        )
        .unwrap();
        let m = NaiveBayesModel::train(&s, &config(1e-9)).unwrap();
        assert_relative_eq!(m.class_log_priors[0].exp(), 0.3, epsilon = 1e-15);
        assert_relative_eq!(m.class_log_priors[1].exp(), 0.3, epsilon = 1e-15);
        for c in 2..6 {
            assert_relative_eq!(m.class_log_priors[c].exp(), 0.1, epsilon = 1e-15);
        }
        let total: f64 = m.class_log_priors.iter().map(|l| l.exp()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_and_unbiased_variance() {
        let s = Samples::<f64>::dense(vec![vec![1.0], vec![3.0]], vec![0, 0], 1).unwrap();
        let m = NaiveBayesModel::train(&s, &config(1e-9)).unwrap();
        assert_eq!(m.means[0][0], 2.0);
        assert_eq!(m.variances[0][0], 2.0);
    }

    #[test]
    fn constant_attribute_uses_floor() {
        let s =
            Samples::<f64>::dense(vec![vec![4.0], vec![4.0], vec![4.0]], vec![0, 0, 0], 1).unwrap();
        let m = NaiveBayesModel::train(&s, &config(1e-9)).unwrap();
        assert_eq!(m.variances[0][0], 1e-9);
    }

    #[test]
    fn absent_class_falls_back_to_global_mean() {
        let s = Samples::<f64>::dense(vec![vec![2.0], vec![4.0]], vec![0, 0], 2).unwrap();
        let m = NaiveBayesModel::train(&s, &config(0.5)).unwrap();
        assert_eq!(m.means[1][0], 3.0);
        assert_eq!(m.variances[1][0], 0.5);
    }

    #[test]
    fn single_instance_class() {
        let s = Samples::<f64>::dense(vec![vec![2.0], vec![7.0]], vec![0, 1], 2).unwrap();
        let m = NaiveBayesModel::train(&s, &config(0.25)).unwrap();
        assert_eq!((m.means[1][0], m.variances[1][0]), (7.0, 0.25));
    }

    #[test]
    fn empty_training_set() {
        let s = Samples::<f64>::dense(vec![], vec![], 6).unwrap();
        assert!(matches!(
            NaiveBayesModel::train(&s, &NaiveBayesConfig::default()),
            Err(Error::NoInstances)
        ));
    }

    fn symmetric_model(n_classes: usize) -> NaiveBayesModel<f64> {
        NaiveBayesModel {
            class_log_priors: vec![-(n_classes as f64).ln(); n_classes],
            means: vec![vec![1.0, 2.0]; n_classes],
            variances: vec![vec![1.0, 3.0]; n_classes],
            variance_floor: 1e-9,
        }
    }

    #[test]
    fn symmetric_model_is_uniform_and_picks_first_class() {
        let m = symmetric_model(6);
        let p = m.posterior(&[Some(0.3), Some(-4.0)]);
        for v in &p {
            assert_relative_eq!(*v, 1.0 / 6.0, epsilon = 1e-15);
        }
        assert_eq!(m.predict(&[Some(0.3), Some(-4.0)]), 0);
    }

    #[test]
    fn two_class_separation() {
        let m = NaiveBayesModel {
            class_log_priors: vec![0.5f64.ln(); 2],
            means: vec![vec![0.0], vec![10.0]],
            variances: vec![vec![1.0], vec![1.0]],
            variance_floor: 1e-9,
        };
        let p = m.posterior(&[Some(0.0)]);
        // exp(-50) / (1 + exp(-50))
        assert!((p[0] - 1.0).abs() < 1e-10);
        assert!(p[1] < 1e-10);
        assert_relative_eq!(p[1], 1.928749847963918e-22, max_relative = 1e-9);
    }

    #[test]
    fn tie_goes_to_lowest_class() {
        let m = NaiveBayesModel {
            class_log_priors: vec![-10.0, -10.0, -1.0, -10.0, -1.0, -10.0],
            means: vec![vec![0.0]; 6],
            variances: vec![vec![1.0]; 6],
            variance_floor: 1e-9,
        };
        assert_eq!(m.predict(&[Some(0.0)]), 2);
    }

    #[test]
    fn missing_attributes_are_skipped() {
        let m = NaiveBayesModel {
            class_log_priors: vec![0.5f64.ln(); 2],
            means: vec![vec![0.0, 0.0], vec![10.0, 0.0]],
            variances: vec![vec![1.0, 1.0], vec![1.0, 1.0]],
            variance_floor: 1e-9,
        };
        let p = m.posterior(&[None, Some(0.0)]);
        assert_relative_eq!(p[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let s = Samples::<f64>::dense(
            vec![
                vec![0.1, 3.0],
                vec![0.7, 2.0],
                vec![5.3, 1.0],
                vec![6.9, 1.0],
            ],
            vec![0, 0, 1, 1],
            3,
        )
        .unwrap();
        let m = NaiveBayesModel::train(&s, &NaiveBayesConfig::default()).unwrap();
        let back = NaiveBayesModel::<f64>::from_text(&m.to_text()).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn rejects_truncated_text() {
        assert!(NaiveBayesModel::<f64>::from_text("naive-bayes\nclasses 2\n").is_err());
        assert!(NaiveBayesModel::<f64>::from_text(
            "naive-bayes\nclasses 1\nfeatures 1\nvariance_floor 1\nlog_prior 0 0\n"
        )
        .is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let s =
            Samples::<f32>::dense(vec![vec![1.0], vec![3.0], vec![9.0]], vec![0, 0, 1], 2).unwrap();
        let m = NaiveBayesModel::train(&s, &NaiveBayesConfig::default()).unwrap();
        assert_eq!(m.predict(&[Some(2.0)]), 0);
        assert_eq!(m.predict(&[Some(9.0)]), 1);
    }

    proptest! {
        #[test]
        fn posterior_is_a_distribution(
            values in proptest::collection::vec(-5.0f64..5.0, 12),
            labels in proptest::collection::vec(0usize..3, 6),
            probe in proptest::collection::vec(-10.0f64..10.0, 2),
        ) {
            let rows: Vec<Vec<f64>> = values.chunks(2).map(<[f64]>::to_vec).collect();
            let s = Samples::dense(rows, labels, 3).unwrap();
            let m = NaiveBayesModel::train(&s, &config(1e-3)).unwrap();
            let p = m.posterior(&[Some(probe[0]), Some(probe[1])]);
            let total: f64 = p.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(p.iter().all(|&x| (0.0..=1.0).contains(&x)));
        }

        #[test]
        fn argmax_ignores_common_shift(
            scores in proptest::collection::vec(-50.0f64..50.0, 6),
            shift in -100.0f64..100.0,
        ) {
            let shifted: Vec<f64> = scores.iter().map(|s| s + shift).collect();
            prop_assert_eq!(argmax(&normalize_log(&scores)), argmax(&normalize_log(&shifted)));
        }
    }
}
