use serde::Serialize;

use super::PredictionTrace;
use crate::error::{Error, Result};
use crate::Scalar;

/// Predicts the training class frequencies for every instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselinePredictor<T> {
    pub priors: Vec<T>,
}

impl<T: Scalar> BaselinePredictor<T> {
    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(Error::NoInstances);
        }
        let n = T::of_usize(total);
        Ok(BaselinePredictor {
            priors: counts.iter().map(|&c| T::of_usize(c) / n).collect(),
        })
    }

    pub fn from_labels(labels: &[usize], n_classes: usize) -> Result<Self> {
        let mut counts = vec![0; n_classes];
        for &l in labels {
            counts[l] += 1;
        }
        Self::from_counts(&counts)
    }

    /// Class frequencies of the trace itself.
    pub fn from_trace(trace: &PredictionTrace<T>) -> Result<Self> {
        Self::from_counts(&trace.class_supports())
    }
}

fn one_hot<T: Scalar>(class: usize, c: usize) -> T {
    if class == c {
        T::one()
    } else {
        T::zero()
    }
}

fn sum_terms<T: Scalar>(trace: &PredictionTrace<T>, f: impl Fn(T) -> T) -> T {
    trace
        .records
        .iter()
        .flat_map(|r| {
            r.probabilities
                .iter()
                .enumerate()
                .map(move |(c, &p)| (p, one_hot::<T>(r.true_class, c)))
        })
        .map(|(p, a)| f(p - a))
        .sum()
}

fn baseline_sum<T: Scalar>(
    trace: &PredictionTrace<T>,
    baselines: &[BaselinePredictor<T>],
    f: impl Fn(T) -> T,
) -> Result<T> {
    let mut s = T::zero();
    for r in &trace.records {
        let b = match baselines.len() {
            1 => &baselines[0],
            _ => baselines
                .get(r.fold)
                .ok_or_else(|| Error::Undefined(format!("no baseline for fold {}", r.fold)))?,
        };
        for (c, &prior) in b.priors.iter().enumerate() {
            s = s + f(prior - one_hot::<T>(r.true_class, c));
        }
    }
    Ok(s)
}

fn require_records<T: Scalar>(trace: &PredictionTrace<T>) -> Result<T> {
    if trace.is_empty() {
        return Err(Error::Undefined("error measure of an empty trace".into()));
    }
    Ok(T::of_usize(trace.len() * trace.n_classes))
}

/// Mean of `|p - a|` over every (instance, class) term.
pub fn mae<T: Scalar>(trace: &PredictionTrace<T>) -> Result<T> {
    let n = require_records(trace)?;
    Ok(sum_terms(trace, |d| d.abs()) / n)
}

pub fn rmse<T: Scalar>(trace: &PredictionTrace<T>) -> Result<T> {
    let n = require_records(trace)?;
    Ok((sum_terms(trace, |d| d * d) / n).sqrt())
}

/// `Σ|p - a| / Σ|b - a|`. A single baseline applies to every record,
/// otherwise `baselines[record.fold]` is used.
pub fn rae<T: Scalar>(trace: &PredictionTrace<T>, baselines: &[BaselinePredictor<T>]) -> Result<T> {
    require_records(trace)?;
    let den = baseline_sum(trace, baselines, |d| d.abs())?;
    if den <= T::zero() {
        return Err(Error::Undefined(
            "relative absolute error: baseline is exact".into(),
        ));
    }
    Ok(sum_terms(trace, |d| d.abs()) / den)
}

/// `sqrt(Σ(p - a)² / Σ(b - a)²)`.
pub fn rrse<T: Scalar>(
    trace: &PredictionTrace<T>,
    baselines: &[BaselinePredictor<T>],
) -> Result<T> {
    require_records(trace)?;
    let den = baseline_sum(trace, baselines, |d| d * d)?;
    if den <= T::zero() {
        return Err(Error::Undefined(
            "root relative squared error: baseline is exact".into(),
        ));
    }
    Ok((sum_terms(trace, |d| d * d) / den).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn random_trace(seed: u64, n: usize, k: usize, folds: usize) -> PredictionTrace<f64> {
        let mut rng = SplitMix64::new(seed);
        let mut t = PredictionTrace::new(k);
        for i in 0..n {
            let p: Vec<f64> = (0..k).map(|_| rng.next_f64() + 1e-6).collect();
            let s: f64 = p.iter().sum();
            t.push(
                i,
                rng.below(k),
                p.iter().map(|x| x / s).collect(),
                i % folds,
            );
        }
        t
    }

    #[test]
    fn perfect_predictions_score_zero() {
        let mut t = PredictionTrace::new(6);
        for c in 0..6 {
            t.push(
                c,
                c,
                (0..6).map(|j| if j == c { 1.0 } else { 0.0 }).collect(),
                0,
            );
        }
        let b = BaselinePredictor::from_trace(&t).unwrap();
        assert_eq!(mae(&t).unwrap(), 0.0);
        assert_eq!(rmse(&t).unwrap(), 0.0);
        assert_eq!(rae(&t, std::slice::from_ref(&b)).unwrap(), 0.0);
        assert_eq!(rrse(&t, &[b]).unwrap(), 0.0);
    }

    #[test]
    fn single_instance_arithmetic() {
        let mut t = PredictionTrace::new(6);
        t.push(0, 0, vec![0.7f64, 0.3, 0.0, 0.0, 0.0, 0.0], 0);
        assert!((mae(&t).unwrap() - 0.1).abs() < 1e-15);
        assert!((rmse(&t).unwrap() - (0.18f64 / 6.0).sqrt()).abs() < 1e-15);
        assert!((rmse(&t).unwrap() - 0.1732).abs() < 1e-4);
    }

    #[test]
    fn baseline_predictions_score_one() {
        let b = BaselinePredictor::<f64>::from_counts(&[3, 1, 4, 2]).unwrap();
        let mut t = PredictionTrace::new(4);
        for (i, c) in [0, 2, 2, 1, 3].into_iter().enumerate() {
            t.push(i, c, b.priors.clone(), 0);
        }
        assert!((rae(&t, std::slice::from_ref(&b)).unwrap() - 1.0).abs() < 1e-15);
        assert!((rrse(&t, &[b]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn empty_and_degenerate_are_errors() {
        let t = PredictionTrace::<f64>::new(6);
        assert!(mae(&t).is_err());
        assert!(rmse(&t).is_err());
        let mut t = PredictionTrace::new(2);
        t.push(0, 0, vec![0.5, 0.5], 0);
        let b = BaselinePredictor::from_counts(&[4, 0]).unwrap();
        assert!(rae(&t, std::slice::from_ref(&b)).is_err());
        assert!(rrse(&t, &[b]).is_err());
    }

    #[test]
    fn brute_force_oracle_with_per_fold_baselines() {
        for seed in 0..20 {
            let t = random_trace(seed, 20, 6, 3);
            let baselines: Vec<_> = (0..3)
                .map(|f| BaselinePredictor::from_counts(&[1 + f, 2, 3, 1, 5 - f, 2]).unwrap())
                .collect();
            let (mut abs_p, mut sq_p, mut abs_b, mut sq_b) = (0.0, 0.0, 0.0, 0.0);
            for r in &t.records {
                for c in 0..6 {
                    let a = if c == r.true_class { 1.0 } else { 0.0 };
                    let p = r.probabilities[c];
                    let b = baselines[r.fold].priors[c];
                    abs_p += f64::abs(p - a);
                    sq_p += (p - a) * (p - a);
                    abs_b += f64::abs(b - a);
                    sq_b += (b - a) * (b - a);
                }
            }
            let n = 120.0;
            assert!((mae(&t).unwrap() - abs_p / n).abs() < 1e-12);
            assert!((rmse(&t).unwrap() - (sq_p / n).sqrt()).abs() < 1e-12);
            assert!((rae(&t, &baselines).unwrap() - abs_p / abs_b).abs() < 1e-12);
            assert!((rrse(&t, &baselines).unwrap() - (sq_p / sq_b).sqrt()).abs() < 1e-12);
            assert!(mae(&t).unwrap() <= rmse(&t).unwrap() && rmse(&t).unwrap() <= 1.0);
        }
    }

    #[test]
    fn baseline_priors_sum_to_one() {
        let b = BaselinePredictor::<f64>::from_labels(&[0, 1, 1, 5, 3, 3, 3], 6).unwrap();
        assert!((b.priors.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(BaselinePredictor::<f64>::from_counts(&[0, 0]).is_err());
    }
}
