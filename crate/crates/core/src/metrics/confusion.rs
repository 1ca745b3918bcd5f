use super::PredictionTrace;
use crate::error::{Error, Result};
use crate::Scalar;

/// Counts indexed `[true][predicted]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    n_classes: usize,
    counts: Vec<usize>,
}

/// One-vs-rest rates for a single class. Zero denominators yield 0 and
/// set `degenerate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassRates<T> {
    pub tpr: T,
    pub fpr: T,
    pub specificity: T,
    pub precision: T,
    pub recall: T,
    pub f_measure: T,
    pub degenerate: bool,
}

impl ConfusionMatrix {
    pub fn new(n_classes: usize) -> Self {
        ConfusionMatrix {
            n_classes,
            counts: vec![0; n_classes * n_classes],
        }
    }

    /// Builds from rows of counts. Panics on a non-square input.
    pub fn from_rows(rows: &[Vec<usize>]) -> Self {
        let k = rows.len();
        let mut m = ConfusionMatrix::new(k);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), k, "confusion matrix must be square");
            for (j, &c) in row.iter().enumerate() {
                m.counts[i * k + j] = c;
            }
        }
        m
    }

    pub fn from_trace<T: Scalar>(trace: &PredictionTrace<T>) -> Self {
        let mut m = ConfusionMatrix::new(trace.n_classes);
        for r in &trace.records {
            m.add(r.true_class, r.predicted);
        }
        m
    }

    pub fn add(&mut self, actual: usize, predicted: usize) {
        self.counts[actual * self.n_classes + predicted] += 1;
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn get(&self, actual: usize, predicted: usize) -> usize {
        self.counts[actual * self.n_classes + predicted]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.counts
            .chunks(self.n_classes.max(1))
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn correct(&self) -> usize {
        (0..self.n_classes).map(|c| self.get(c, c)).sum()
    }

    /// Row sums.
    pub fn supports(&self) -> Vec<usize> {
        (0..self.n_classes)
            .map(|c| (0..self.n_classes).map(|j| self.get(c, j)).sum())
            .collect()
    }

    /// Column sums.
    pub fn predicted_counts(&self) -> Vec<usize> {
        (0..self.n_classes)
            .map(|c| (0..self.n_classes).map(|i| self.get(i, c)).sum())
            .collect()
    }

    /// `(tp, fp, fn, tn)` treating `class` as positive.
    pub fn one_vs_rest(&self, class: usize) -> (usize, usize, usize, usize) {
        let tp = self.get(class, class);
        let fn_ = self.supports()[class] - tp;
        let fp = self.predicted_counts()[class] - tp;
        let tn = self.total() - tp - fn_ - fp;
        (tp, fp, fn_, tn)
    }

    pub fn accuracy<T: Scalar>(&self) -> Result<T> {
        let total = self.total();
        if total == 0 {
            return Err(Error::Undefined(
                "accuracy of an empty confusion matrix".into(),
            ));
        }
        Ok(T::of_usize(self.correct()) / T::of_usize(total))
    }

    pub fn class_rates<T: Scalar>(&self, class: usize) -> ClassRates<T> {
        let (tp, fp, fn_, tn) = self.one_vs_rest(class);
        let mut degenerate = false;
        let mut ratio = |num: usize, den: usize| {
            if den == 0 {
                degenerate = true;
                T::zero()
            } else {
                T::of_usize(num) / T::of_usize(den)
            }
        };
        let tpr = ratio(tp, tp + fn_);
        let specificity = ratio(tn, tn + fp);
        let fpr = ratio(fp, fp + tn);
        let precision = ratio(tp, tp + fp);
        let f_measure = if precision + tpr > T::zero() {
            T::of(2.0) * precision * tpr / (precision + tpr)
        } else {
            degenerate = true;
            T::zero()
        };
        ClassRates {
            tpr,
            fpr,
            specificity,
            precision,
            recall: tpr,
            f_measure,
            degenerate,
        }
    }
}

/// `Σ support_c · value_c / Σ support_c`.
pub fn weighted_average<T: Scalar>(values: &[T], supports: &[usize]) -> Result<T> {
    assert_eq!(values.len(), supports.len());
    let total: usize = supports.iter().sum();
    if total == 0 {
        return Err(Error::Undefined(
            "weighted average with zero total support".into(),
        ));
    }
    let s: T = values
        .iter()
        .zip(supports)
        .map(|(&v, &n)| v * T::of_usize(n))
        .sum();
    Ok(s / T::of_usize(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    #[test]
    fn empty_trace_gives_zero_matrix() {
        let m = ConfusionMatrix::from_trace(&PredictionTrace::<f64>::new(6));
        assert_eq!(m.total(), 0);
        assert!(m.accuracy::<f64>().is_err());
    }

    #[test]
    fn four_correct_predictions() {
        let mut t = PredictionTrace::new(2);
        for (i, c) in [0, 0, 1, 1].into_iter().enumerate() {
            let mut p = vec![0.0; 2];
            p[c] = 1.0;
            t.push(i, c, p, 0);
        }
        let m = ConfusionMatrix::from_trace(&t);
        assert_eq!(m.rows(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(m.accuracy::<f64>().unwrap(), 1.0);
    }

    #[test]
    fn two_by_two_accuracy() {
        let m = ConfusionMatrix::from_rows(&[vec![8, 2], vec![3, 7]]);
        assert_eq!(m.accuracy::<f64>().unwrap(), 0.75);
    }

    #[test]
    fn tally_matches_second_pass() {
        let mut rng = SplitMix64::new(17);
        let mut t = PredictionTrace::new(6);
        for i in 0..50 {
            let p: Vec<f64> = (0..6).map(|_| rng.next_f64() + 1e-3).collect();
            let s: f64 = p.iter().sum();
            t.push(i, rng.below(6), p.iter().map(|x| x / s).collect(), 0);
        }
        let m = ConfusionMatrix::from_trace(&t);
        for a in 0..6 {
            for b in 0..6 {
                let n = t
                    .records
                    .iter()
                    .filter(|r| {
                        let best = (0..6)
                            .rev()
                            .max_by(|&x, &y| {
                                r.probabilities[x].partial_cmp(&r.probabilities[y]).unwrap()
                            })
                            .unwrap();
                        r.true_class == a && best == b
                    })
                    .count();
                assert_eq!(m.get(a, b), n);
            }
        }
    }

    #[test]
    fn rate_arithmetic() {
        // class 0: TP 8, FN 2, FP 1, TN 9
        let m = ConfusionMatrix::from_rows(&[vec![8, 2], vec![1, 9]]);
        let r = m.class_rates::<f64>(0);
        assert!((r.tpr - 0.8).abs() < 1e-15);
        assert!((r.specificity - 0.9).abs() < 1e-15);
        assert!((r.fpr - 0.1).abs() < 1e-15);
        assert!(!r.degenerate);
    }

    #[test]
    fn f_measure_of_precision_one_recall_half() {
        // TP 1, FN 1, FP 0
        let m = ConfusionMatrix::from_rows(&[vec![1, 1], vec![0, 3]]);
        let r = m.class_rates::<f64>(0);
        assert_eq!(r.precision, 1.0);
        assert_eq!(r.recall, 0.5);
        assert!((r.f_measure - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn absent_class_is_flagged() {
        let m = ConfusionMatrix::from_rows(&[vec![3, 0], vec![0, 0]]);
        let r = m.class_rates::<f64>(1);
        assert!(r.degenerate);
        assert_eq!(r.tpr, 0.0);
        assert_eq!(r.precision, 0.0);
    }

    #[test]
    fn weighted_average_cases() {
        let v = [0.2f64, 0.4, 0.9];
        assert!((weighted_average(&v, &[5, 5, 5]).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(weighted_average(&v, &[100, 0, 0]).unwrap(), 0.2);
        assert!(weighted_average(&v, &[0, 0, 0]).is_err());
    }

    fn random_matrix(seed: u64, k: usize) -> ConfusionMatrix {
        let mut rng = SplitMix64::new(seed);
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|_| (0..k).map(|_| rng.below(20)).collect())
            .collect();
        ConfusionMatrix::from_rows(&rows)
    }

    #[test]
    fn weighted_tpr_is_accuracy_on_random_matrices() {
        for seed in 0..100 {
            let m = random_matrix(seed, 6);
            if m.total() == 0 {
                continue;
            }
            let tprs: Vec<f64> = (0..6).map(|c| m.class_rates::<f64>(c).tpr).collect();
            let w = weighted_average(&tprs, &m.supports()).unwrap();
            assert!((w - m.accuracy::<f64>().unwrap()).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn rates_are_unit_interval(seed in any::<u64>(), k in 2usize..7) {
            let m = random_matrix(seed, k);
            for c in 0..k {
                let r = m.class_rates::<f64>(c);
                for v in [r.tpr, r.fpr, r.specificity, r.precision, r.recall, r.f_measure] {
                    prop_assert!((0.0..=1.0).contains(&v));
                }
            }
        }

        #[test]
        fn binary_accuracy_decomposes(a in 0usize..30, b in 0usize..30, c in 0usize..30, d in 0usize..30) {
            prop_assume!(a + b > 0 && c + d > 0);
            let m = ConfusionMatrix::from_rows(&[vec![a, b], vec![c, d]]);
            let r = m.class_rates::<f64>(0);
            let (p, n) = ((a + b) as f64, (c + d) as f64);
            let acc = m.accuracy::<f64>().unwrap();
            prop_assert!((acc - (r.tpr * p + r.specificity * n) / (p + n)).abs() < 1e-12);
        }
    }
}
