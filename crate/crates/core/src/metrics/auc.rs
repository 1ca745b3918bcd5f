use super::PredictionTrace;
use crate::error::{Error, Result};
use crate::Scalar;

fn scores<T: Scalar>(trace: &PredictionTrace<T>, class: usize) -> (Vec<T>, Vec<bool>) {
    trace
        .records
        .iter()
        .map(|r| (r.probabilities[class], r.true_class == class))
        .unzip()
}

/// One-vs-rest AUC for `class` via the Mann-Whitney rank statistic; tied
/// scores receive half credit. Undefined when the trace lacks positives or
/// negatives for `class`.
pub fn roc_auc<T: Scalar>(trace: &PredictionTrace<T>, class: usize) -> Result<T> {
    let (s, pos) = scores(trace, class);
    let n_pos = pos.iter().filter(|&&p| p).count();
    let n_neg = pos.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::Undefined(format!(
            "AUC for class {} needs positives and negatives",
            class + 1
        )));
    }
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[a].partial_cmp(&s[b]).expect("NaN score"));
    // midranks (1-based) summed over positives
    let mut rank_sum = T::zero();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && s[order[j + 1]] == s[order[i]] {
            j += 1;
        }
        let mid = T::of_usize(i + j + 2) / T::of(2.0);
        for &k in &order[i..=j] {
            if pos[k] {
                rank_sum = rank_sum + mid;
            }
        }
        i = j + 1;
    }
    let np = T::of_usize(n_pos);
    let u = rank_sum - np * (np + T::one()) / T::of(2.0);
    Ok(u / (np * T::of_usize(n_neg)))
}

/// Support-weighted mean AUC over classes where it is defined.
pub fn weighted_auc<T: Scalar>(trace: &PredictionTrace<T>) -> Result<T> {
    let supports = trace.class_supports();
    let (mut num, mut den) = (T::zero(), 0usize);
    for (c, &n) in supports.iter().enumerate() {
        if let Ok(a) = roc_auc(trace, c) {
            num = num + a * T::of_usize(n);
            den += n;
        }
    }
    if den == 0 {
        return Err(Error::Undefined("AUC undefined for every class".into()));
    }
    Ok(num / T::of_usize(den))
}

/// ROC vertices `(fpr, tpr)` from (0,0) to (1,1), one per distinct score
/// threshold in decreasing order.
pub fn roc_points<T: Scalar>(trace: &PredictionTrace<T>, class: usize) -> Result<Vec<(T, T)>> {
    let (s, pos) = scores(trace, class);
    let n_pos = pos.iter().filter(|&&p| p).count();
    let n_neg = pos.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::Undefined(format!(
            "ROC for class {} needs both labels",
            class + 1
        )));
    }
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| s[b].partial_cmp(&s[a]).expect("NaN score"));
    let mut points = vec![(T::zero(), T::zero())];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let t = s[order[i]];
        while i < order.len() && s[order[i]] == t {
            if pos[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push((
            T::of_usize(fp) / T::of_usize(n_neg),
            T::of_usize(tp) / T::of_usize(n_pos),
        ));
    }
    Ok(points)
}
