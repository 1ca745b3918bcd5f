use statrs::distribution::{ContinuousCDF, Normal};

use super::TreeNode;
use crate::Scalar;

/// Pessimistic number of extra errors to add to `errors` observed among `n`
/// instances: the upper bound of the binomial error rate at confidence `cf`
/// times `n`, minus `errors`.
///
/// Zero observed errors use the exact bound `1 − cf^(1/n)`; fractional
/// error counts below one interpolate linearly; otherwise the normal
/// approximation with continuity correction applies.
pub fn added_errors(n: f64, errors: f64, cf: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    if errors < 1.0 {
        let base = n * (1.0 - cf.powf(1.0 / n));
        if errors == 0.0 {
            return base;
        }
        return base + errors * (added_errors(n, 1.0, cf) - base);
    }
    if errors + 0.5 >= n {
        return (n - errors).max(0.0);
    }
    let z = Normal::standard().inverse_cdf(1.0 - cf);
    let f = (errors + 0.5) / n;
    let r = (f + z * z / (2.0 * n) + z * (f / n - f * f / n + z * z / (4.0 * n * n)).sqrt())
        / (1.0 + z * z / n);
    r * n - errors
}

fn training_errors(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let best = counts.iter().copied().max().unwrap_or(0);
    (total - best) as f64
}

fn leaf_estimate(counts: &[usize], cf: f64) -> f64 {
    let n: usize = counts.iter().sum();
    let e = training_errors(counts);
    e + added_errors(n as f64, e, cf)
}

fn subtree_estimate<T: Scalar>(node: &TreeNode<T>, cf: f64) -> f64 {
    match node {
        TreeNode::Leaf { counts, .. } => leaf_estimate(counts, cf),
        TreeNode::Internal { left, right, .. } => {
            subtree_estimate(left, cf) + subtree_estimate(right, cf)
        }
    }
}

/// Bottom-up pessimistic pruning: after pruning both children, a node is
/// replaced by a leaf carrying its class counts when the leaf's estimated
/// error does not exceed the subtree's.
pub fn prune<T: Scalar>(node: TreeNode<T>, cf: f64) -> TreeNode<T> {
    match node {
        TreeNode::Leaf { .. } => node,
        TreeNode::Internal {
            attribute,
            threshold,
            left,
            right,
        } => {
            let node = TreeNode::Internal {
                attribute,
                threshold,
                left: Box::new(prune(*left, cf)),
                right: Box::new(prune(*right, cf)),
            };
            let counts = node.distribution();
            if leaf_estimate(&counts, cf) <= subtree_estimate(&node, cf) {
                TreeNode::leaf(counts)
            } else {
                node
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_error_bound() {
        // 1 - 0.25^(1/6) for six instances
        let expected = 6.0 * (1.0 - 0.25f64.powf(1.0 / 6.0));
        assert!((added_errors(6.0, 0.0, 0.25) - expected).abs() < 1e-12);
    }

    #[test]
    fn normal_approximation_bound() {
        // n = 20, e = 3, z = Φ⁻¹(0.75) = 0.6744897501960817
        let z: f64 = 0.6744897501960817;
        let (n, e) = (20.0f64, 3.0f64);
        let f = 3.5 / 20.0;
        let r = (f + z * z / 40.0 + z * (f / n - f * f / n + z * z / 1600.0).sqrt())
            / (1.0 + z * z / n);
        assert!((added_errors(n, e, 0.25) - (r * n - e)).abs() < 1e-9);
    }

    #[test]
    fn more_confidence_adds_fewer_errors() {
        for &(n, e) in &[(10.0, 0.0), (10.0, 2.0), (50.0, 7.0), (3.0, 1.0)] {
            assert!(added_errors(n, e, 0.4) <= added_errors(n, e, 0.1));
        }
    }

    #[test]
    fn saturated_errors() {
        assert_eq!(added_errors(4.0, 4.0, 0.25), 0.0);
        assert!((added_errors(4.0, 3.6, 0.25) - 0.4).abs() < 1e-12);
    }
}
