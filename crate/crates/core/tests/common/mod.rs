#![allow(dead_code)]

use std::path::PathBuf;

use esdbench::metrics::{BaselinePredictor, PredictionTrace};
use esdbench::rng::SplitMix64;

/// Class sizes of the published file, 366 instances in total.
pub const CLASS_SIZES: [usize; 6] = [112, 61, 72, 49, 52, 20];

/// `ESDBENCH_DATA`, else `data/dermatology.data` at the workspace root.
pub fn canonical_data() -> Option<PathBuf> {
    let path = std::env::var_os("ESDBENCH_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/dermatology.data")
        });
    path.is_file().then_some(path)
}

/// Text in the dermatology file layout: 34 attributes, class last, `?`
/// for unknown age. Each class has a prototype level per graded attribute
/// which instances keep with probability `fidelity`.
pub fn synthetic_esd_text(
    seed: u64,
    sizes: &[usize; 6],
    missing_ages: usize,
    fidelity: f64,
) -> String {
    let mut rng = SplitMix64::new(seed);
    let protos: Vec<Vec<u32>> = (0..6)
        .map(|_| (0..33).map(|_| rng.below(4) as u32).collect())
        .collect();
    let mut lines = Vec::new();
    for (c, &n) in sizes.iter().enumerate() {
        for _ in 0..n {
            let mut fields: Vec<String> = (0..33)
                .map(|j| {
                    let v = if j == 10 {
                        u32::from(rng.next_f64() < 0.1 + 0.1 * c as f64)
                    } else if rng.next_f64() < fidelity {
                        protos[c][j]
                    } else {
                        rng.below(4) as u32
                    };
                    v.to_string()
                })
                .collect();
            fields.push((8 + rng.below(70)).to_string());
            fields.push((c + 1).to_string());
            lines.push(fields);
        }
    }
    rng.shuffle(&mut lines);
    for line in lines.iter_mut().take(missing_ages) {
        line[33] = "?".to_string();
    }
    let mut text = String::new();
    for l in lines {
        text.push_str(&l.join(","));
        text.push('\n');
    }
    text
}

pub fn random_distribution(rng: &mut SplitMix64, k: usize) -> Vec<f64> {
    let p: Vec<f64> = (0..k).map(|_| rng.next_f64() + 1e-9).collect();
    let s: f64 = p.iter().sum();
    p.iter().map(|x| x / s).collect()
}

pub fn random_trace(
    rng: &mut SplitMix64,
    n: usize,
    k: usize,
    folds: usize,
) -> PredictionTrace<f64> {
    let mut t = PredictionTrace::new(k);
    for i in 0..n {
        let p = random_distribution(rng, k);
        let class = rng.below(k);
        t.push(i, class, p, i % folds);
    }
    t
}

pub fn random_baselines(
    rng: &mut SplitMix64,
    k: usize,
    folds: usize,
) -> Vec<BaselinePredictor<f64>> {
    (0..folds)
        .map(|_| {
            let counts: Vec<usize> = (0..k).map(|_| 1 + rng.below(30)).collect();
            BaselinePredictor::from_counts(&counts).unwrap()
        })
        .collect()
}

/// Brute-force evaluation straight from the record list.
pub struct Oracle {
    pub accuracy: f64,
    pub tpr: Vec<f64>,
    pub specificity: Vec<f64>,
    pub fpr: Vec<f64>,
    pub precision: Vec<f64>,
    pub f_measure: Vec<f64>,
    pub mae: f64,
    pub rmse: f64,
    pub rae: f64,
    pub rrse: f64,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

pub fn oracle(trace: &PredictionTrace<f64>, baselines: &[BaselinePredictor<f64>]) -> Oracle {
    let k = trace.n_classes;
    let recs = &trace.records;
    let pred = |p: &[f64]| {
        let mut best = 0;
        for c in 1..p.len() {
            if p[c] > p[best] {
                best = c;
            }
        }
        best
    };
    let correct = recs
        .iter()
        .filter(|r| pred(&r.probabilities) == r.true_class)
        .count();
    let (mut tpr, mut spec, mut fpr, mut prec, mut f) = (vec![], vec![], vec![], vec![], vec![]);
    for c in 0..k {
        let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
        for r in recs {
            match (r.true_class == c, pred(&r.probabilities) == c) {
                (true, true) => tp += 1,
                (false, true) => fp += 1,
                (true, false) => fn_ += 1,
                (false, false) => tn += 1,
            }
        }
        let (p, rc) = (ratio(tp, tp + fp), ratio(tp, tp + fn_));
        tpr.push(rc);
        spec.push(ratio(tn, tn + fp));
        fpr.push(ratio(fp, fp + tn));
        prec.push(p);
        f.push(if p + rc > 0.0 {
            2.0 * p * rc / (p + rc)
        } else {
            0.0
        });
    }
    let (mut ap, mut sp, mut ab, mut sb) = (0.0, 0.0, 0.0, 0.0);
    for r in recs {
        let b = if baselines.len() == 1 {
            &baselines[0]
        } else {
            &baselines[r.fold]
        };
        for c in 0..k {
            let a = if c == r.true_class { 1.0 } else { 0.0 };
            ap += (r.probabilities[c] - a).abs();
            sp += (r.probabilities[c] - a).powi(2);
            ab += (b.priors[c] - a).abs();
            sb += (b.priors[c] - a).powi(2);
        }
    }
    let terms = (recs.len() * k) as f64;
    Oracle {
        accuracy: correct as f64 / recs.len() as f64,
        tpr,
        specificity: spec,
        fpr,
        precision: prec,
        f_measure: f,
        mae: ap / terms,
        rmse: (sp / terms).sqrt(),
        rae: ap / ab,
        rrse: (sp / sb).sqrt(),
    }
}

/// AUC by counting concordant positive/negative pairs.
pub fn oracle_auc(trace: &PredictionTrace<f64>, class: usize) -> Option<f64> {
    let pos: Vec<f64> = trace
        .records
        .iter()
        .filter(|r| r.true_class == class)
        .map(|r| r.probabilities[class])
        .collect();
    let neg: Vec<f64> = trace
        .records
        .iter()
        .filter(|r| r.true_class != class)
        .map(|r| r.probabilities[class])
        .collect();
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    let mut s = 0.0;
    for &p in &pos {
        for &n in &neg {
            s += if p > n {
                1.0
            } else if p == n {
                0.5
            } else {
                0.0
            };
        }
    }
    Some(s / (pos.len() * neg.len()) as f64)
}

/// Max absolute deviation between the library's report and the oracle.
pub fn metric_deviation(trace: &PredictionTrace<f64>, baselines: &[BaselinePredictor<f64>]) -> f64 {
    use esdbench::metrics::*;
    let o = oracle(trace, baselines);
    let cm = ConfusionMatrix::from_trace(trace);
    let mut dev: f64 = (cm.accuracy::<f64>().unwrap() - o.accuracy).abs();
    for c in 0..trace.n_classes {
        let r = cm.class_rates::<f64>(c);
        for (a, b) in [
            (r.tpr, o.tpr[c]),
            (r.recall, o.tpr[c]),
            (r.specificity, o.specificity[c]),
            (r.fpr, o.fpr[c]),
            (r.precision, o.precision[c]),
            (r.f_measure, o.f_measure[c]),
        ] {
            dev = dev.max((a - b).abs());
        }
        match (roc_auc(trace, c).ok(), oracle_auc(trace, c)) {
            (Some(a), Some(b)) => dev = dev.max((a - b).abs()),
            (None, None) => {}
            _ => return f64::INFINITY,
        }
    }
    dev = dev.max((mae(trace).unwrap() - o.mae).abs());
    dev = dev.max((rmse(trace).unwrap() - o.rmse).abs());
    dev = dev.max((rae(trace, baselines).unwrap() - o.rae).abs());
    dev = dev.max((rrse(trace, baselines).unwrap() - o.rrse).abs());
    dev
}

/// Central-difference gradient check on a random network. Returns the
/// largest relative component error, with magnitudes below 1e-8 treated
/// as 1e-8.
pub fn gradient_check(seed: u64) -> f64 {
    use esdbench::mlp::MlpModel;
    let mut rng = SplitMix64::new(seed);
    let inputs = 1 + rng.below(6);
    let hidden = 1 + rng.below(6);
    let outputs = 2 + rng.below(5);
    let mut net = MlpModel::<f64>::init(inputs, hidden, outputs, 1.0, seed ^ 0x5eed);
    let x: Vec<f64> = (0..inputs).map(|_| rng.symmetric(1.0)).collect();
    let target = rng.below(outputs);
    let g = net.gradients(&x, target);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    fn weight(m: &mut MlpModel<f64>, layer: usize, i: usize) -> &mut f64 {
        if layer == 0 {
            &mut m.hidden_weights[i]
        } else {
            &mut m.output_weights[i]
        }
    }
    for layer in 0..2 {
        let n = if layer == 0 {
            net.hidden_weights.len()
        } else {
            net.output_weights.len()
        };
        for i in 0..n {
            let orig = *weight(&mut net, layer, i);
            *weight(&mut net, layer, i) = orig + h;
            let up = net.squared_error(&x, target);
            *weight(&mut net, layer, i) = orig - h;
            let down = net.squared_error(&x, target);
            *weight(&mut net, layer, i) = orig;
            let numeric = (up - down) / (2.0 * h);
            let analytic = if layer == 0 { g.hidden[i] } else { g.output[i] };
            let scale = analytic.abs().max(numeric.abs()).max(1e-8);
            worst = worst.max((analytic - numeric).abs() / scale);
        }
    }
    worst
}
