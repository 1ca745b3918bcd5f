use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::argmax;
use crate::Scalar;

/// One held-out prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord<T> {
    pub instance_id: usize,
    /// Zero-based true class.
    pub true_class: usize,
    pub probabilities: Vec<T>,
    /// Zero-based argmax of `probabilities`, lowest index on ties.
    pub predicted: usize,
    /// Fold the prediction was made in; selects the baseline for relative
    /// error measures.
    pub fold: usize,
}

/// Ordered collection of probabilistic predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionTrace<T> {
    pub n_classes: usize,
    pub records: Vec<PredictionRecord<T>>,
}

const KIND: &str = "trace";

impl<T: Scalar> PredictionTrace<T> {
    pub fn new(n_classes: usize) -> Self {
        PredictionTrace {
            n_classes,
            records: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        instance_id: usize,
        true_class: usize,
        probabilities: Vec<T>,
        fold: usize,
    ) {
        debug_assert_eq!(probabilities.len(), self.n_classes);
        debug_assert!(true_class < self.n_classes);
        let predicted = argmax(&probabilities);
        self.records.push(PredictionRecord {
            instance_id,
            true_class,
            probabilities,
            predicted,
            fold,
        });
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn class_supports(&self) -> Vec<usize> {
        let mut s = vec![0; self.n_classes];
        for r in &self.records {
            s[r.true_class] += 1;
        }
        s
    }

    /// `instance_id,true_class,p1,...,pK` per line; classes written 1-based,
    /// probabilities with 10 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 110);
        for r in &self.records {
            write!(out, "{},{}", r.instance_id, r.true_class + 1).unwrap();
            for p in &r.probabilities {
                write!(out, ",{:.9e}", p.as_f64()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Every line must carry `n_classes`
    /// probabilities summing to 1 within 1e-9. Records get fold 0.
    pub fn from_text(text: &str, n_classes: usize) -> Result<Self> {
        let mut trace = PredictionTrace::new(n_classes);
        for (i, line) in text.lines().enumerate() {
            let no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != n_classes + 2 {
                return Err(Error::format(
                    KIND,
                    no,
                    format!("expected {} fields, found {}", n_classes + 2, fields.len()),
                ));
            }
            let id: usize = fields[0]
                .parse()
                .map_err(|_| Error::format(KIND, no, "bad instance id"))?;
            let class: usize = fields[1]
                .parse()
                .map_err(|_| Error::format(KIND, no, "bad class"))?;
            if class == 0 || class > n_classes {
                return Err(Error::format(
                    KIND,
                    no,
                    format!("class {class} out of range"),
                ));
            }
            let probs = fields[2..]
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .ok()
                        .filter(|p| (0.0..=1.0).contains(p))
                        .map(T::of)
                        .ok_or_else(|| Error::format(KIND, no, format!("bad probability '{f}'")))
                })
                .collect::<Result<Vec<T>>>()?;
            let total: f64 = probs.iter().map(|p| p.as_f64()).sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::format(
                    KIND,
                    no,
                    format!("probabilities sum to {total}"),
                ));
            }
            trace.push(id, class - 1, probs, 0);
        }
        Ok(trace)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>, n_classes: usize) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text, n_classes)
    }
}
