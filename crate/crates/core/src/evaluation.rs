//! Confusion matrix and the accuracy / precision / recall / F-measure suite.
//!
//! Rows of the confusion matrix are true classes, columns predicted ones.
//! All metrics are percentages carried at full precision; rounding to two
//! decimals only happens when a report is serialized.

use std::fmt::{Debug, Display};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix<L> {
    pub classes: Vec<L>,
    /// `counts[i][j]`: samples of true class `i` predicted as class `j`.
    pub counts: Vec<Vec<u64>>,
}

impl<L> ConfusionMatrix<L> {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn trace(&self) -> u64 {
        (0..self.counts.len()).map(|i| self.counts[i][i]).sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        self.counts.iter().map(|r| r[j]).sum()
    }
}

pub fn build_confusion<L: PartialEq + Clone + Debug>(
    truth: &[L],
    predicted: &[L],
    classes: &[L],
) -> Result<ConfusionMatrix<L>> {
    if truth.len() != predicted.len() {
        return Err(Error::ShapeMismatch {
            expected: truth.len(),
            found: predicted.len(),
        });
    }
    let index = |l: &L| {
        classes
            .iter()
            .position(|c| c == l)
            .ok_or_else(|| Error::Label(format!("{l:?}")))
    };
    let n = classes.len();
    let mut counts = vec![vec![0u64; n]; n];
    for (t, p) in truth.iter().zip(predicted) {
        counts[index(t)?][index(p)?] += 1;
    }
    Ok(ConfusionMatrix {
        classes: classes.to_vec(),
        counts,
    })
}

pub fn accuracy<L>(cm: &ConfusionMatrix<L>) -> Result<f64> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyDataset("confusion matrix has no samples".into()));
    }
    Ok(100.0 * cm.trace() as f64 / total as f64)
}

/// A class-wise ratio whose denominator was zero and was reported as 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "class", rename_all = "snake_case")]
pub enum Diagnostic {
    /// No sample was predicted as this class.
    PrecisionUndefined(String),
    /// No sample of this class was evaluated.
    RecallUndefined(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassScores {
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn class_precision_recall<L: Display>(cm: &ConfusionMatrix<L>) -> ClassScores {
    let n = cm.classes.len();
    let mut precision = Vec::with_capacity(n);
    let mut recall = Vec::with_capacity(n);
    let mut diagnostics = Vec::new();
    for i in 0..n {
        let hit = cm.counts[i][i] as f64;
        let (col, row) = (cm.col_sum(i), cm.row_sum(i));
        let name = || cm.classes[i].to_string();
        if col == 0 {
            precision.push(0.0);
            diagnostics.push(Diagnostic::PrecisionUndefined(name()));
        } else {
            precision.push(100.0 * hit / col as f64);
        }
        if row == 0 {
            recall.push(0.0);
            diagnostics.push(Diagnostic::RecallUndefined(name()));
        } else {
            recall.push(100.0 * hit / row as f64);
        }
    }
    ClassScores {
        precision,
        recall,
        diagnostics,
    }
}

/// Unweighted means of the class-wise precision and recall.
pub fn macro_metrics(precision: &[f64], recall: &[f64]) -> (f64, f64) {
    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    (mean(precision), mean(recall))
}

pub fn f_measure(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub per_class_precision: Vec<f64>,
    pub per_class_recall: Vec<f64>,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Diagnostic>,
}

impl MetricsReport {
    pub fn from_confusion<L: Display>(cm: &ConfusionMatrix<L>) -> Result<Self> {
        let accuracy = accuracy(cm)?;
        let scores = class_precision_recall(cm);
        let (precision, recall) = macro_metrics(&scores.precision, &scores.recall);
        Ok(Self {
            accuracy,
            f_measure: f_measure(precision, recall),
            precision,
            recall,
            per_class_precision: scores.precision,
            per_class_recall: scores.recall,
            diagnostics: scores.diagnostics,
        })
    }
}

/// Rounds half away from zero (half up for the non-negative metrics) to
/// `decimals` places.
pub fn round_half_up(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    let scaled = x * scale;
    // Snap values sitting within float noise of a .5 boundary before rounding.
    let nudged = scaled + scaled.signum() * 1e-9;
    (nudged.abs() + 0.5).floor().copysign(x) / scale
}

pub fn format_2dp(x: f64) -> String {
    format!("{:.2}", round_half_up(x, 2))
}
