//! Exhaustive 1-nearest-neighbour classification under Euclidean distance.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fusion::FeatureMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample<L> {
    pub features: Vec<f64>,
    pub label: L,
    pub source_id: String,
}

/// Reference set for nearest-neighbour lookup. Immutable once built.
#[derive(Debug, Clone)]
pub struct TrainedModel<L> {
    references: Vec<LabeledSample<L>>,
    dims: usize,
    k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction<L> {
    pub label: L,
    pub source_id: String,
    /// Position of the winning reference in the training list.
    pub index: usize,
    pub distance: f64,
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::ShapeMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(squared_distance(a, b).sqrt())
}

#[inline]
fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            d * d
        })
        .sum()
}

impl<L: Clone> TrainedModel<L> {
    pub fn new(references: Vec<LabeledSample<L>>) -> Result<Self> {
        let dims = references
            .first()
            .ok_or_else(|| Error::EmptyDataset("model needs at least one reference".into()))?
            .features
            .len();
        if let Some(bad) = references.iter().find(|r| r.features.len() != dims) {
            return Err(Error::ShapeMismatch {
                expected: dims,
                found: bad.features.len(),
            });
        }
        Ok(Self { references, dims, k: 1 })
    }

    pub fn references(&self) -> &[LabeledSample<L>] {
        &self.references
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Nearest reference; on equal distance the lowest index wins.
    pub fn classify(&self, query: &[f64]) -> Result<Prediction<L>> {
        if query.len() != self.dims {
            return Err(Error::ShapeMismatch {
                expected: self.dims,
                found: query.len(),
            });
        }
        let mut best = (0, f64::INFINITY);
        for (i, r) in self.references.iter().enumerate() {
            let d = squared_distance(&r.features, query);
            if d < best.1 {
                best = (i, d);
            }
        }
        let winner = &self.references[best.0];
        Ok(Prediction {
            label: winner.label.clone(),
            source_id: winner.source_id.clone(),
            index: best.0,
            distance: best.1.sqrt(),
        })
    }
}

impl<L: Clone + Send + Sync> TrainedModel<L> {
    /// Order-preserving batch classification.
    pub fn classify_batch(&self, queries: &FeatureMatrix) -> Result<Vec<Prediction<L>>> {
        if queries.rows() > 0 && queries.cols() != self.dims {
            return Err(Error::ShapeMismatch {
                expected: self.dims,
                found: queries.cols(),
            });
        }
        (0..queries.rows())
            .into_par_iter()
            .map(|i| self.classify(queries.row(i)))
            .collect()
    }
}
