//! Seeded stratified train/test splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::corpus::CorpusManifest;
use crate::error::{Error, Result};
use crate::label::LogoClass;

/// Indices into the sample list, each side sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitAssignment {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
    pub train_pct: f64,
}

/// Number of training samples for a class of `count` at `pct` percent:
/// `floor(pct·count/100)`, at least 1.
pub fn train_count(count: usize, pct: f64) -> usize {
    // tolerate float noise just below an integer boundary
    let exact = pct * count as f64 / 100.0;
    ((exact + 1e-9).floor() as usize).max(1)
}

pub fn stratified_split(manifest: &CorpusManifest, train_pct: f64, seed: u64) -> Result<SplitAssignment> {
    stratified_split_labels(&manifest.labels(), train_pct, seed)
}

/// Per class (in [`LogoClass::ALL`] order) shuffles that class's indices
/// with one ChaCha8 stream seeded by `seed` and takes the first
/// [`train_count`] for training.
pub fn stratified_split_labels(labels: &[LogoClass], train_pct: f64, seed: u64) -> Result<SplitAssignment> {
    if !(train_pct > 0.0 && train_pct < 100.0) {
        return Err(Error::Split(format!("train percentage {train_pct} is not in (0, 100)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in LogoClass::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        let n = members.len();
        if n == 0 {
            return Err(Error::Split(format!("class {class} has no samples")));
        }
        let k = train_count(n, train_pct);
        if k >= n {
            return Err(Error::Split(format!(
                "class {class} has {n} sample(s); {train_pct}% training leaves none for testing"
            )));
        }
        members.shuffle(&mut rng);
        train.extend_from_slice(&members[..k]);
        test.extend_from_slice(&members[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitAssignment {
        train,
        test,
        seed,
        train_pct,
    })
}
