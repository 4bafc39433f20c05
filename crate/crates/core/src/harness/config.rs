//! Experiment configuration.
//!
//! The on-disk form is a flat TOML table; every key is optional. Values are
//! layered as built-in defaults, then the file, then command-line overrides.
//!
//! ```toml
//! corpus_root = "corpus"
//! feature_cache = "out/features.csv"
//! canonical_size = 200
//! partition_rows = 2
//! partition_cols = 4
//! texture_sigma = 1.0
//! texture_radius = 3
//! shape_order = 4
//! shape_repetition = 2
//! train_percentages = [20, 30, 40, 50, 60, 70, 80]
//! combinations = ["c", "t", "s", "c+t", "c+s", "t+s", "c+t+s"]
//! split_seed = 1
//! repeats = 1
//! workers = 0
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::color::{PartitionGrid, PARTITIONS};
use crate::error::{Error, Result};
use crate::fusion::Combo;
use crate::shape::ShapeConfig;
use crate::texture::TextureParams;

pub const DEFAULT_TRAIN_PERCENTAGES: [f64; 7] = [20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0];
pub const DEFAULT_SPLIT_SEED: u64 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub corpus_root: PathBuf,
    pub feature_cache: Option<PathBuf>,
    pub canonical_size: usize,
    pub partition_grid: PartitionGrid,
    pub texture: TextureParams,
    pub shape: ShapeConfig,
    pub train_percentages: Vec<f64>,
    pub combinations: Vec<Combo>,
    pub split_seed: u64,
    pub repeats: usize,
    /// 0 means one worker per available core.
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            corpus_root: PathBuf::from("corpus"),
            feature_cache: None,
            canonical_size: 200,
            partition_grid: PartitionGrid::default(),
            texture: TextureParams::default(),
            shape: ShapeConfig::default(),
            train_percentages: DEFAULT_TRAIN_PERCENTAGES.to_vec(),
            combinations: Combo::ALL.to_vec(),
            split_seed: DEFAULT_SPLIT_SEED,
            repeats: 1,
            workers: 0,
        }
    }
}

/// Raw file contents before validation.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub corpus_root: Option<PathBuf>,
    pub feature_cache: Option<PathBuf>,
    pub canonical_size: Option<i64>,
    pub partition_rows: Option<i64>,
    pub partition_cols: Option<i64>,
    pub texture_sigma: Option<f64>,
    pub texture_radius: Option<i64>,
    pub shape_order: Option<i64>,
    pub shape_repetition: Option<i64>,
    pub train_percentages: Option<Vec<f64>>,
    pub combinations: Option<Vec<String>>,
    pub split_seed: Option<i64>,
    pub repeats: Option<i64>,
    pub workers: Option<i64>,
}

fn non_negative(key: &str, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::config(key, format!("must be non-negative, got {v}")))
}

fn positive(key: &str, v: i64) -> Result<usize> {
    match non_negative(key, v)? {
        0 => Err(Error::config(key, "must be at least 1")),
        n => Ok(n),
    }
}

/// Parses a comma-separated list of combination tokens, reporting errors
/// against `key`.
pub fn parse_combos(key: &str, tokens: &[impl AsRef<str>]) -> Result<Vec<Combo>> {
    tokens
        .iter()
        .map(|t| {
            t.as_ref()
                .parse::<Combo>()
                .map_err(|_| Error::config(key, format!("unknown combination {:?}", t.as_ref())))
        })
        .collect()
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            // Best effort: surface the key the parser complained about.
            let key = msg
                .split('`')
                .nth(1)
                .filter(|k| !k.is_empty())
                .unwrap_or("config")
                .to_string();
            Error::config(key, msg)
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).at(path))?;
        Self::parse(&text)
    }

    /// Applies the file's values on top of `base`.
    pub fn apply(self, mut base: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(v) = self.corpus_root {
            base.corpus_root = v;
        }
        if let Some(v) = self.feature_cache {
            base.feature_cache = Some(v);
        }
        if let Some(v) = self.canonical_size {
            base.canonical_size = positive("canonical_size", v)?;
        }
        if let Some(v) = self.partition_rows {
            base.partition_grid.rows = positive("partition_rows", v)?;
        }
        if let Some(v) = self.partition_cols {
            base.partition_grid.cols = positive("partition_cols", v)?;
        }
        if let Some(v) = self.texture_sigma {
            base.texture.sigma = v;
        }
        if let Some(v) = self.texture_radius {
            base.texture.radius = positive("texture_radius", v)?;
        }
        if let Some(v) = self.shape_order {
            base.shape.order =
                u32::try_from(v).map_err(|_| Error::config("shape_order", format!("must be non-negative, got {v}")))?;
        }
        if let Some(v) = self.shape_repetition {
            base.shape.repetition =
                i32::try_from(v).map_err(|_| Error::config("shape_repetition", format!("out of range: {v}")))?;
        }
        if let Some(v) = self.train_percentages {
            base.train_percentages = v;
        }
        if let Some(v) = self.combinations {
            base.combinations = parse_combos("combinations", &v)?;
        }
        if let Some(v) = self.split_seed {
            base.split_seed = non_negative("split_seed", v)? as u64;
        }
        if let Some(v) = self.repeats {
            base.repeats = positive("repeats", v)?;
        }
        if let Some(v) = self.workers {
            base.workers = non_negative("workers", v)?;
        }
        Ok(base)
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        ConfigFile::load(path)?.apply(Self::default())?.validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.canonical_size == 0 {
            return Err(Error::config("canonical_size", "must be at least 1"));
        }
        let grid = self.partition_grid;
        if grid.blocks() != PARTITIONS {
            return Err(Error::config(
                "partition_rows",
                format!("grid {}x{} must have exactly {PARTITIONS} blocks", grid.rows, grid.cols),
            ));
        }
        if !self.canonical_size.is_multiple_of(grid.rows) || !self.canonical_size.is_multiple_of(grid.cols) {
            return Err(Error::config(
                "canonical_size",
                format!(
                    "{} is not divisible by the {}x{} partition grid",
                    self.canonical_size, grid.rows, grid.cols
                ),
            ));
        }
        if !(self.texture.sigma.is_finite() && self.texture.sigma > 0.0) {
            return Err(Error::config("texture_sigma", "must be positive"));
        }
        if self.texture.radius == 0 {
            return Err(Error::config("texture_radius", "must be at least 1"));
        }
        if self.shape.validate().is_err() {
            return Err(Error::config(
                "shape_repetition",
                format!(
                    "|m| = {} exceeds order n = {}",
                    self.shape.repetition.unsigned_abs(),
                    self.shape.order
                ),
            ));
        }
        if self.train_percentages.is_empty() {
            return Err(Error::config("train_percentages", "must not be empty"));
        }
        if let Some(p) = self.train_percentages.iter().find(|p| !(**p > 0.0 && **p < 100.0)) {
            return Err(Error::config("train_percentages", format!("{p} is not in (0, 100)")));
        }
        if self.combinations.is_empty() {
            return Err(Error::config("combinations", "must not be empty"));
        }
        if self.repeats == 0 {
            return Err(Error::config("repeats", "must be at least 1"));
        }
        Ok(())
    }
}
