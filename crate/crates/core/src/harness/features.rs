//! Per-image feature extraction and the feature cache file.
//!
//! Cache format: CSV with a header row; one row per image holding
//! `source_path, class, subclass` followed by 60 feature columns (48 color,
//! 8 texture, 4 shape). Floats are written in shortest round-trip form so a
//! reload reproduces every bit.

use std::path::Path;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::corpus::CorpusManifest;
use crate::color::{extract_color, ColorFeature, PartitionGrid, COLOR_DIMS, PARTITIONS};
use crate::error::{Error, Result};
use crate::fusion::{fuse, Combo};
use crate::imaging::{load_image, resize, to_grayscale, RgbRaster};
use crate::label::LogoClass;
use crate::shape::{extract_shape, ShapeConfig, ShapeFeature, SHAPE_DIMS};
use crate::texture::{extract_texture, TextureFeature, TextureParams, TEXTURE_DIMS};

pub const FEATURE_DIMS: usize = COLOR_DIMS + TEXTURE_DIMS + SHAPE_DIMS;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionSettings {
    pub canonical_size: usize,
    pub grid: PartitionGrid,
    pub texture: TextureParams,
    pub shape: ShapeConfig,
}

impl Default for ExtractionSettings {
    fn default() -> Self {
        Self::from(&ExperimentConfig::default())
    }
}

impl From<&ExperimentConfig> for ExtractionSettings {
    fn from(c: &ExperimentConfig) -> Self {
        Self {
            canonical_size: c.canonical_size,
            grid: c.partition_grid,
            texture: c.texture,
            shape: c.shape,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageFeatures {
    pub color: ColorFeature,
    pub texture: TextureFeature,
    pub shape: ShapeFeature,
}

impl ImageFeatures {
    /// Raw (unnormalized) row for one combination.
    pub fn row(&self, combo: Combo) -> Vec<f64> {
        let (c, t, s) = combo.members();
        fuse(
            c.then_some(&self.color),
            t.then_some(&self.texture),
            s.then_some(&self.shape),
            combo,
        )
        .expect("members always match the combo")
    }
}

/// Resize to the canonical size, then run all three extractors.
pub fn extract_raster(raster: &RgbRaster, settings: &ExtractionSettings) -> Result<ImageFeatures> {
    let canonical = resize(raster, settings.canonical_size, settings.canonical_size)?;
    let gray = to_grayscale(&canonical);
    Ok(ImageFeatures {
        color: extract_color(&canonical, settings.grid)?,
        texture: extract_texture(&gray, settings.texture)?,
        shape: extract_shape(&gray, settings.shape)?,
    })
}

pub fn extract_file(path: &Path, settings: &ExtractionSettings) -> Result<ImageFeatures> {
    let raster = load_image(path)?;
    extract_raster(&raster, settings).map_err(|e| e.at(path))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRecord {
    pub source_path: String,
    pub class: LogoClass,
    pub subclass: String,
    pub features: ImageFeatures,
}

#[derive(Debug)]
pub struct ExtractionOutcome {
    /// Successful records in manifest order.
    pub records: Vec<FeatureRecord>,
    pub failures: Vec<(String, Error)>,
}

/// Extracts every manifest entry in parallel; failures are collected, not fatal.
pub fn extract_corpus(manifest: &CorpusManifest, settings: &ExtractionSettings) -> ExtractionOutcome {
    let results: Vec<_> = manifest
        .entries()
        .par_iter()
        .map(|e| (e, extract_file(&manifest.absolute_path(e), settings)))
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (e, r) in results {
        match r {
            Ok(features) => records.push(FeatureRecord {
                source_path: e.path.clone(),
                class: e.class,
                subclass: e.subclass.clone(),
                features,
            }),
            Err(err) => failures.push((e.path.clone(), err)),
        }
    }
    ExtractionOutcome { records, failures }
}

pub fn cache_header() -> Vec<String> {
    let mut h: Vec<String> = ["source_path", "class", "subclass"].map(String::from).to_vec();
    let chan = ["r", "g", "b"];
    for i in 1..=PARTITIONS {
        for c in chan {
            h.push(format!("color_mean_p{i}_{c}"));
        }
    }
    for i in 1..=PARTITIONS {
        for c in chan {
            h.push(format!("color_pct_p{i}_{c}"));
        }
    }
    for o in ["0", "45", "m45", "90"] {
        h.push(format!("texture_mean_{o}"));
        h.push(format!("texture_std_{o}"));
    }
    h.extend(["shape_amp_h", "shape_phase_h", "shape_amp_v", "shape_phase_v"].map(String::from));
    h
}

pub fn write_feature_cache(path: &Path, records: &[FeatureRecord]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let csv_err = |e: csv::Error| Error::from(std::io::Error::other(e)).at(path);
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(cache_header()).map_err(csv_err)?;
    for r in records {
        let mut row = vec![r.source_path.clone(), r.class.to_string(), r.subclass.clone()];
        row.extend(r.features.row(Combo::CTS).iter().map(|v| v.to_string()));
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_feature_cache(path: &Path) -> Result<Vec<FeatureRecord>> {
    let bad = |reason: String| Error::Format {
        path: path.to_path_buf(),
        reason,
    };
    let mut rdr = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    if header != cache_header() {
        return Err(bad("unexpected header".into()));
    }
    let mut records = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let at = |msg: String| bad(format!("row {}: {msg}", line + 1));
        let class: LogoClass = row[1].parse().map_err(|e: Error| at(e.to_string()))?;
        let values = row
            .iter()
            .skip(3)
            .map(|v| v.parse::<f64>().map_err(|e| at(format!("{v:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != FEATURE_DIMS {
            return Err(at(format!("expected {FEATURE_DIMS} values, found {}", values.len())));
        }
        records.push(FeatureRecord {
            source_path: row[0].to_string(),
            class,
            subclass: row[2].to_string(),
            features: ImageFeatures {
                color: ColorFeature::from_slice(&values[..COLOR_DIMS])?,
                texture: TextureFeature::from_slice(&values[COLOR_DIMS..COLOR_DIMS + TEXTURE_DIMS])?,
                shape: ShapeFeature::from_slice(&values[COLOR_DIMS + TEXTURE_DIMS..])?,
            },
        });
    }
    records.sort_by(|a, b| a.source_path.cmp(&b.source_path));
    Ok(records)
}
