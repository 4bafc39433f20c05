//! Experiment grid: every (combination, training percentage) cell is split,
//! normalized on its own training rows, classified with 1-NN and scored.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::corpus::{class_counts, scan_corpus};
use super::features::{extract_corpus, read_feature_cache, write_feature_cache, ExtractionSettings, FeatureRecord};
use super::split::{stratified_split_labels, SplitAssignment};
use crate::classifier::{LabeledSample, TrainedModel};
use crate::error::{Error, Result};
use crate::evaluation::{build_confusion, format_2dp, ConfusionMatrix, MetricsReport};
use crate::fusion::{apply_normalizer, fit_normalizer, Combo, FeatureMatrix};
use crate::label::LogoClass;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub seed: u64,
    pub train_size: usize,
    pub test_size: usize,
    pub confusion: ConfusionMatrix<LogoClass>,
    pub metrics: MetricsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSpread {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

/// One row of a results table. The headline metrics are means over
/// `runs` (identical to the single run when `repeats = 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub combo: Combo,
    pub train_pct: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
    /// Population standard deviation across repeats; absent for a single run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread: Option<MetricSpread>,
    pub runs: Vec<RunResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub class_counts: BTreeMap<LogoClass, usize>,
    pub cells: Vec<CellResult>,
}

/// Loads features from the configured cache if it exists, otherwise scans
/// and extracts the corpus (writing the cache when one is configured).
/// Any extraction failure is fatal here.
pub fn load_or_extract(config: &ExperimentConfig) -> Result<Vec<FeatureRecord>> {
    if let Some(cache) = config.feature_cache.as_deref().filter(|p| p.exists()) {
        return read_feature_cache(cache);
    }
    let manifest = scan_corpus(&config.corpus_root)?;
    let outcome = extract_corpus(&manifest, &ExtractionSettings::from(config));
    if let Some((path, err)) = outcome.failures.into_iter().next() {
        return Err(match err {
            e @ Error::AtPath { .. } | e @ Error::ImageDecode { .. } => e,
            e => e.at(path),
        });
    }
    if let Some(cache) = &config.feature_cache {
        write_feature_cache(cache, &outcome.records)?;
    }
    Ok(outcome.records)
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config("workers", e.to_string()))?;
    Ok(pool.install(f))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResults> {
    config.validate()?;
    with_pool(config.workers, || {
        let records = load_or_extract(config)?;
        run_on_records(config, &records)
    })?
}

fn matrix_for(records: &[FeatureRecord], ids: &[usize], combo: Combo) -> FeatureMatrix {
    FeatureMatrix::from_rows(combo.dims(), ids.iter().map(|&i| records[i].features.row(combo)))
        .expect("rows built for this combo")
}

/// Scores one combination on one split.
pub fn evaluate_cell(records: &[FeatureRecord], split: &SplitAssignment, combo: Combo) -> Result<RunResult> {
    let train = matrix_for(records, &split.train, combo);
    let test = matrix_for(records, &split.test, combo);
    let params = fit_normalizer(&train)?;
    let train = apply_normalizer(&train, &params)?;
    let test = apply_normalizer(&test, &params)?;

    let references = split
        .train
        .iter()
        .zip(train.iter_rows())
        .map(|(&i, row)| LabeledSample {
            features: row.to_vec(),
            label: records[i].class,
            source_id: records[i].source_path.clone(),
        })
        .collect();
    let model = TrainedModel::new(references)?;
    let predicted: Vec<LogoClass> = model.classify_batch(&test)?.into_iter().map(|p| p.label).collect();
    let truth: Vec<LogoClass> = split.test.iter().map(|&i| records[i].class).collect();
    let confusion = build_confusion(&truth, &predicted, &LogoClass::ALL)?;
    let metrics = MetricsReport::from_confusion(&confusion)?;
    Ok(RunResult {
        seed: split.seed,
        train_size: split.train.len(),
        test_size: split.test.len(),
        confusion,
        metrics,
    })
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn summarize(combo: Combo, train_pct: f64, runs: Vec<RunResult>) -> CellResult {
    let (accuracy, sa) = mean_std(runs.iter().map(|r| r.metrics.accuracy));
    let (precision, sp) = mean_std(runs.iter().map(|r| r.metrics.precision));
    let (recall, sr) = mean_std(runs.iter().map(|r| r.metrics.recall));
    let (f_measure, sf) = mean_std(runs.iter().map(|r| r.metrics.f_measure));
    let spread = (runs.len() > 1).then_some(MetricSpread {
        accuracy: sa,
        precision: sp,
        recall: sr,
        f_measure: sf,
    });
    CellResult {
        combo,
        train_pct,
        accuracy,
        precision,
        recall,
        f_measure,
        spread,
        runs,
    }
}

/// Runs the grid on already-extracted features. Records are sorted by path
/// first so reference order (and therefore 1-NN tie-breaking) is fixed.
pub fn run_on_records(config: &ExperimentConfig, records: &[FeatureRecord]) -> Result<ExperimentResults> {
    config.validate()?;
    if records.is_empty() {
        return Err(Error::EmptyDataset("no feature records".into()));
    }
    let mut records = records.to_vec();
    records.sort_by(|a, b| a.source_path.cmp(&b.source_path));
    let labels: Vec<LogoClass> = records.iter().map(|r| r.class).collect();

    // splits[p][r]: shared by every combination at that percentage
    let splits = config
        .train_percentages
        .iter()
        .map(|&pct| {
            (0..config.repeats)
                .map(|r| stratified_split_labels(&labels, pct, config.split_seed.wrapping_add(r as u64)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(Combo, usize)> = config
        .combinations
        .iter()
        .flat_map(|&c| (0..config.train_percentages.len()).map(move |p| (c, p)))
        .collect();
    let cells = jobs
        .par_iter()
        .map(|&(combo, p)| {
            let runs = splits[p]
                .iter()
                .map(|s| evaluate_cell(&records, s, combo))
                .collect::<Result<Vec<_>>>()?;
            Ok(summarize(combo, config.train_percentages[p], runs))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentResults {
        config: config.clone(),
        class_counts: class_counts(labels),
        cells,
    })
}

/// `50` for integral percentages, shortest decimal otherwise.
pub fn format_pct(pct: f64) -> String {
    if pct.fract() == 0.0 {
        format!("{}", pct as i64)
    } else {
        format!("{pct}")
    }
}

pub fn results_csv(results: &ExperimentResults) -> String {
    let mut out = String::from("combo,train_pct,accuracy,precision,recall,f_measure\n");
    for c in &results.cells {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.combo,
            format_pct(c.train_pct),
            format_2dp(c.accuracy),
            format_2dp(c.precision),
            format_2dp(c.recall),
            format_2dp(c.f_measure)
        ));
    }
    out
}

pub fn write_results(dir: &Path, results: &ExperimentResults) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("results.csv"), results_csv(results))?;
    let json = serde_json::to_string_pretty(results).map_err(std::io::Error::other)?;
    std::fs::write(dir.join("results.json"), json + "\n")?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<ExperimentResults> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).at(path))?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })
}
