//! Corpus ingestion, stratified splitting, experiment orchestration and
//! synthetic-corpus generation.

pub mod config;
pub mod corpus;
pub mod experiment;
pub mod features;
pub mod report;
pub mod split;
pub mod synth;

pub use config::ExperimentConfig;
pub use corpus::{scan_corpus, CorpusEntry, CorpusManifest};
pub use experiment::{run_experiment, run_on_records, CellResult, ExperimentResults, RunResult};
pub use features::{extract_corpus, ExtractionSettings, FeatureRecord, ImageFeatures};
pub use split::{stratified_split, SplitAssignment};
pub use synth::generate_synthetic_corpus;
