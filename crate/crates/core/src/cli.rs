//! `logoclass` command line.
//!
//! Exit codes: 0 success, 1 fatal error, 2 partial success (some images
//! failed during `extract`). Data goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::config::{parse_combos, ConfigFile};
use crate::harness::experiment::{read_results, run_experiment, write_results};
use crate::harness::features::write_feature_cache;
use crate::harness::report::render_report;
use crate::harness::{extract_corpus, generate_synthetic_corpus, scan_corpus, ExperimentConfig, ExtractionSettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FATAL: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

pub const FEATURES_FILE: &str = "features.csv";

#[derive(Debug, Parser)]
#[command(
    name = "logoclass",
    version,
    about = "Color logo classification with fused color/texture/shape features"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract features for every corpus image into a feature cache CSV.
    Extract(ExtractArgs),
    /// Run the (combination x train percentage) experiment grid.
    Run(RunArgs),
    /// Render results.json as text tables.
    Report(ReportArgs),
    /// Write a seeded synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Config file (TOML key = value).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Corpus root, overrides `corpus_root`.
    #[arg(long, value_name = "DIR")]
    pub corpus: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, value_name = "INT")]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Output directory; the cache is written to DIR/features.csv.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Output directory for results.csv and results.json.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Comma-separated training percentages, e.g. `20,50,80`.
    #[arg(long, value_name = "LIST")]
    pub train_pcts: Option<String>,
    /// Comma-separated combinations from c,t,s,c+t,c+s,t+s,c+t+s.
    #[arg(long, value_name = "LIST")]
    pub combos: Option<String>,
    /// Split seed.
    #[arg(long, value_name = "INT")]
    pub seed: Option<u64>,
    /// Feature cache to read (or create), overrides `feature_cache`.
    #[arg(long, value_name = "PATH")]
    pub features: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// results.json, or a directory containing it.
    pub results: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Corpus root to create.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long, value_name = "INT", default_value_t = 10)]
    pub per_class: usize,
    #[arg(long, value_name = "INT", default_value_t = 0)]
    pub seed: u64,
}

fn split_list(raw: &str) -> Vec<&str> {
    raw.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn base_config(common: &CommonArgs) -> Result<ExperimentConfig> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut config = file.apply(ExperimentConfig::default())?;
    if let Some(root) = &common.corpus {
        config.corpus_root = root.clone();
    }
    if let Some(w) = common.workers {
        config.workers = w;
    }
    Ok(config)
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::config("workers", e.to_string()))
}

fn cmd_extract(args: &ExtractArgs) -> Result<i32> {
    let config = base_config(&args.common)?.validated()?;
    let manifest = scan_corpus(&config.corpus_root)?;
    let settings = ExtractionSettings::from(&config);
    let outcome = build_pool(config.workers)?.install(|| extract_corpus(&manifest, &settings));
    let out = args.out.join(FEATURES_FILE);
    write_feature_cache(&out, &outcome.records)?;

    let counts = crate::harness::corpus::class_counts(outcome.records.iter().map(|r| r.class));
    for (class, n) in &counts {
        println!("{class}\t{n}");
    }
    for (path, err) in &outcome.failures {
        eprintln!("failed\t{path}\t{}", err.root());
    }
    eprintln!(
        "wrote {} ({} ok, {} failed)",
        out.display(),
        outcome.records.len(),
        outcome.failures.len()
    );
    Ok(if outcome.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    })
}

fn cmd_run(args: &RunArgs) -> Result<i32> {
    let mut config = base_config(&args.common)?;
    if let Some(raw) = &args.train_pcts {
        config.train_percentages = split_list(raw)
            .into_iter()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::config("train_pcts", format!("not a number: {t:?}")))
            })
            .collect::<Result<_>>()?;
    }
    if let Some(raw) = &args.combos {
        config.combinations = parse_combos("combos", &split_list(raw))?;
    }
    if let Some(seed) = args.seed {
        config.split_seed = seed;
    }
    if let Some(f) = &args.features {
        config.feature_cache = Some(f.clone());
    }
    let config = config.validated()?;
    let results = run_experiment(&config)?;
    write_results(&args.out, &results)?;
    eprintln!(
        "wrote {} cells to {}",
        results.cells.len(),
        args.out.join("results.csv").display()
    );
    Ok(EXIT_OK)
}

fn cmd_report(args: &ReportArgs) -> Result<i32> {
    let path: &Path = &args.results;
    let file = if path.is_dir() {
        path.join("results.json")
    } else {
        path.to_path_buf()
    };
    let results = read_results(&file)?;
    print!("{}", render_report(&results));
    Ok(EXIT_OK)
}

fn cmd_synth(args: &SynthArgs) -> Result<i32> {
    if args.per_class < 2 {
        return Err(Error::config(
            "per_class",
            format!("must be at least 2, got {}", args.per_class),
        ));
    }
    let manifest = generate_synthetic_corpus(&args.out, args.per_class, args.seed)?;
    for (class, n) in manifest.counts() {
        println!("{class}\t{n}");
    }
    eprintln!("wrote {} images under {}", manifest.len(), args.out.display());
    Ok(EXIT_OK)
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Extract(a) => cmd_extract(a),
        Command::Run(a) => cmd_run(a),
        Command::Report(a) => cmd_report(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

/// Parses arguments, runs, and maps every outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_FATAL } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            EXIT_FATAL
        }
    }
}
