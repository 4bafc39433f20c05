//! Corpus layout: `<root>/<BOTH|TEXT|SYMBOL>/<subclass>/<image>.{png,jpg}`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::label::LogoClass;

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    /// Path relative to the corpus root, `/`-separated.
    pub path: String,
    pub class: LogoClass,
    pub subclass: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusManifest {
    pub root: PathBuf,
    entries: Vec<CorpusEntry>,
}

impl CorpusManifest {
    /// Sorts entries by path and drops repeated paths (first one wins).
    pub fn from_entries(root: impl Into<PathBuf>, entries: impl IntoIterator<Item = CorpusEntry>) -> Self {
        let mut by_path = BTreeMap::new();
        for e in entries {
            by_path.entry(e.path.clone()).or_insert(e);
        }
        Self {
            root: root.into(),
            entries: by_path.into_values().collect(),
        }
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<LogoClass> {
        self.entries.iter().map(|e| e.class).collect()
    }

    /// Per-class image counts, every class present (possibly 0).
    pub fn counts(&self) -> BTreeMap<LogoClass, usize> {
        class_counts(self.entries.iter().map(|e| e.class))
    }

    pub fn absolute_path(&self, entry: &CorpusEntry) -> PathBuf {
        self.root.join(&entry.path)
    }
}

pub fn class_counts(labels: impl IntoIterator<Item = LogoClass>) -> BTreeMap<LogoClass, usize> {
    let mut counts: BTreeMap<LogoClass, usize> = LogoClass::ALL.iter().map(|&c| (c, 0)).collect();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    counts
}

fn is_hidden(name: &str) -> bool {
    name.starts_with('.')
}

fn is_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

pub fn scan_corpus(root: impl AsRef<Path>) -> Result<CorpusManifest> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::CorpusLayout(format!("{} is not a directory", root.display())));
    }
    let mut entries = Vec::new();
    for top in std::fs::read_dir(root)? {
        let top = top?;
        let name = top.file_name().to_string_lossy().into_owned();
        if is_hidden(&name) || !top.file_type()?.is_dir() {
            continue;
        }
        let class: LogoClass = name.parse().map_err(|_| {
            Error::CorpusLayout(format!(
                "unknown class directory {name:?} (expected BOTH, TEXT or SYMBOL)"
            ))
        })?;
        for item in WalkDir::new(top.path()).min_depth(1).sort_by_file_name() {
            let item = item.map_err(|e| Error::CorpusLayout(e.to_string()))?;
            let rel = item.path().strip_prefix(root).expect("walk stays under root");
            let parts: Vec<String> = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy().into_owned())
                .collect();
            if parts.iter().any(|p| is_hidden(p)) || !item.file_type().is_file() || !is_image(item.path()) {
                continue;
            }
            if parts.len() < 3 {
                return Err(Error::CorpusLayout(format!(
                    "{} is not inside a subclass directory",
                    rel.display()
                )));
            }
            entries.push(CorpusEntry {
                path: parts.join("/"),
                class,
                subclass: parts[1].clone(),
            });
        }
    }
    let manifest = CorpusManifest::from_entries(root, entries);
    if manifest.is_empty() {
        return Err(Error::EmptyDataset(format!("no images under {}", root.display())));
    }
    Ok(manifest)
}
