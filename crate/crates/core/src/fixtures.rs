//! The bundled fixture corpus: sample configurations with their expected
//! models and scripts, listed in `fixtures/manifest.toml`.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::Vendor;

/// Directory of the bundled corpus.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Lex,
    Parse,
    SlotConflict,
}

/// Where a negative fixture must fail.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ExpectedError {
    pub kind: ErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub vendor: Vendor,
    pub config: PathBuf,
    /// Expected extracted model (JSON).
    pub model: Option<PathBuf>,
    /// Expected generated script.
    pub script: Option<PathBuf>,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub tags: Vec<String>,
    pub error: Option<ExpectedError>,
}

impl Fixture {
    pub fn is_positive(&self) -> bool {
        self.error.is_none()
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn config_text(&self) -> std::io::Result<String> {
        std::fs::read_to_string(&self.config)
    }
}

#[derive(Debug, Deserialize)]
struct Manifest {
    fixture: Vec<Fixture>,
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("bad manifest: {0}")]
    Manifest(#[from] toml::de::Error),
    #[error("fixture {fixture}: missing file {}", path.display())]
    MissingFile { fixture: String, path: PathBuf },
}

/// Reads `dir/manifest.toml`. Paths in the result are resolved against
/// `dir`; every config file must exist.
pub fn load_corpus(dir: &Path) -> Result<Vec<Fixture>, FixtureError> {
    let path = dir.join("manifest.toml");
    let text = std::fs::read_to_string(&path).map_err(|source| FixtureError::Io { path, source })?;
    let manifest: Manifest = toml::from_str(&text)?;
    let mut out = manifest.fixture;
    for f in &mut out {
        f.config = dir.join(&f.config);
        f.model = f.model.as_ref().map(|p| dir.join(p));
        f.script = f.script.as_ref().map(|p| dir.join(p));
        if !f.config.is_file() {
            return Err(FixtureError::MissingFile { fixture: f.name.clone(), path: f.config.clone() });
        }
    }
    Ok(out)
}

/// The bundled corpus.
pub fn corpus() -> Vec<Fixture> {
    load_corpus(&corpus_dir()).expect("bundled fixture manifest is valid")
}
