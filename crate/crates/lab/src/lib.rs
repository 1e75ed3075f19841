//! Verification suites, JSON and CSV formats, and the command-line driver
//! for `prodseq-core`.

pub mod artifacts;
pub mod config;
pub mod json;
pub mod suites;
pub mod trace;

use prodseq_core::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown suite '{0}'; expected one of {list}", list = suites::SUITES.join(", "))]
    UnknownSuite(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        LabError::Io { path: path.as_ref().display().to_string(), source }
    }
}

/// Pretty JSON with a trailing newline, the form every report is written in.
pub fn to_pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn write_file(path: impl AsRef<std::path::Path>, contents: &str) -> Result<(), LabError> {
    let path = path.as_ref();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| LabError::io(path, e))
}
