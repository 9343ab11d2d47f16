//! The JSON run report and its CSV side files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::Overrides;
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub status: String,
    pub results: Value,
    pub warnings: Vec<String>,
    pub side_files: Vec<String>,
    pub versions: BTreeMap<String, String>,
}

/// What a command hands back: a results payload, warnings and CSV tables.
#[derive(Debug, Default)]
pub struct Output {
    pub results: Value,
    pub warnings: Vec<String>,
    pub tables: Vec<Table>,
}

/// A CSV side file, written only when an output directory is given.
#[derive(Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn write(&self, dir: &Path) -> Result<(), CliError> {
        let io = |e: csv::Error| CliError::Compute(format!("writing {}: {e}", self.name));
        let mut w = csv::Writer::from_path(dir.join(&self.name)).map_err(io)?;
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.flush()
            .map_err(|e| CliError::Compute(format!("writing {}: {e}", self.name)))
    }
}

/// SHA-256 over the config bytes, every referenced file and the overrides.
pub fn inputs_digest(inputs: &[(String, Vec<u8>)], overrides: &Overrides) -> String {
    let mut h = Sha256::new();
    for (name, bytes) in inputs {
        h.update(name.as_bytes());
        h.update([0u8]);
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    h.update(serde_json::to_vec(overrides).unwrap_or_default());
    hex::encode(h.finalize())
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        (
            "coarse-cover".to_string(),
            env!("CARGO_PKG_VERSION").to_string(),
        ),
        ("coarse-core".to_string(), coarse_core::VERSION.to_string()),
    ])
}

/// Writes `<command>.json` and the side files into `dir`; returns the report
/// text.
pub fn emit(
    command: &str,
    digest: String,
    status: &str,
    output: Output,
    dir: Option<&Path>,
) -> Result<String, CliError> {
    let side_files: Vec<String> = if dir.is_some() {
        output.tables.iter().map(|t| t.name.clone()).collect()
    } else {
        Vec::new()
    };
    let report = RunReport {
        command: command.to_string(),
        inputs_digest: digest,
        status: status.to_string(),
        results: output.results,
        warnings: output.warnings,
        side_files,
        versions: versions(),
    };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Compute(format!("serialising report: {e}")))?;
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Compute(format!("creating {}: {e}", dir.display())))?;
        for t in &output.tables {
            t.write(dir)?;
        }
        std::fs::write(dir.join(format!("{command}.json")), format!("{text}\n"))
            .map_err(|e| CliError::Compute(format!("writing report: {e}")))?;
    }
    Ok(text)
}
