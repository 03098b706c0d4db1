use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::thresholds;

/// Artifact sink for one command invocation.
pub struct Run {
    pub command: &'static str,
    /// Every parameter that can influence the results (never the thread
    /// count or the output directory).
    pub config: Value,
    pub seed: Option<u64>,
    out: PathBuf,
}

impl Run {
    pub fn new(command: &'static str, config: Value, seed: Option<u64>, out: &Path) -> Self {
        Run { command, config, seed, out: out.to_path_buf() }
    }

    pub fn config_hash(&self) -> String {
        // serde_json maps are ordered, so this string is canonical
        let canonical = json!({ "command": self.command, "config": self.config }).to_string();
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn provenance(&self) -> Value {
        json!({
            "tool": "plasma",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self.config,
            "config_hash": self.config_hash(),
            "seed": self.seed,
            "thresholds_version": thresholds::VERSION,
        })
    }

    fn path(&self, name: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.out).with_context(|| format!("cannot create output directory {}", self.out.display()))?;
        Ok(self.out.join(name))
    }

    /// Writes `body` plus the provenance record as pretty JSON.
    pub fn write_json(&self, name: &str, mut body: Value) -> Result<PathBuf> {
        body["provenance"] = self.provenance();
        let path = self.path(name)?;
        let mut text = serde_json::to_string_pretty(&body)?;
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    pub fn write_csv(&self, name: &str, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<PathBuf> {
        let path = self.path(name)?;
        let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = BufWriter::new(file);
        fill(&mut w)?;
        w.flush()?;
        Ok(path)
    }
}

/// Plain CSV table with 17-significant-digit floats.
pub fn write_table(w: &mut dyn Write, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| plasma_core::grid::fmt_f64(v)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}
