//! Output files and the reproducibility manifest of one experiment.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct OutputDigest {
    pub file: String,
    pub sha256: String,
}

/// Everything needed to rerun an experiment and confirm the rerun: the
/// parameters, the code version, per-step timings and the digests of every
/// output file. Timings are the only wall-clock-dependent data.
#[derive(Debug, Serialize)]
pub struct ExperimentManifest {
    pub experiment: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub timings_ms: BTreeMap<String, u64>,
    pub outputs: Vec<OutputDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects outputs and timings while an experiment runs.
pub struct Recorder {
    dir: PathBuf,
    stem: String,
    manifest: ExperimentManifest,
}

impl Recorder {
    pub fn new(dir: &Path, experiment: &str, stem: String, parameters: serde_json::Value) -> Self {
        Recorder {
            dir: dir.to_path_buf(),
            stem,
            manifest: ExperimentManifest {
                experiment: experiment.to_string(),
                parameters,
                version: env!("CARGO_PKG_VERSION").to_string(),
                timings_ms: BTreeMap::new(),
                outputs: Vec::new(),
            },
        }
    }

    /// Run `f`, recording its wall-clock time under `step`.
    pub fn time<T>(&mut self, step: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.record_time(step, start.elapsed().as_millis() as u64);
        out
    }

    pub fn record_time(&mut self, step: &str, ms: u64) {
        self.manifest.timings_ms.insert(step.to_string(), ms);
    }

    /// Write `<stem>.<extension>` and record its digest.
    pub fn write(&mut self, extension: &str, contents: &str) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let file = format!("{}.{extension}", self.stem);
        let path = self.dir.join(&file);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.manifest.outputs.push(OutputDigest { file, sha256: sha256_hex(contents.as_bytes()) });
        Ok(path)
    }

    /// Write `<stem>.manifest.json`.
    pub fn finish(self) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let path = self.dir.join(format!("{}.manifest.json", self.stem));
        let body = serde_json::to_string_pretty(&self.manifest)? + "\n";
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
