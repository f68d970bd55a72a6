//! Run manifests: every command records what it ran with and what it
//! produced, so a run is reproducible from its manifest alone.

use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub struct ManifestBuilder {
    command: String,
    config: Value,
    outputs: Vec<PathBuf>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(command: &str, config: Value) -> Self {
        ManifestBuilder {
            command: command.to_string(),
            config,
            outputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn record_output(&mut self, path: &Path) {
        self.outputs.push(path.to_path_buf());
    }

    pub fn finish(self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "versions": {
                "moleig": env!("CARGO_PKG_VERSION"),
            },
            "timing_ms": self.started.elapsed().as_millis() as u64,
            "outputs": self.outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        })
    }

    /// Write `manifest.json` into the output directory (if any) and return
    /// the manifest value.
    pub fn write(mut self, out_dir: Option<&Path>) -> std::io::Result<Value> {
        if let Some(dir) = out_dir {
            let path = dir.join("manifest.json");
            self.outputs.push(path.clone());
            let value = self.finish();
            std::fs::write(&path, serde_json::to_string_pretty(&value)?)?;
            Ok(value)
        } else {
            Ok(self.finish())
        }
    }
}
