//! Run manifests.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::{run_campaign, CampaignOutput};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: ExperimentConfig,
    pub version: String,
    pub master_seed: u64,
    /// Seconds since the Unix epoch.
    pub started: f64,
    pub finished: f64,
    pub outputs: Vec<PathBuf>,
}

pub(crate) fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64())
}

impl RunManifest {
    pub fn new(command: &str, config: &ExperimentConfig) -> Self {
        RunManifest {
            command: command.to_string(),
            master_seed: config.master_seed,
            config: config.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            started: now(),
            finished: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self, outputs: Vec<PathBuf>) {
        self.finished = now();
        self.outputs = outputs;
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// Runs the campaign recorded in a manifest again.
pub fn rerun_manifest(m: &RunManifest) -> Result<CampaignOutput> {
    run_campaign(&m.config)
}
