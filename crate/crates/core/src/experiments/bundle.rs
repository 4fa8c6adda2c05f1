//! Reproduction bundles for failed trials.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::matrix::io::write_matrix;
use crate::matrix::{Coefficient, Domain, SparseSymMatrix};

use super::Instance;

/// Weights are stored only up to this dimension.
pub const BUNDLE_WEIGHT_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct FailureBundle {
    pub trial_index: usize,
    pub seed: u64,
    pub reason: String,
    pub mask: SparseSymMatrix,
    pub weights: Option<SparseSymMatrix>,
    pub q: SparseSymMatrix,
}

#[derive(Serialize)]
struct BundleInfo<'a> {
    trial_index: usize,
    seed: u64,
    reason: &'a str,
    n: usize,
    mask_p: f64,
    weights_stored: bool,
}

impl FailureBundle {
    pub(crate) fn new(trial_index: usize, inst: &Instance, reason: String) -> Result<Self> {
        let n = inst.q.n();
        let ones = inst
            .mask
            .support()
            .iter()
            .map(|&(i, j)| (i, j, Coefficient::Prime(1)));
        Ok(FailureBundle {
            trial_index,
            seed: inst.seed,
            reason,
            mask: SparseSymMatrix::from_triplets(n, Domain::default(), ones)?,
            weights: (n <= BUNDLE_WEIGHT_CAP).then(|| inst.weights.to_sparse()),
            q: inst.q.clone(),
        })
    }

    /// Writes `trial-<index>/` under `dir` and returns its path.
    pub fn write(&self, dir: impl AsRef<Path>, mask_p: f64) -> Result<PathBuf> {
        let root = dir.as_ref().join(format!("trial-{:06}", self.trial_index));
        fs::create_dir_all(&root)?;
        let info = BundleInfo {
            trial_index: self.trial_index,
            seed: self.seed,
            reason: &self.reason,
            n: self.q.n(),
            mask_p,
            weights_stored: self.weights.is_some(),
        };
        fs::write(
            root.join("bundle.json"),
            serde_json::to_string_pretty(&info)? + "\n",
        )?;
        fs::write(root.join("mask.txt"), write_matrix(&self.mask))?;
        fs::write(root.join("q.txt"), write_matrix(&self.q))?;
        if let Some(w) = &self.weights {
            fs::write(root.join("weights.txt"), write_matrix(w))?;
        }
        Ok(root)
    }
}
