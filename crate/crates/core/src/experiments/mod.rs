//! Seeded Monte Carlo campaigns.
//!
//! Trial `t` of a campaign uses the seed `derive_seed(master_seed, t)` and
//! nothing else, so records are independent of the worker count and of the
//! order in which trials finish.

mod bundle;
mod campaigns;
mod config;
mod manifest;
mod records;
mod regular;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{random_weights, BernoulliMask, DiagonalMode, SparseSymMatrix, WeightMatrix};
use crate::rng::{derive_seed, stream_seed, Stream};

pub use bundle::{FailureBundle, BUNDLE_WEIGHT_CAP};
pub use campaigns::{
    coupon_closed_form, run_coupon_threshold, run_dependency_classification,
    run_dregular_singularity, run_exposure_process, run_linear_lo, run_nonsymmetric_singularity,
    run_quadratic_lo, run_rank_agreement,
};
pub use config::{
    CoefficientLaw, EdgeProbability, ExperimentConfig, ExperimentKind, Fault, EXPERIMENT_NAMES,
};
pub use manifest::{rerun_manifest, RunManifest};
pub use records::{
    csv_header, read_csv, wilson_interval, write_csv, Rate, Status, Summary, Target, TrialRecord,
};
pub use regular::{random_regular_graph, RETRY_BUDGET};

/// One sampled `Q(W, p)` with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub seed: u64,
    pub weights: WeightMatrix,
    pub mask: BernoulliMask,
    pub q: SparseSymMatrix,
}

/// Samples the instance of a trial seed: weights and mask come from
/// independent streams.
pub fn sample_instance(
    n: usize,
    p: f64,
    diagonal_mode: DiagonalMode,
    seed: u64,
) -> Result<Instance> {
    let weights = random_weights(n, diagonal_mode, stream_seed(seed, Stream::Weights))?;
    let mask = BernoulliMask::sample(n, p, stream_seed(seed, Stream::Mask))?;
    let q = mask.apply(&weights)?;
    Ok(Instance {
        seed,
        weights,
        mask,
        q,
    })
}

/// Result of one campaign run.
#[derive(Debug, Clone)]
pub struct CampaignOutput {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
    pub bundles: Vec<FailureBundle>,
}

impl CampaignOutput {
    pub fn has_violations(&self) -> bool {
        !self.summary.hard_violations.is_empty()
    }

    pub fn csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        write_csv(&mut buf, &self.records)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OutputPaths {
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub bundles: Vec<PathBuf>,
}

/// Per-trial output: records plus an optional failure bundle.
pub(crate) struct TrialOutcome {
    pub records: Vec<TrialRecord>,
    pub violations: Vec<String>,
    pub bundle: Option<FailureBundle>,
}

impl TrialOutcome {
    pub fn single(record: TrialRecord) -> Self {
        TrialOutcome {
            records: vec![record],
            violations: Vec::new(),
            bundle: None,
        }
    }
}

/// Runs `trial(t, seed_t)` for every trial on `cfg.workers` threads.
pub(crate) fn run_trials<T: Send>(
    cfg: &ExperimentConfig,
    trial: impl Fn(usize, u64) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let job = || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| trial(t, derive_seed(cfg.master_seed, t as u64)))
            .collect::<Result<Vec<T>>>()
    };
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::param(format!("cannot start {w} workers: {e}")))?
            .install(job),
        None => job(),
    }
}

/// Collects trial outcomes into a campaign output.
pub(crate) fn assemble(outcomes: Vec<TrialOutcome>, summary: Summary) -> CampaignOutput {
    let mut out = CampaignOutput {
        records: Vec::new(),
        summary,
        bundles: Vec::new(),
    };
    for o in outcomes {
        out.records.extend(o.records);
        out.summary.hard_violations.extend(o.violations);
        out.bundles.extend(o.bundle);
    }
    out
}

/// Runs the campaign named by `cfg.experiment`.
pub fn run_campaign(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    cfg.validate()?;
    let start = Instant::now();
    let mut out = match cfg.experiment {
        ExperimentKind::RankAgreement => run_rank_agreement(cfg),
        ExperimentKind::DependencyClassification => run_dependency_classification(cfg),
        ExperimentKind::CouponThreshold => run_coupon_threshold(cfg),
        ExperimentKind::ExposureProcess => run_exposure_process(cfg),
        ExperimentKind::NonsymmetricSingularity => run_nonsymmetric_singularity(cfg),
        ExperimentKind::DregularSingularity => run_dregular_singularity(cfg),
        ExperimentKind::LinearLo => run_linear_lo(cfg),
        ExperimentKind::QuadraticLo => run_quadratic_lo(cfg),
    }?;
    out.summary.wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(out)
}

/// Writes `results.csv`, `summary.json` and `bundles/` under `dir`.
pub fn write_outputs(out: &CampaignOutput, dir: impl AsRef<Path>) -> Result<OutputPaths> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let csv = dir.join("results.csv");
    fs::write(&csv, out.csv_string()?)?;
    let summary = dir.join("summary.json");
    fs::write(&summary, serde_json::to_string_pretty(&out.summary)? + "\n")?;
    let p = out.summary.config.p();
    let bundles = out
        .bundles
        .iter()
        .map(|b| b.write(dir.join("bundles"), p))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutputPaths {
        csv,
        summary,
        bundles,
    })
}
