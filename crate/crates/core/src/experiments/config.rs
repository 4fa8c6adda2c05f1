//! Flat key-value campaign configuration.
//!
//! ```toml
//! experiment = "rank-agreement"
//! n = 400
//! c = 3.0          # or: p = 0.05
//! s = 2
//! trials = 200
//! seed = 1
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DiagonalMode;

/// Names accepted by the `experiment` key.
pub const EXPERIMENT_NAMES: [&str; 8] = [
    "rank-agreement",
    "dependency-classification",
    "coupon-threshold",
    "exposure-process",
    "nonsymmetric-singularity",
    "dregular-singularity",
    "linear-lo",
    "quadratic-lo",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    RankAgreement,
    DependencyClassification,
    CouponThreshold,
    ExposureProcess,
    NonsymmetricSingularity,
    DregularSingularity,
    LinearLo,
    QuadraticLo,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        EXPERIMENT_NAMES[*self as usize]
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ExperimentKind::*;
        let all = [
            RankAgreement,
            DependencyClassification,
            CouponThreshold,
            ExposureProcess,
            NonsymmetricSingularity,
            DregularSingularity,
            LinearLo,
            QuadraticLo,
        ];
        all.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            Error::param(format!(
                "unknown experiment {s:?}; valid names: {}",
                EXPERIMENT_NAMES.join(", ")
            ))
        })
    }
}

/// Edge probability, either absolute or as `c ln n / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeProbability {
    Absolute(f64),
    Scaled(f64),
}

impl EdgeProbability {
    pub fn resolve(&self, n: usize) -> f64 {
        match *self {
            EdgeProbability::Absolute(p) => p,
            EdgeProbability::Scaled(c) => c * (n as f64).ln() / n as f64,
        }
    }
}

/// Coefficient sequence for linear anticoncentration campaigns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientLaw {
    /// `+1, -1, +1, ...`
    #[default]
    Balanced,
    /// All ones.
    Ones,
    /// Distinct nonzero integers from the trial seed.
    Generic,
}

/// Deliberate corruption of an oracle, used to exercise failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Reports a combinatorial rank one below the true value.
    CombinatorialUnderestimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub probability: EdgeProbability,
    pub s: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub diagonal_mode: DiagonalMode,
    /// Weight redraws per mask in the weight-independence sub-test.
    pub weight_redraws: usize,
    /// Number of masks in the weight-independence sub-test.
    pub redraw_masks: usize,
    pub override_hypotheses: bool,
    /// Evaluate the graph predicates on every trial.
    pub predicates: bool,
    /// Degree for `dregular-singularity`.
    pub d: Option<usize>,
    /// Exposure step: minors of size `stride, 2 stride, ..., n`.
    pub stride: usize,
    /// Compare zero and nonzero diagonals on the same mask.
    pub paired_diagonal: bool,
    /// Monte Carlo trials per anticoncentration estimate.
    pub lo_trials: u64,
    pub coefficients: CoefficientLaw,
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fault: Option<Fault>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: String,
    n: usize,
    p: Option<f64>,
    c: Option<f64>,
    s: Option<usize>,
    trials: usize,
    seed: Option<u64>,
    diagonal_mode: Option<String>,
    weight_redraws: Option<usize>,
    redraw_masks: Option<usize>,
    override_hypotheses: Option<bool>,
    predicates: Option<bool>,
    d: Option<usize>,
    stride: Option<usize>,
    paired_diagonal: Option<bool>,
    lo_trials: Option<u64>,
    coefficients: Option<CoefficientLaw>,
    workers: Option<usize>,
    inject_fault: Option<Fault>,
}

impl ExperimentConfig {
    /// Defaults for everything but the required fields.
    pub fn new(
        experiment: ExperimentKind,
        n: usize,
        probability: EdgeProbability,
        trials: usize,
        master_seed: u64,
    ) -> Self {
        ExperimentConfig {
            experiment,
            n,
            probability,
            s: 2,
            trials,
            master_seed,
            diagonal_mode: DiagonalMode::AllZero,
            weight_redraws: 5,
            redraw_masks: 20,
            override_hypotheses: false,
            predicates: false,
            d: None,
            stride: 1,
            paired_diagonal: false,
            lo_trials: 100_000,
            coefficients: CoefficientLaw::Balanced,
            workers: None,
            fault: None,
        }
    }

    /// Parses and validates a config document. `fallback_seed` is used when
    /// the document has no `seed` key.
    pub fn parse(text: &str, fallback_seed: Option<u64>) -> Result<Self> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| Error::param(format!("config: {}", e.message())))?;
        let experiment: ExperimentKind = raw.experiment.parse()?;
        let probability = match (raw.p, raw.c) {
            (Some(p), None) => EdgeProbability::Absolute(p),
            (None, Some(c)) => EdgeProbability::Scaled(c),
            (Some(_), Some(_)) => return Err(Error::param("config sets both p and c")),
            (None, None) if experiment == ExperimentKind::DregularSingularity => {
                EdgeProbability::Absolute(0.0)
            }
            (None, None) => return Err(Error::param("config needs p or c")),
        };
        let seed = raw
            .seed
            .or(fallback_seed)
            .ok_or_else(|| Error::param("config has no seed and no fallback seed was given"))?;
        let mut cfg = ExperimentConfig::new(experiment, raw.n, probability, raw.trials, seed);
        if let Some(s) = raw.s {
            cfg.s = s;
        }
        if let Some(m) = raw.diagonal_mode {
            cfg.diagonal_mode = m.parse()?;
        }
        cfg.weight_redraws = raw.weight_redraws.unwrap_or(cfg.weight_redraws);
        cfg.redraw_masks = raw.redraw_masks.unwrap_or(cfg.redraw_masks);
        cfg.override_hypotheses = raw.override_hypotheses.unwrap_or(false);
        cfg.predicates = raw.predicates.unwrap_or(false);
        cfg.d = raw.d;
        cfg.stride = raw.stride.unwrap_or(1);
        cfg.paired_diagonal = raw.paired_diagonal.unwrap_or(false);
        cfg.lo_trials = raw.lo_trials.unwrap_or(cfg.lo_trials);
        cfg.coefficients = raw.coefficients.unwrap_or_default();
        cfg.workers = raw.workers;
        cfg.fault = raw.inject_fault;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>, fallback_seed: Option<u64>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, fallback_seed)
    }

    /// Resolved edge probability.
    pub fn p(&self) -> f64 {
        self.probability.resolve(self.n)
    }

    /// Checks ranges and the theorem hypotheses (unless overridden).
    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if self.stride == 0 {
            return Err(Error::param("stride must be at least 1"));
        }
        if self.workers == Some(0) {
            return Err(Error::param("workers must be at least 1"));
        }
        if self.experiment == DregularSingularity {
            let d = self
                .d
                .ok_or_else(|| Error::param("dregular-singularity needs d"))?;
            if d >= self.n || (d * self.n) % 2 == 1 {
                return Err(Error::param(format!(
                    "need d < n and d n even, got d = {d}, n = {}",
                    self.n
                )));
            }
            return Ok(());
        }
        let p = self.p();
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::param(format!("p = {p} must satisfy 0 < p < 1")));
        }
        if matches!(self.experiment, LinearLo | QuadraticLo) {
            if p > 0.5 {
                return Err(Error::param(format!("rho = {p} must lie in (0, 1/2]")));
            }
            if self.lo_trials == 0 {
                return Err(Error::param("lo_trials must be at least 1"));
            }
            return Ok(());
        }
        if self.override_hypotheses {
            return Ok(());
        }
        if p >= 0.5 {
            return Err(Error::param(format!(
                "p = {p} is outside the hypothesis p < 1/2; set override_hypotheses to explore it"
            )));
        }
        if self.experiment == NonsymmetricSingularity {
            let floor = (self.n as f64).ln() / self.n as f64;
            if p <= floor {
                return Err(Error::param(format!(
                    "p = {p} is at or below ln n / n = {floor}; set override_hypotheses to explore it"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_documents() {
        let cfg = ExperimentConfig::parse(
            "experiment = \"rank-agreement\"\nn = 400\nc = 3.0\ntrials = 10\nseed = 5\ndiagonal_mode = \"mixed\"\n",
            None,
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::RankAgreement);
        assert!((cfg.p() - 3.0 * 400f64.ln() / 400.0).abs() < 1e-15);
        assert_eq!(cfg.diagonal_mode, DiagonalMode::Mixed);
        assert_eq!(cfg.s, 2);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = [
            "experiment = \"nope\"\nn = 4\np = 0.1\ntrials = 1\nseed = 1",
            "experiment = \"rank-agreement\"\nn = 4\np = 0.1\ntrials = 0\nseed = 1",
            "experiment = \"rank-agreement\"\nn = 4\np = 0.7\ntrials = 1\nseed = 1",
            "experiment = \"rank-agreement\"\nn = 4\np = 0.1\nc = 1.0\ntrials = 1\nseed = 1",
            "experiment = \"rank-agreement\"\nn = 4\np = 0.1\ntrials = 1\nseed = 1\nbogus = 2",
            "experiment = \"rank-agreement\"\nn = 4\np = 0.1\ntrials = 1",
            "experiment = \"dregular-singularity\"\nn = 5\nd = 3\ntrials = 1\nseed = 1",
        ];
        for text in bad {
            assert!(ExperimentConfig::parse(text, None).is_err(), "{text}");
        }
        let err = ExperimentConfig::parse(bad[0], None)
            .unwrap_err()
            .to_string();
        assert!(err.contains("rank-agreement") && err.contains("quadratic-lo"));
    }

    #[test]
    fn override_and_fallback_seed() {
        let text = "experiment = \"coupon-threshold\"\nn = 10\np = 0.9\ntrials = 1\noverride_hypotheses = true";
        let cfg = ExperimentConfig::parse(text, Some(77)).unwrap();
        assert_eq!(cfg.master_seed, 77);
    }

    #[test]
    fn names_round_trip() {
        for name in EXPERIMENT_NAMES {
            assert_eq!(name.parse::<ExperimentKind>().unwrap().name(), name);
        }
    }
}
