//! Per-trial records and campaign summaries.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::graph::VertexSet;

/// One row of the results CSV. Columns not produced by a campaign are empty.
///
/// Column order is fixed: `experiment, trial_index, m, seed, n, p,
/// exact_rank, combinatorial_rank, brute_force_rank, structural_rank,
/// structural_failure, u, u_mode, y, corank, zero_rows, rank_increment,
/// normal_step, redraws_constant, paired_corank, dependent_sets,
/// witnessed_sets, singular, well_separated, locally_sparse,
/// small_set_expander, hit_probability, std_error, bound_value,
/// size_parameter, witness`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub experiment: String,
    pub trial_index: usize,
    /// Minor size in exposure trajectories.
    pub m: Option<usize>,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub exact_rank: Option<usize>,
    pub combinatorial_rank: Option<usize>,
    pub brute_force_rank: Option<usize>,
    pub structural_rank: Option<usize>,
    pub structural_failure: Option<bool>,
    pub u: Option<usize>,
    pub u_mode: Option<String>,
    pub y: Option<i64>,
    pub corank: Option<usize>,
    pub zero_rows: Option<usize>,
    pub rank_increment: Option<usize>,
    pub normal_step: Option<bool>,
    pub redraws_constant: Option<bool>,
    pub paired_corank: Option<usize>,
    pub dependent_sets: Option<usize>,
    pub witnessed_sets: Option<usize>,
    pub singular: Option<bool>,
    pub well_separated: Option<String>,
    pub locally_sparse: Option<String>,
    pub small_set_expander: Option<String>,
    pub hit_probability: Option<f64>,
    pub std_error: Option<f64>,
    pub bound_value: Option<f64>,
    pub size_parameter: Option<usize>,
    /// Space-separated vertex set.
    pub witness: Option<String>,
}

/// `[0 2 5]`; the brackets keep an empty set distinct from a missing field.
pub(crate) fn set_string(s: &VertexSet) -> String {
    format!(
        "[{}]",
        s.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
}

/// Writes the records, sorted by `(trial_index, m)`, as CSV with a header.
pub fn write_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.trial_index, r.m));
    let mut w = csv::Writer::from_writer(out);
    if sorted.is_empty() {
        w.write_record(csv_header())?;
    }
    for r in sorted {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<TrialRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Header row of the results CSV.
pub fn csv_header() -> Vec<&'static str> {
    vec![
        "experiment",
        "trial_index",
        "m",
        "seed",
        "n",
        "p",
        "exact_rank",
        "combinatorial_rank",
        "brute_force_rank",
        "structural_rank",
        "structural_failure",
        "u",
        "u_mode",
        "y",
        "corank",
        "zero_rows",
        "rank_increment",
        "normal_step",
        "redraws_constant",
        "paired_corank",
        "dependent_sets",
        "witnessed_sets",
        "singular",
        "well_separated",
        "locally_sparse",
        "small_set_expander",
        "hit_probability",
        "std_error",
        "bound_value",
        "size_parameter",
        "witness",
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Target {
    AtLeast(f64),
    AtMost(f64),
    Within { center: f64, tolerance: f64 },
}

impl Target {
    pub fn met(&self, x: f64) -> bool {
        match *self {
            Target::AtLeast(t) => x >= t,
            Target::AtMost(t) => x <= t,
            Target::Within { center, tolerance } => (x - center).abs() <= tolerance,
        }
    }
}

/// 95% Wilson score interval for `count` successes out of `total`.
pub fn wilson_interval(count: usize, total: usize) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let n = total as f64;
    let phat = count as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (phat + z * z / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rate {
    pub name: String,
    pub count: usize,
    pub total: usize,
    pub rate: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub target: Option<Target>,
    pub met: Option<bool>,
}

impl Rate {
    pub fn new(name: &str, count: usize, total: usize, target: Option<Target>) -> Self {
        let rate = if total == 0 {
            0.0
        } else {
            count as f64 / total as f64
        };
        let std_error = if total == 0 {
            0.0
        } else {
            (rate * (1.0 - rate) / total as f64).sqrt()
        };
        let (ci_low, ci_high) = wilson_interval(count, total);
        Rate {
            name: name.to_string(),
            count,
            total,
            rate,
            std_error,
            ci_low,
            ci_high,
            met: target.filter(|_| total > 0).map(|t| t.met(rate)),
            target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Warn,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub trials: usize,
    pub rates: Vec<Rate>,
    pub values: BTreeMap<String, f64>,
    pub hard_violations: Vec<String>,
    pub warnings: Vec<String>,
    pub status: Status,
    pub wall_time_seconds: f64,
}

impl Summary {
    pub(crate) fn new(cfg: &ExperimentConfig) -> Self {
        Summary {
            experiment: cfg.experiment.name().to_string(),
            config: cfg.clone(),
            trials: cfg.trials,
            rates: Vec::new(),
            values: BTreeMap::new(),
            hard_violations: Vec::new(),
            warnings: Vec::new(),
            status: Status::Ok,
            wall_time_seconds: 0.0,
        }
    }

    pub(crate) fn rate(&mut self, name: &str, count: usize, total: usize, target: Option<Target>) {
        self.rates.push(Rate::new(name, count, total, target));
    }

    pub(crate) fn value(&mut self, name: &str, x: f64) {
        self.values.insert(name.to_string(), x);
    }

    /// Fills in warnings for missed targets and the overall status.
    pub(crate) fn finish(&mut self) {
        for r in &self.rates {
            if r.met == Some(false) {
                self.warnings.push(format!(
                    "{} = {:.4} misses target {:?}",
                    r.name,
                    r.rate,
                    r.target.unwrap()
                ));
            }
        }
        self.status = if !self.hard_violations.is_empty() {
            Status::Violation
        } else if !self.warnings.is_empty() {
            Status::Warn
        } else {
            Status::Ok
        };
    }

    pub fn get_rate(&self, name: &str) -> Option<&Rate> {
        self.rates.iter().find(|r| r.name == name)
    }
}
