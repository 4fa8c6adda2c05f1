use rand::Rng;

use super::bundle::FailureBundle;
use super::config::{CoefficientLaw, ExperimentConfig, Fault};
use super::records::{set_string, Summary, Target, TrialRecord};
use super::regular::random_regular_graph;
use super::{assemble, run_trials, sample_instance, CampaignOutput, Instance, TrialOutcome};
use crate::anticoncentration::{cofactor_grid, estimate_linear_lo, estimate_quadratic_lo};
use crate::error::{Error, Result};
use crate::graph::{
    brute_force_combinatorial_rank, combinatorial_rank, graph_of, min_deficiency_witness, Graph,
    BRUTE_FORCE_CAP,
};
use crate::matrix::{
    exact_rank, exact_rank_general, random_weights, Coefficient, DiagonalMode, Domain,
    SparseMatrix, SparseSymMatrix,
};
use crate::predicates::{
    is_locally_sparse, is_normal_pair, is_small_set_expander, is_well_separated, GoodnessParams,
};
use crate::rng::{derive_seed, hash3, rng_from_seed, stream_seed, Stream};
use crate::structure::{
    build_decomposition, classify_dependencies, largest_unobstructed_size_exact, DEPENDENCY_CAP,
};

/// Witness sets are written to the CSV only up to this dimension.
const WITNESS_COLUMN_CAP: usize = 200;

fn base_record(cfg: &ExperimentConfig, t: usize, seed: u64, n: usize, p: f64) -> TrialRecord {
    TrialRecord {
        experiment: cfg.experiment.name().to_string(),
        trial_index: t,
        seed,
        n,
        p,
        ..Default::default()
    }
}

fn comb_rank(cfg: &ExperimentConfig, g: &Graph) -> usize {
    let r = combinatorial_rank(g);
    match cfg.fault {
        Some(Fault::CombinatorialUnderestimate) => r.saturating_sub(1),
        None => r,
    }
}

/// `Ok(Some(rank))`, or `Ok(None)` when the decomposition stalls.
fn structural_rank(g: &Graph, s: usize) -> Result<Option<usize>> {
    match build_decomposition(g, s) {
        Ok(d) => Ok(Some(d.predicted_rank(g.n()))),
        Err(Error::StructuralFailure { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn fill_predicates(rec: &mut TrialRecord, g: &Graph, params: &GoodnessParams) {
    rec.well_separated = Some(is_well_separated(g, params).name().to_string());
    rec.locally_sparse = Some(is_locally_sparse(g, params).name().to_string());
    rec.small_set_expander = Some(is_small_set_expander(g, params).name().to_string());
}

fn check_upper_bound(t: usize, exact: usize, comb: usize, violations: &mut Vec<String>) {
    if exact > comb {
        violations.push(format!(
            "trial {t}: exact rank {exact} exceeds combinatorial rank {comb}"
        ));
    }
}

fn bundle_if(t: usize, inst: &Instance, reasons: &[String]) -> Result<Option<FailureBundle>> {
    if reasons.is_empty() {
        return Ok(None);
    }
    FailureBundle::new(t, inst, reasons.join("; ")).map(Some)
}

/// Exact rank against the matching formula, with the brute-force formula on
/// small graphs, exact `U` on tiny ones and the weight-redraw sub-test.
pub fn run_rank_agreement(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, p, s) = (cfg.n, cfg.p(), cfg.s);
    let params = GoodnessParams::new(n, p, s)?;
    let outcomes = run_trials(cfg, |t, seed| {
        let inst = sample_instance(n, p, cfg.diagonal_mode, seed)?;
        let g = graph_of(&inst.q);
        let exact = exact_rank(&inst.q);
        let comb = comb_rank(cfg, &g);
        let mut rec = base_record(cfg, t, seed, n, p);
        rec.exact_rank = Some(exact);
        rec.combinatorial_rank = Some(comb);
        rec.corank = Some(n - exact);
        rec.zero_rows = Some(inst.q.zero_rows());
        let mut violations = Vec::new();
        let mut reasons = Vec::new();
        check_upper_bound(t, exact, comb, &mut violations);
        if exact != comb {
            reasons.push(format!(
                "exact rank {exact} differs from combinatorial rank {comb}"
            ));
        }
        if n <= BRUTE_FORCE_CAP {
            let brute = brute_force_combinatorial_rank(&g)?;
            rec.brute_force_rank = Some(brute);
            if brute != comb {
                violations.push(format!(
                    "trial {t}: matching rank {comb} differs from subset formula {brute}"
                ));
            }
        }
        let structural = structural_rank(&g, s)?;
        rec.structural_rank = structural;
        rec.structural_failure = Some(structural.is_none());
        if n <= BRUTE_FORCE_CAP {
            let u = largest_unobstructed_size_exact(&g, s)?;
            rec.u = Some(u);
            rec.u_mode = Some("exact".into());
            rec.y = Some(u as i64 - exact as i64);
            if u < exact {
                violations.push(format!("trial {t}: U = {u} below rank {exact}"));
            }
        }
        if t < cfg.redraw_masks && cfg.weight_redraws > 0 {
            let redraw = stream_seed(seed, Stream::Redraw);
            let mut constant = true;
            for r in 0..cfg.weight_redraws {
                let w = random_weights(n, cfg.diagonal_mode, derive_seed(redraw, r as u64))?;
                constant &= exact_rank(&inst.mask.apply(&w)?) == exact;
            }
            rec.redraws_constant = Some(constant);
        }
        if n <= WITNESS_COLUMN_CAP {
            rec.witness = Some(set_string(&min_deficiency_witness(&g)));
        }
        if cfg.predicates {
            fill_predicates(&mut rec, &g, &params);
        }
        reasons.extend(violations.iter().cloned());
        Ok(TrialOutcome {
            records: vec![rec],
            bundle: bundle_if(t, &inst, &reasons)?,
            violations,
        })
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let agree = recs
        .iter()
        .filter(|r| r.exact_rank == r.combinatorial_rank)
        .count();
    summary.rate("agreement", agree, recs.len(), Some(Target::AtLeast(0.98)));
    let redrawn: Vec<bool> = recs.iter().filter_map(|r| r.redraws_constant).collect();
    if !redrawn.is_empty() {
        let constant = redrawn.iter().filter(|&&c| c).count();
        summary.rate(
            "weight_independence",
            constant,
            redrawn.len(),
            Some(Target::AtLeast(0.99)),
        );
    }
    let brute: Vec<_> = recs
        .iter()
        .filter(|r| r.brute_force_rank.is_some())
        .collect();
    if !brute.is_empty() {
        let same = brute
            .iter()
            .filter(|r| r.brute_force_rank == r.combinatorial_rank)
            .count();
        summary.rate(
            "brute_force_agreement",
            same,
            brute.len(),
            Some(Target::AtLeast(1.0)),
        );
    }
    let structural_same = recs
        .iter()
        .filter(|r| r.structural_rank.is_some() && r.structural_rank == r.exact_rank)
        .count();
    summary.rate("structural_agreement", structural_same, recs.len(), None);
    summary.value("mean_corank", mean(recs.iter().filter_map(|r| r.corank)));
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

fn mean(xs: impl Iterator<Item = usize>) -> f64 {
    let (sum, count) = xs.fold((0usize, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        0.0
    } else {
        sum as f64 / count as f64
    }
}

/// Exact rank against `n - |T \ T1|`, and on small matrices the
/// non-expanding sets inside every minimal dependent row set.
pub fn run_dependency_classification(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, p, s) = (cfg.n, cfg.p(), cfg.s);
    let outcomes = run_trials(cfg, |t, seed| {
        let inst = sample_instance(n, p, cfg.diagonal_mode, seed)?;
        let g = graph_of(&inst.q);
        let exact = exact_rank(&inst.q);
        let comb = comb_rank(cfg, &g);
        let mut rec = base_record(cfg, t, seed, n, p);
        rec.exact_rank = Some(exact);
        rec.combinatorial_rank = Some(comb);
        rec.corank = Some(n - exact);
        let mut violations = Vec::new();
        let mut reasons = Vec::new();
        check_upper_bound(t, exact, comb, &mut violations);
        let structural = structural_rank(&g, s)?;
        rec.structural_rank = structural;
        rec.structural_failure = Some(structural.is_none());
        match structural {
            None => reasons.push("structural decomposition stalled".to_string()),
            Some(r) if r != exact => reasons.push(format!(
                "structural rank {r} differs from exact rank {exact}"
            )),
            Some(_) => {}
        }
        if n <= DEPENDENCY_CAP {
            let reports = classify_dependencies(&inst.q, s)?;
            let witnessed = reports
                .iter()
                .filter(|r| {
                    r.theorem_holds && r.contained_witness.as_ref().is_some_and(|w| w.verify(&g))
                })
                .count();
            rec.dependent_sets = Some(reports.len());
            rec.witnessed_sets = Some(witnessed);
            if let Some(bad) = reports.iter().find(|r| !r.theorem_holds) {
                reasons.push(format!(
                    "dependent rows {} hold no small non-expanding set",
                    set_string(&bad.dependent_rows)
                ));
                rec.witness = Some(set_string(&bad.dependent_rows));
            }
        }
        reasons.extend(violations.iter().cloned());
        Ok(TrialOutcome {
            records: vec![rec],
            bundle: bundle_if(t, &inst, &reasons)?,
            violations,
        })
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let agree = recs
        .iter()
        .filter(|r| r.structural_rank.is_some() && r.structural_rank == r.exact_rank)
        .count();
    summary.rate(
        "structural_agreement",
        agree,
        recs.len(),
        Some(Target::AtLeast(0.95)),
    );
    let failed = recs
        .iter()
        .filter(|r| r.structural_failure == Some(true))
        .count();
    summary.rate("structural_failures", failed, recs.len(), None);
    let full = recs.iter().filter(|r| r.corank == Some(0)).count();
    summary.rate("full_rank", full, recs.len(), None);
    let classified: Vec<_> = recs.iter().filter(|r| r.dependent_sets.is_some()).collect();
    if !classified.is_empty() {
        let ok = classified
            .iter()
            .filter(|r| r.dependent_sets == r.witnessed_sets)
            .count();
        summary.rate(
            "witnessed_instances",
            ok,
            classified.len(),
            Some(Target::AtLeast(0.95)),
        );
        let sets: usize = classified.iter().filter_map(|r| r.dependent_sets).sum();
        let held: usize = classified.iter().filter_map(|r| r.witnessed_sets).sum();
        summary.rate("witnessed_sets", held, sets, None);
    }
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// `1 - (1 - (1 - p)^n)^n`.
pub fn coupon_closed_form(n: usize, p: f64) -> f64 {
    let row_zero = (1.0 - p).powi(n as i32);
    1.0 - (1.0 - row_zero).powi(n as i32)
}

/// Frequency of all-zero rows and of full rank.
pub fn run_coupon_threshold(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, p) = (cfg.n, cfg.p());
    let outcomes = run_trials(cfg, |t, seed| {
        let inst = sample_instance(n, p, cfg.diagonal_mode, seed)?;
        let exact = exact_rank(&inst.q);
        let mut rec = base_record(cfg, t, seed, n, p);
        rec.exact_rank = Some(exact);
        rec.corank = Some(n - exact);
        rec.zero_rows = Some(inst.q.zero_rows());
        rec.singular = Some(exact < n);
        Ok(TrialOutcome::single(rec))
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let closed = coupon_closed_form(n, p);
    summary.value("closed_form_zero_row", closed);
    let zero = recs.iter().filter(|r| r.zero_rows > Some(0)).count();
    summary.rate(
        "zero_row",
        zero,
        recs.len(),
        Some(Target::Within {
            center: closed,
            tolerance: 0.1,
        }),
    );
    let full = recs.iter().filter(|r| r.corank == Some(0)).count();
    let above_threshold = p > (n as f64).ln() / n as f64;
    summary.rate(
        "full_rank",
        full,
        recs.len(),
        above_threshold.then_some(Target::AtLeast(0.85)),
    );
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// Minor-by-minor exposure of `Q`.
pub fn run_exposure_process(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, p, s) = (cfg.n, cfg.p(), cfg.s);
    let params = GoodnessParams::new(n, p, s)?;
    let sizes: Vec<usize> = {
        let mut v: Vec<usize> = (cfg.stride..=n).step_by(cfg.stride).collect();
        if v.last() != Some(&n) {
            v.push(n);
        }
        v
    };
    let outcomes = run_trials(cfg, |t, seed| {
        let diagonal = if cfg.paired_diagonal {
            DiagonalMode::AllNonzero
        } else {
            cfg.diagonal_mode
        };
        let inst = sample_instance(n, p, diagonal, seed)?;
        let paired = if cfg.paired_diagonal {
            Some(inst.mask.apply(&inst.weights.with_zero_diagonal())?)
        } else {
            None
        };
        let g = graph_of(&inst.q);
        let mut records = Vec::with_capacity(sizes.len());
        let mut violations = Vec::new();
        let mut prev_rank = 0usize;
        for &m in &sizes {
            let qm = inst.q.minor(m)?;
            let gm = g.prefix(m);
            let exact = exact_rank(&qm);
            let comb = comb_rank(cfg, &gm);
            let mut rec = base_record(cfg, t, seed, n, p);
            rec.m = Some(m);
            rec.exact_rank = Some(exact);
            rec.combinatorial_rank = Some(comb);
            rec.corank = Some(m - exact);
            check_upper_bound(t, exact, comb, &mut violations);
            if cfg.stride == 1 {
                let inc = exact as i64 - prev_rank as i64;
                if !(0..=2).contains(&inc) {
                    violations.push(format!("trial {t}: rank increment {inc} at m = {m}"));
                }
                rec.rank_increment = Some(inc.max(0) as usize);
                rec.normal_step = Some(is_normal_pair(&g.prefix(m - 1), &gm, &params)?);
            }
            prev_rank = exact;
            if m <= BRUTE_FORCE_CAP {
                let u = largest_unobstructed_size_exact(&gm, s)?;
                rec.u = Some(u);
                rec.u_mode = Some("exact".into());
                rec.y = Some(u as i64 - exact as i64);
                if u < exact {
                    violations.push(format!("trial {t}: Y negative at m = {m}"));
                }
            }
            if let Some(z) = &paired {
                rec.paired_corank = Some(m - exact_rank(&z.minor(m)?));
            }
            records.push(rec);
        }
        let last = records.last().expect("at least one minor");
        let mut reasons = violations.clone();
        if last.paired_corank.is_some() && last.paired_corank != last.corank {
            reasons.push("zero and nonzero diagonals give different coranks".to_string());
        }
        Ok(TrialOutcome {
            bundle: bundle_if(t, &inst, &reasons)?,
            records,
            violations,
        })
    })?;
    let mut summary = Summary::new(cfg);
    let finals: Vec<&TrialRecord> = outcomes.iter().filter_map(|o| o.records.last()).collect();
    if cfg.paired_diagonal {
        let same = finals
            .iter()
            .filter(|r| r.paired_corank == r.corank)
            .count();
        summary.rate(
            "paired_corank_equal",
            same,
            finals.len(),
            Some(Target::AtLeast(0.95)),
        );
        let trajectories = outcomes
            .iter()
            .filter(|o| o.records.iter().all(|r| r.paired_corank == r.corank))
            .count();
        summary.rate(
            "paired_trajectory_equal",
            trajectories,
            outcomes.len(),
            None,
        );
    }
    let steps: Vec<bool> = outcomes
        .iter()
        .flat_map(|o| &o.records)
        .filter_map(|r| r.normal_step)
        .collect();
    if !steps.is_empty() {
        summary.rate(
            "normal_steps",
            steps.iter().filter(|&&x| x).count(),
            steps.len(),
            None,
        );
    }
    let agree = finals
        .iter()
        .filter(|r| r.exact_rank == r.combinatorial_rank)
        .count();
    summary.rate("final_agreement", agree, finals.len(), None);
    let ys: Vec<i64> = outcomes
        .iter()
        .flat_map(|o| &o.records)
        .filter_map(|r| r.y)
        .collect();
    if let Some(&max) = ys.iter().max() {
        summary.value("max_y", max as f64);
    }
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// Nonzero field element determined by `(seed, i, j)`.
fn cell_weight(seed: u64, i: usize, j: usize, q: u64) -> Coefficient {
    Coefficient::Prime(hash3(seed, i as u64, j as u64) % (q - 1) + 1)
}

/// Singularity of `A(W, p)` with an iid mask on all `n^2` cells.
pub fn run_nonsymmetric_singularity(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, p) = (cfg.n, cfg.p());
    let domain = Domain::default();
    let q = domain.modulus();
    let outcomes = run_trials(cfg, |t, seed| {
        let mut rng = rng_from_seed(stream_seed(seed, Stream::Mask));
        let wseed = stream_seed(seed, Stream::Weights);
        let mut cells = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rng.random_bool(p) {
                    cells.push((i, j, cell_weight(wseed, i, j, q)));
                }
            }
        }
        let mut row_hit = vec![false; n];
        let mut col_hit = vec![false; n];
        for &(i, j, _) in &cells {
            row_hit[i] = true;
            col_hit[j] = true;
        }
        let a = SparseMatrix::new(n, n, domain, cells)?;
        let exact = exact_rank_general(&a);
        let mut rec = base_record(cfg, t, seed, n, p);
        rec.exact_rank = Some(exact);
        rec.corank = Some(n - exact);
        rec.zero_rows = Some(row_hit.iter().chain(&col_hit).filter(|h| !**h).count());
        rec.singular = Some(exact < n);
        Ok(TrialOutcome::single(rec))
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let singular = recs.iter().filter(|r| r.singular == Some(true)).count();
    summary.rate(
        "singular",
        singular,
        recs.len(),
        (!cfg.override_hypotheses).then_some(Target::AtMost(0.1)),
    );
    let zero = recs.iter().filter(|r| r.zero_rows > Some(0)).count();
    summary.rate("zero_line", zero, recs.len(), None);
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// 0/1 adjacency matrix over the rationals.
pub(crate) fn adjacency_matrix(g: &Graph) -> Result<SparseSymMatrix> {
    let one = || Coefficient::Rational(num_bigint::BigInt::from(1).into());
    SparseSymMatrix::from_triplets(
        g.n(),
        Domain::Rational,
        g.edges().map(|(i, j)| (i, j, one())),
    )
}

/// Singularity of random `d`-regular adjacency matrices.
pub fn run_dregular_singularity(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let n = cfg.n;
    let d = cfg
        .d
        .ok_or_else(|| Error::param("dregular-singularity needs d"))?;
    let outcomes = run_trials(cfg, |t, seed| {
        let g = random_regular_graph(n, d, seed)?;
        let exact = exact_rank(&adjacency_matrix(&g)?);
        let mut rec = base_record(cfg, t, seed, n, d as f64 / n as f64);
        rec.exact_rank = Some(exact);
        rec.corank = Some(n - exact);
        rec.singular = Some(exact < n);
        Ok(TrialOutcome::single(rec))
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let singular = recs.iter().filter(|r| r.singular == Some(true)).count();
    let target = match d {
        2 => Some(Target::AtLeast(0.5)),
        3 => Some(Target::AtMost(0.1)),
        _ => None,
    };
    summary.value("d", d as f64);
    summary.rate("singular", singular, recs.len(), target);
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// Coefficients for one linear estimate.
pub(crate) fn coefficient_sequence(law: CoefficientLaw, d: usize, seed: u64) -> Vec<i64> {
    match law {
        CoefficientLaw::Balanced => (0..d).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
        CoefficientLaw::Ones => vec![1; d],
        CoefficientLaw::Generic => {
            let mut rng = rng_from_seed(stream_seed(seed, Stream::Aux));
            (0..d)
                .map(|_| {
                    rng.random_range(1..=1i64 << 40) * if rng.random::<bool>() { 1 } else { -1 }
                })
                .collect()
        }
    }
}

/// Linear Littlewood-Offord estimates with `D = n` and `rho = p`.
pub fn run_linear_lo(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (d, rho) = (cfg.n, cfg.p());
    let outcomes = run_trials(cfg, |t, seed| {
        let v = coefficient_sequence(cfg.coefficients, d, seed);
        let e = estimate_linear_lo(&v, rho, cfg.lo_trials, seed)?;
        let mut rec = base_record(cfg, t, seed, d, rho);
        rec.hit_probability = Some(e.hit_probability);
        rec.std_error = Some(e.std_error);
        rec.bound_value = Some(e.bound_value);
        rec.size_parameter = Some(e.size_parameter);
        Ok(TrialOutcome::single(rec))
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let scaled: Vec<f64> = recs
        .iter()
        .map(|r| r.hit_probability.unwrap() / r.bound_value.unwrap())
        .collect();
    summary.value(
        "mean_scaled",
        scaled.iter().sum::<f64>() / scaled.len() as f64,
    );
    summary.value(
        "mean_hit_probability",
        recs.iter().map(|r| r.hit_probability.unwrap()).sum::<f64>() / recs.len() as f64,
    );
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}

/// Quadratic Littlewood-Offord estimates on cofactor grids of sampled `Q`.
pub fn run_quadratic_lo(cfg: &ExperimentConfig) -> Result<CampaignOutput> {
    let (n, rho) = (cfg.n, cfg.p());
    let outcomes = run_trials(cfg, |t, seed| {
        let inst = sample_instance(n, rho, cfg.diagonal_mode, seed)?;
        let grid = cofactor_grid(&inst.q)?;
        let mut rec = base_record(cfg, t, seed, n, rho);
        rec.exact_rank = Some(exact_rank(&inst.q));
        rec.size_parameter = Some(grid.q_parameter());
        if grid.q_parameter() > 0 {
            let e =
                estimate_quadratic_lo(&grid, rho, cfg.lo_trials, stream_seed(seed, Stream::Aux))?;
            rec.hit_probability = Some(e.hit_probability);
            rec.std_error = Some(e.std_error);
            rec.bound_value = Some(e.bound_value);
        }
        Ok(TrialOutcome::single(rec))
    })?;
    let mut summary = Summary::new(cfg);
    let recs: Vec<&TrialRecord> = outcomes.iter().flat_map(|o| &o.records).collect();
    let graded: Vec<_> = recs
        .iter()
        .filter(|r| r.hit_probability.is_some())
        .collect();
    let within = graded
        .iter()
        .filter(|r| r.hit_probability.unwrap() <= 5.0 * r.bound_value.unwrap())
        .count();
    summary.rate(
        "within_envelope",
        within,
        graded.len(),
        Some(Target::AtLeast(0.95)),
    );
    summary.rate(
        "degenerate_grids",
        recs.len() - graded.len(),
        recs.len(),
        None,
    );
    let mut out = assemble(outcomes, summary);
    out.summary.finish();
    Ok(out)
}
