//! One line per acceptance criterion. Exact equivalences and hard invariants
//! decide the exit status; statistical targets are reported but, like the
//! campaign runner, do not gate.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use corank::anticoncentration::estimate_linear_lo;
use corank::experiments::{
    coupon_closed_form, random_regular_graph, rerun_manifest, run_campaign, sample_instance,
    write_outputs, CampaignOutput, EdgeProbability, ExperimentConfig, ExperimentKind, RunManifest,
};
use corank::graph::{brute_force_combinatorial_rank, combinatorial_rank, Graph};
use corank::matrix::io::read_matrix_file;
use corank::matrix::{exact_rank, rank_rational_oracle, DiagonalMode};
use corank::rng::{derive_seed, rng_from_seed};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Warn,
}

struct Line {
    id: u32,
    gating: bool,
    verdict: Verdict,
    detail: String,
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

struct Suite {
    lines: Vec<Line>,
    runs: Vec<(String, ExperimentConfig, CampaignOutput)>,
}

impl Suite {
    fn report(&mut self, id: u32, gating: bool, verdict: Verdict, detail: String) {
        self.lines.push(Line {
            id,
            gating,
            verdict,
            detail,
        });
    }

    fn run(&mut self, label: &str, cfg: ExperimentConfig) -> CampaignOutput {
        let out = run_campaign(&cfg).unwrap_or_else(|e| panic!("{label}: {e}"));
        self.runs.push((label.to_string(), cfg, out.clone()));
        out
    }
}

fn rate(out: &CampaignOutput, name: &str) -> (usize, usize, f64) {
    let r = out
        .summary
        .get_rate(name)
        .unwrap_or_else(|| panic!("missing rate {name}"));
    (r.count, r.total, r.rate)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn config(
    kind: ExperimentKind,
    n: usize,
    p: EdgeProbability,
    trials: usize,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig::new(kind, n, p, trials, seed)
}

fn random_graph(seed: u64, n: usize, p: f64, loop_rate: f64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        if rng.random::<f64>() < loop_rate {
            edges.push((i, i));
        }
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn oracle_equivalence(suite: &mut Suite) {
    let start = Instant::now();
    let (mut agree, mut total) = (0, 0);
    for k in 0..500u64 {
        let n = 1 + (k as usize % 10);
        let p = 0.1 * (1 + (k / 10) % 9) as f64;
        let loop_rate = if (k / 90) % 2 == 0 { 0.0 } else { 0.5 };
        let g = random_graph(derive_seed(101, k), n, p, loop_rate);
        total += 1;
        if combinatorial_rank(&g) == brute_force_combinatorial_rank(&g).unwrap() {
            agree += 1;
        }
    }
    let t = secs(start.elapsed());
    suite.report(
        1,
        true,
        verdict(agree == total && t <= 30.0),
        format!("matching vs enumeration: {agree}/{total} graphs agree, {t:.1} s (limit 30 s)"),
    );
}

fn field_vs_rational(suite: &mut Suite) {
    let start = Instant::now();
    let (mut agree, mut total) = (0, 0);
    let modes = [
        DiagonalMode::AllZero,
        DiagonalMode::AllNonzero,
        DiagonalMode::Mixed,
    ];
    for k in 0..300u64 {
        let n = 1 + (k as usize % 12);
        let p = [0.1, 0.25, 0.4][(k / 12) as usize % 3];
        let inst =
            sample_instance(n, p, modes[(k / 36) as usize % 3], derive_seed(202, k)).unwrap();
        total += 1;
        if exact_rank(&inst.q) == rank_rational_oracle(&inst.q).unwrap() {
            agree += 1;
        }
    }
    let t = secs(start.elapsed());
    suite.report(
        2,
        true,
        verdict(agree == total && t <= 60.0),
        format!(
            "GF(q) rank vs rational oracle: {agree}/{total} matrices agree, {t:.1} s (limit 60 s)"
        ),
    );
}

fn rank_formula(suite: &mut Suite) {
    let start = Instant::now();
    let out = suite.run(
        "rank-agreement",
        config(
            ExperimentKind::RankAgreement,
            400,
            EdgeProbability::Scaled(3.0),
            200,
            303,
        ),
    );
    let t = secs(start.elapsed());
    let (a, at, ar) = rate(&out, "agreement");
    let (w, wt, wr) = rate(&out, "weight_independence");
    suite.report(
        3,
        false,
        verdict(ar >= 0.98 && wr >= 0.99 && t <= 300.0),
        format!(
            "exact = combinatorial in {a}/{at} ({ar:.3}, need 0.98); rank constant over redraws in {w}/{wt} masks ({wr:.3}, need 0.99); {t:.1} s"
        ),
    );
}

fn dependency_classification(suite: &mut Suite) {
    let start = Instant::now();
    let mut large = config(
        ExperimentKind::DependencyClassification,
        1000,
        EdgeProbability::Scaled(0.8),
        100,
        505,
    );
    large.s = 2;
    let big = suite.run("dependency-classification n=1000", large);
    let mut small = config(
        ExperimentKind::DependencyClassification,
        20,
        EdgeProbability::Scaled(0.8),
        200,
        506,
    );
    small.s = 2;
    let sub = suite.run("dependency-classification n=20", small);
    let t = secs(start.elapsed());

    let dir = tempfile::tempdir().unwrap();
    let paths = write_outputs(&sub, dir.path()).unwrap();
    let unwitnessed: Vec<_> = sub
        .records
        .iter()
        .filter(|r| r.dependent_sets != r.witnessed_sets)
        .collect();
    let bundled = unwitnessed
        .iter()
        .filter(|r| {
            let root = dir
                .path()
                .join("bundles")
                .join(format!("trial-{:06}", r.trial_index));
            paths.bundles.contains(&root)
                && read_matrix_file(root.join("q.txt"))
                    .is_ok_and(|q| Some(exact_rank(&q)) == r.exact_rank)
        })
        .count();

    let (a, at, ar) = rate(&big, "structural_agreement");
    let (w, wt, wr) = rate(&sub, "witnessed_instances");
    suite.report(
        5,
        false,
        verdict(ar >= 0.95 && wr >= 0.95 && bundled == unwitnessed.len() && t <= 600.0),
        format!(
            "exact = structural in {a}/{at} ({ar:.3}, need 0.95); n=20 instances fully witnessed {w}/{wt} ({wr:.3}, need 0.95); bundles for {bundled}/{} failures; {t:.1} s",
            unwitnessed.len()
        ),
    );
}

fn full_rank_threshold(suite: &mut Suite) {
    let start = Instant::now();
    let above = suite.run(
        "coupon-threshold c=1.2",
        config(
            ExperimentKind::CouponThreshold,
            400,
            EdgeProbability::Scaled(1.2),
            200,
            606,
        ),
    );
    let below = suite.run(
        "coupon-threshold c=0.8",
        config(
            ExperimentKind::CouponThreshold,
            400,
            EdgeProbability::Scaled(0.8),
            200,
            607,
        ),
    );
    let t = secs(start.elapsed());
    let (f, ft, fr) = rate(&above, "full_rank");
    let (z, zt, zr) = rate(&below, "zero_row");
    let closed = coupon_closed_form(400, 0.8 * 400f64.ln() / 400.0);
    let ceiling = 1.0 - coupon_closed_form(400, 1.2 * 400f64.ln() / 400.0);
    suite.report(
        6,
        false,
        verdict(fr >= 0.85 && (zr - closed).abs() <= 0.1 && t <= 180.0),
        format!(
            "full rank at 1.2 ln n/n in {f}/{ft} ({fr:.3}, need 0.85; no zero row expected in only {ceiling:.3}); zero row at 0.8 ln n/n in {z}/{zt} ({zr:.3} vs closed form {closed:.3} +- 0.1); {t:.1} s"
        ),
    );
}

fn diagonal_irrelevance(suite: &mut Suite) {
    let mut cfg = config(
        ExperimentKind::ExposureProcess,
        400,
        EdgeProbability::Scaled(1.5),
        100,
        707,
    );
    cfg.paired_diagonal = true;
    cfg.stride = 400;
    let out = suite.run("exposure-process paired", cfg);
    let (s, st, sr) = rate(&out, "paired_corank_equal");
    suite.report(
        7,
        false,
        verdict(sr >= 0.95),
        format!(
            "zero vs nonzero diagonal give equal corank in {s}/{st} pairs ({sr:.3}, need 0.95)"
        ),
    );
}

fn exact_zero_probability(v: &[i64], rho: f64) -> f64 {
    let mut dist: BTreeMap<i64, f64> = BTreeMap::from([(0, 1.0)]);
    for &c in v {
        let mut next = BTreeMap::new();
        for (&s, &pr) in &dist {
            *next.entry(s).or_insert(0.0) += pr * (1.0 - rho);
            *next.entry(s + c).or_insert(0.0) += pr * rho;
        }
        dist = next;
    }
    dist.get(&0).copied().unwrap_or(0.0)
}

fn linear_lo(suite: &mut Suite) {
    let rho = 0.1;
    let scaled: Vec<(usize, f64)> = [100usize, 400, 1600]
        .iter()
        .map(|&d| {
            let v: Vec<i64> = (0..d).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
            (
                d,
                estimate_linear_lo(&v, rho, 100_000, derive_seed(808, d as u64))
                    .unwrap()
                    .scaled(),
            )
        })
        .collect();
    let hi = scaled.iter().map(|s| s.1).fold(f64::MIN, f64::max);
    let lo = scaled.iter().map(|s| s.1).fold(f64::MAX, f64::min);

    let (mut close, mut runs) = (0, 0);
    for k in 0..200u64 {
        let d = 1 + (k as usize % 16);
        let mut rng = rng_from_seed(derive_seed(809, k));
        let v: Vec<i64> = (0..d)
            .map(|_| rng.random_range(1..=3i64) * if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        let e = estimate_linear_lo(&v, rho, 100_000, derive_seed(810, k)).unwrap();
        runs += 1;
        if (e.hit_probability - exact_zero_probability(&v, rho)).abs() <= 4.0 * e.std_error {
            close += 1;
        }
    }
    let listed: Vec<String> = scaled
        .iter()
        .map(|(d, s)| format!("D={d}: {s:.3}"))
        .collect();
    suite.report(
        8,
        false,
        verdict(hi / lo <= 3.0 && close as f64 >= 0.99 * runs as f64),
        format!(
            "estimate (D rho)^1/2 {} (spread {:.2}, limit 3); exact convolution within 4 s.e. in {close}/{runs} runs (need 99%)",
            listed.join(", "),
            hi / lo
        ),
    );
}

fn quadratic_lo(suite: &mut Suite) {
    let out = suite.run(
        "quadratic-lo",
        config(
            ExperimentKind::QuadraticLo,
            10,
            EdgeProbability::Absolute(0.4),
            50,
            909,
        ),
    );
    let (w, wt, wr) = rate(&out, "within_envelope");
    let (dg, _, _) = rate(&out, "degenerate_grids");
    suite.report(
        9,
        false,
        verdict(wr >= 0.95),
        format!("estimate <= 5 (q rho)^-1/4 in {w}/{wt} grids ({wr:.3}, need 0.95); {dg} identically zero grids have no finite bound"),
    );
}

/// A cycle `C_k` has eigenvalue 0 iff `4 | k`.
fn cycle_oracle_singular(g: &Graph) -> bool {
    let mut seen = vec![false; g.n()];
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut size = 0;
        seen[start] = true;
        while let Some(v) = stack.pop() {
            size += 1;
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if size % 4 == 0 {
            return true;
        }
    }
    false
}

fn regular_exploration(suite: &mut Suite) {
    let mut two = config(
        ExperimentKind::DregularSingularity,
        40,
        EdgeProbability::Absolute(0.0),
        200,
        1010,
    );
    two.d = Some(2);
    let two = suite.run("dregular d=2", two);
    let mut three = config(
        ExperimentKind::DregularSingularity,
        50,
        EdgeProbability::Absolute(0.0),
        200,
        1011,
    );
    three.d = Some(3);
    let three = suite.run("dregular d=3", three);
    let oracle_agree = two
        .records
        .iter()
        .filter(|r| {
            Some(cycle_oracle_singular(
                &random_regular_graph(40, 2, r.seed).unwrap(),
            )) == r.singular
        })
        .count();
    let (a, at, ar) = rate(&two, "singular");
    let (b, bt, br) = rate(&three, "singular");
    let v = if oracle_agree != two.records.len() {
        Verdict::Fail
    } else if ar >= 0.5 && br <= 0.1 {
        Verdict::Pass
    } else {
        Verdict::Warn
    };
    suite.report(
        10,
        false,
        v,
        format!(
            "d=2 singular {a}/{at} ({ar:.3}, want >= 0.5; cycle oracle agrees on {oracle_agree}/{}); d=3 singular {b}/{bt} ({br:.3}, want <= 0.1)",
            two.records.len()
        ),
    );
}

fn performance(suite: &mut Suite, suite_start: Instant) {
    let n = 5000;
    let p = 2.0 * (n as f64).ln() / n as f64;
    let q = sample_instance(n, p, DiagonalMode::AllZero, 1111)
        .unwrap()
        .q;
    let start = Instant::now();
    let r = exact_rank(&q);
    let t = secs(start.elapsed());
    let total = secs(suite_start.elapsed());
    suite.report(
        11,
        false,
        verdict(t <= 60.0 && total <= 1500.0),
        format!("exact_rank n=5000 p=2 ln n/n: rank {r} in {t:.1} s (limit 60 s); suite so far {total:.0} s (limit 1500 s)"),
    );
}

fn unconditional_inequality(suite: &mut Suite) {
    let mut checked = 0;
    let mut broken = Vec::new();
    for (label, _, out) in &suite.runs {
        for r in &out.records {
            if let (Some(e), Some(c)) = (r.exact_rank, r.combinatorial_rank) {
                checked += 1;
                if e > c {
                    broken.push(format!("{label} trial {}", r.trial_index));
                }
            }
        }
        if out.has_violations() {
            broken.push(format!(
                "{label}: {}",
                out.summary.hard_violations.join("; ")
            ));
        }
    }
    suite.report(
        4,
        true,
        verdict(broken.is_empty() && checked > 0),
        format!(
            "exact <= combinatorial on {checked} records from {} campaigns, {} exceptions",
            suite.runs.len(),
            broken.len()
        ),
    );
}

fn determinism(suite: &mut Suite) {
    let dir = tempfile::tempdir().unwrap();
    let mut same = 0;
    for (k, (label, cfg, out)) in suite.runs.iter().enumerate() {
        let path = dir.path().join(format!("manifest-{k}.json"));
        let mut m = RunManifest::new("acceptance", cfg);
        m.finish(Vec::new());
        m.write(&path).unwrap();
        let again = rerun_manifest(&RunManifest::read(&path).unwrap())
            .unwrap_or_else(|e| panic!("{label}: {e}"));
        if again.csv_string().unwrap() == out.csv_string().unwrap() {
            same += 1;
        }
    }
    let total = suite.runs.len();
    suite.report(
        12,
        true,
        verdict(same == total),
        format!("manifest re-runs reproduce byte-identical CSV for {same}/{total} campaigns"),
    );
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut suite = Suite {
        lines: Vec::new(),
        runs: Vec::new(),
    };
    oracle_equivalence(&mut suite);
    field_vs_rational(&mut suite);
    rank_formula(&mut suite);
    dependency_classification(&mut suite);
    full_rank_threshold(&mut suite);
    diagonal_irrelevance(&mut suite);
    linear_lo(&mut suite);
    quadratic_lo(&mut suite);
    regular_exploration(&mut suite);
    unconditional_inequality(&mut suite);
    performance(&mut suite, start);
    determinism(&mut suite);

    suite.lines.sort_by_key(|l| l.id);
    for l in &suite.lines {
        let tag = match l.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Warn => "WARN",
        };
        println!("criterion {:>2}  {tag}  {}", l.id, l.detail);
    }
    let passed = suite
        .lines
        .iter()
        .filter(|l| l.verdict == Verdict::Pass)
        .count();
    let failing: Vec<String> = suite
        .lines
        .iter()
        .filter(|l| l.verdict == Verdict::Fail)
        .map(|l| l.id.to_string())
        .collect();
    let warned: Vec<String> = suite
        .lines
        .iter()
        .filter(|l| l.verdict == Verdict::Warn)
        .map(|l| l.id.to_string())
        .collect();
    println!(
        "acceptance: {passed}/{} criteria pass; failing [{}]; warn [{}]; {:.0} s",
        suite.lines.len(),
        failing.join(", "),
        warned.join(", "),
        secs(start.elapsed())
    );
    let gate: Vec<&Line> = suite
        .lines
        .iter()
        .filter(|l| l.gating && l.verdict == Verdict::Fail)
        .collect();
    if gate.is_empty() {
        ExitCode::SUCCESS
    } else {
        for l in gate {
            eprintln!("hard criterion {} failed: {}", l.id, l.detail);
        }
        ExitCode::FAILURE
    }
}
