use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use corank::experiments::{
    rerun_manifest, run_campaign, write_outputs, EdgeProbability, ExperimentConfig, ExperimentKind,
    RunManifest, Status,
};
use corank::graph::io::{read_graph_file, write_graph};
use corank::graph::{combinatorial_rank, graph_of, min_deficiency_witness, Graph};
use corank::matrix::io::{read_matrix_file, write_matrix};
use corank::matrix::{exact_rank, Coefficient, DiagonalMode, Domain, SparseSymMatrix};
use corank::predicates::{
    is_good, is_locally_sparse, is_small_set_expander, is_well_separated, GoodnessParams,
};
use corank::structure::{build_decomposition, largest_unobstructed_size, UMode};
use corank::{Error, Result};

#[derive(Parser)]
#[command(
    name = "corank",
    version,
    about = "Exact and combinatorial ranks of sparse random symmetric matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample Q(W, p) and write mask, weights, Q and its graph.
    Sample(SampleArgs),
    /// Exact, combinatorial and structural rank of a matrix file.
    Rank(RankArgs),
    /// Evaluate the graph predicates on a matrix or graph file.
    Check(CheckArgs),
    /// Run the campaign described by a config file.
    Verify(VerifyArgs),
    /// Run a campaign from command-line flags.
    Run(RunArgs),
    /// Re-run the campaign recorded in a manifest.
    Rerun(RerunArgs),
}

#[derive(Args)]
struct ProbabilityArgs {
    /// Absolute edge probability.
    #[arg(long, conflicts_with = "c")]
    p: Option<f64>,
    /// Edge probability as c ln n / n.
    #[arg(long)]
    c: Option<f64>,
}

impl ProbabilityArgs {
    fn probability(&self) -> Result<EdgeProbability> {
        match (self.p, self.c) {
            (Some(p), _) => Ok(EdgeProbability::Absolute(p)),
            (None, Some(c)) => Ok(EdgeProbability::Scaled(c)),
            (None, None) => Err(Error::InvalidParameter(
                "one of --p or --c is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    prob: ProbabilityArgs,
    #[arg(long, value_parser = parse_diagonal, default_value = "zero")]
    diagonal_mode: DiagonalMode,
    #[arg(long, env = "CORANK_SEED")]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RankArgs {
    matrix: PathBuf,
    /// Obstruction size bound for the structural rank.
    #[arg(long, default_value_t = 6)]
    s: usize,
    /// Print a minimum-deficiency witness set.
    #[arg(long)]
    witness: bool,
    /// Also print U (exact up to 22 vertices, else structural).
    #[arg(long)]
    unobstructed: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    /// Read the input as a graph file instead of a matrix file.
    #[arg(long)]
    graph: bool,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    s: usize,
}

#[derive(Args)]
struct VerifyArgs {
    config: PathBuf,
    #[arg(long, default_value = "corank-out")]
    out: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, env = "CORANK_SEED")]
    seed: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    experiment: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    prob: ProbabilityArgs,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long, env = "CORANK_SEED")]
    seed: u64,
    #[arg(long, value_parser = parse_diagonal, default_value = "zero")]
    diagonal_mode: DiagonalMode,
    /// Degree for dregular-singularity.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value = "corank-out")]
    out: PathBuf,
    #[arg(long)]
    override_hypotheses: bool,
}

#[derive(Args)]
struct RerunArgs {
    manifest: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn parse_diagonal(s: &str) -> std::result::Result<DiagonalMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Check(a) => cmd_check(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Run(a) => cmd_run(a),
        Command::Rerun(a) => cmd_rerun(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_sample(a: SampleArgs) -> Result<ExitCode> {
    let p = a.prob.probability()?.resolve(a.n);
    let inst = corank::experiments::sample_instance(a.n, p, a.diagonal_mode, a.seed)?;
    fs::create_dir_all(&a.out)?;
    let ones = inst
        .mask
        .support()
        .iter()
        .map(|&(i, j)| (i, j, Coefficient::Prime(1)));
    let mask = SparseSymMatrix::from_triplets(a.n, Domain::default(), ones)?;
    fs::write(a.out.join("mask.txt"), write_matrix(&mask))?;
    fs::write(
        a.out.join("weights.txt"),
        write_matrix(&inst.weights.to_sparse()),
    )?;
    fs::write(a.out.join("q.txt"), write_matrix(&inst.q))?;
    fs::write(a.out.join("graph.txt"), write_graph(&graph_of(&inst.q)))?;
    println!("wrote {}", a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_rank(a: RankArgs) -> Result<ExitCode> {
    let q = read_matrix_file(&a.matrix)?;
    let g = graph_of(&q);
    let exact = exact_rank(&q);
    let comb = combinatorial_rank(&g);
    let structural = match build_decomposition(&g, a.s) {
        Ok(d) => Some(d.predicted_rank(q.n())),
        Err(Error::StructuralFailure { .. }) => None,
        Err(e) => return Err(e),
    };
    let witness = a.witness.then(|| min_deficiency_witness(&g));
    let u = if a.unobstructed {
        let mode = if q.n() <= 22 {
            UMode::Exact
        } else {
            UMode::Structural
        };
        Some(largest_unobstructed_size(&g, a.s, mode)?)
    } else {
        None
    };
    if a.json {
        let v = json!({
            "n": q.n(),
            "exact_rank": exact,
            "combinatorial_rank": comb,
            "structural_rank": structural,
            "witness": witness,
            "u": u.map(|u| u.value),
            "u_mode": u.map(|u| u.label()),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("n                  {}", q.n());
        println!("exact rank         {exact}");
        println!("combinatorial rank {comb}");
        match structural {
            Some(r) => println!("structural rank    {r}"),
            None => println!("structural rank    (decomposition stalled)"),
        }
        if let Some(w) = &witness {
            println!("witness            {}", serde_json::to_string(w)?);
        }
        if let Some(u) = u {
            println!("U                  {} ({})", u.value, u.label());
        }
    }
    Ok(if exact > comb {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn load_graph(path: &Path, as_graph: bool) -> Result<Graph> {
    if as_graph {
        read_graph_file(path)
    } else {
        Ok(graph_of(&read_matrix_file(path)?))
    }
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode> {
    let g = load_graph(&a.input, a.graph)?;
    let params = GoodnessParams::new(g.n(), a.p, a.s)?;
    let v = json!({
        "params": params,
        "well_separated": is_well_separated(&g, &params),
        "locally_sparse": is_locally_sparse(&g, &params),
        "small_set_expander": is_small_set_expander(&g, &params),
        "good": is_good(&g, &params),
    });
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(ExitCode::SUCCESS)
}

fn execute(command: &str, cfg: &ExperimentConfig, out: &Path) -> Result<ExitCode> {
    let mut manifest = RunManifest::new(command, cfg);
    let result = run_campaign(cfg)?;
    let paths = write_outputs(&result, out)?;
    let mut outputs = vec![paths.csv, paths.summary];
    outputs.extend(paths.bundles);
    manifest.finish(outputs);
    manifest.write(out.join("manifest.json"))?;
    let s = &result.summary;
    for r in &s.rates {
        let verdict = match r.met {
            Some(true) => " [met]",
            Some(false) => " [WARN]",
            None => "",
        };
        println!(
            "{:<28} {:>6}/{:<6} {:.4}  95% CI [{:.4}, {:.4}]{verdict}",
            r.name, r.count, r.total, r.rate, r.ci_low, r.ci_high
        );
    }
    for (k, v) in &s.values {
        println!("{k:<28} {v:.6}");
    }
    for w in &s.warnings {
        println!("WARN {w}");
    }
    for v in &s.hard_violations {
        eprintln!("VIOLATION {v}");
    }
    println!("status {:?}; outputs in {}", s.status, out.display());
    Ok(if s.status == Status::Violation {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::from_file(&a.config, a.seed)?;
    if a.workers.is_some() {
        cfg.workers = a.workers;
    }
    cfg.validate()?;
    execute("verify", &cfg, &a.out)
}

fn cmd_run(a: RunArgs) -> Result<ExitCode> {
    let kind: ExperimentKind = a.experiment.parse()?;
    let probability = match kind {
        ExperimentKind::DregularSingularity => EdgeProbability::Absolute(0.0),
        _ => a.prob.probability()?,
    };
    let mut cfg = ExperimentConfig::new(kind, a.n, probability, a.trials, a.seed);
    cfg.s = a.s;
    cfg.diagonal_mode = a.diagonal_mode;
    cfg.d = a.d;
    cfg.workers = a.workers;
    cfg.override_hypotheses = a.override_hypotheses;
    cfg.validate()?;
    execute("run", &cfg, &a.out)
}

fn cmd_rerun(a: RerunArgs) -> Result<ExitCode> {
    let m = RunManifest::read(&a.manifest)?;
    let result = rerun_manifest(&m)?;
    let paths = write_outputs(&result, &a.out)?;
    println!("wrote {}", paths.csv.display());
    Ok(if result.has_violations() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
