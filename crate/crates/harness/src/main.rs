use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use atm_moead::artifacts::{load_front_csv, write_events_csv, write_front_csv, write_run_json};
use atm_moead::batch::run_batch;
use atm_moead::config::{desk_preset, load_batch_file, load_run_file, RunSpec, DESK_REPLICATIONS};
use atm_moead::runner::{reference_front_size, run};
use atm_moead::stats::sci;

use atm_moead_core::indicators::{hv_for_objective_count, hv_reference, igd_for_problem};
use atm_moead_core::problems::ProblemSpec;

#[derive(Parser)]
#[command(
    name = "atm-moead",
    about = "Decomposition-based multi-objective optimisation with a weight adaptation trigger mechanism",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single seeded run and write its artifacts.
    Run(RunArgs),
    /// Execute a batch of replicated runs and summarise them.
    Batch(BatchArgs),
    /// Score an existing front CSV with IGD and hypervolume.
    Score(ScoreArgs),
    /// Sample a problem's analytic Pareto front into a reference CSV.
    Front(FrontArgs),
}

#[derive(Args)]
struct FrontArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    objectives: usize,
    /// Number of points (defaults to the per-objective-count standard size).
    #[arg(long)]
    size: Option<usize>,
    /// Normalise coordinates by the analytic front extremes (scaled problems).
    #[arg(long)]
    normalized: bool,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Optional TOML run config; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problem name (e.g. DTLZ2, IDTLZ1, MaF4, IMOP3).
    #[arg(long)]
    problem: Option<String>,
    /// Objective count.
    #[arg(long)]
    objectives: Option<usize>,
    /// Decision-variable count (defaults to the suite convention).
    #[arg(long)]
    variables: Option<usize>,
    /// atm-moead or moead-fixed.
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    population: Option<usize>,
    /// Evaluation budget.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    fre_fraction: Option<f64>,
    #[arg(long)]
    archive_multiplier: Option<f64>,
    #[arg(long)]
    t_fraction: Option<f64>,
    /// Reference front CSV for IGD (defaults to an analytic sample).
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Output directory for the run artifacts.
    #[arg(long)]
    out: PathBuf,
    /// Omit header rows from CSV outputs.
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct BatchArgs {
    /// Batch TOML config with [[run]] tables.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in preset: `desk` runs every 2-/3-objective instance under both
    /// algorithms with 11 seeds.
    #[arg(long)]
    preset: Option<String>,
    /// Replications per cell (seeds are base_seed + replicate index).
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    base_seed: Option<u64>,
    /// Output directory for run files, per-cell CSVs and the summary.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ScoreArgs {
    /// Front CSV to score (one point per row, M columns).
    #[arg(long)]
    front: PathBuf,
    #[arg(long)]
    problem: String,
    #[arg(long)]
    objectives: usize,
    /// Reference front CSV (defaults to an analytic sample).
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Size of the generated reference front when none is supplied.
    #[arg(long)]
    reference_size: Option<usize>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => cmd_run(args),
        Command::Batch(args) => cmd_batch(args),
        Command::Score(args) => cmd_score(args),
        Command::Front(args) => cmd_front(args),
    }
}

fn cmd_front(args: FrontArgs) -> Result<()> {
    let problem = ProblemSpec::by_name(&args.problem, args.objectives)
        .map_err(anyhow::Error::new)
        .context("problem/objectives")?;
    let n = args
        .size
        .unwrap_or_else(|| reference_front_size(args.objectives));
    let front = if args.normalized {
        problem.pareto_front_sample_normalized(n)
    } else {
        problem.pareto_front_sample(n)
    }
    .map_err(anyhow::Error::new)?;
    write_front_csv(&args.out, &front.points)?;
    println!(
        "{} front points for {}-{} written to {}",
        front.points.len(),
        problem.name(),
        args.objectives,
        args.out.display()
    );
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let mut spec = match &args.config {
        Some(path) => load_run_file(path)?,
        None => {
            let problem = args
                .problem
                .clone()
                .context("either --config or --problem is required")?;
            let objectives = args
                .objectives
                .context("--objectives is required without --config")?;
            let algorithm = args
                .algorithm
                .clone()
                .context("--algorithm is required without --config")?;
            RunSpec::new(&problem, objectives, &algorithm)
        }
    };
    if let Some(v) = args.problem {
        spec.problem = v;
    }
    if let Some(v) = args.objectives {
        spec.objectives = v;
    }
    if let Some(v) = args.variables {
        spec.variables = Some(v);
    }
    if let Some(v) = args.algorithm {
        spec.algorithm = v;
    }
    if let Some(v) = args.seed {
        spec.seed = v;
    }
    if let Some(v) = args.population {
        spec.population = Some(v);
    }
    if let Some(v) = args.budget {
        spec.budget = Some(v);
    }
    if let Some(v) = args.fre_fraction {
        spec.fre_fraction = v;
    }
    if let Some(v) = args.archive_multiplier {
        spec.archive_multiplier = v;
    }
    if let Some(v) = args.t_fraction {
        spec.t_fraction = v;
    }

    let reference = args.reference.as_deref().map(load_front_csv).transpose()?;
    let result = run(&spec, reference.as_deref())?;

    std::fs::create_dir_all(&args.out)?;
    let stem = format!("{}_seed{}", spec.cell_label(), spec.seed);
    write_run_json(&args.out.join(format!("{stem}.json")), &result)?;
    write_front_csv(
        &args.out.join(format!("{stem}_front.csv")),
        &result.final_population,
    )?;
    if !result.final_archive.is_empty() {
        write_front_csv(
            &args.out.join(format!("{stem}_archive.csv")),
            &result.final_archive,
        )?;
    }
    write_front_csv(
        &args.out.join(format!("{stem}_weights.csv")),
        &result.final_weights,
    )?;
    write_events_csv(
        &args.out.join(format!("{stem}_events.csv")),
        &result.trigger_events,
        !args.no_header,
    )?;

    println!(
        "{} seed {}: igd {} hv {} ({} evaluations, {} generations, {} adaptations, {} ms)",
        spec.cell_label(),
        spec.seed,
        sci(result.igd, 3),
        sci(result.hv, 3),
        result.eval_count,
        result.generations,
        result.adaptations,
        result.wall_time_ms
    );
    Ok(())
}

fn cmd_batch(args: BatchArgs) -> Result<()> {
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker pool")?;
    }
    let (mut spec, default_reps) = match (&args.config, args.preset.as_deref()) {
        (Some(path), None) => (load_batch_file(path)?, 30),
        (None, Some("desk")) => (desk_preset(), DESK_REPLICATIONS),
        (None, Some(other)) => bail!("unknown preset '{other}' (available: desk)"),
        (None, None) => bail!("either --config or --preset is required"),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if let Some(seed) = args.base_seed {
        spec.base_seed = seed;
    }
    let replications = args.replications.unwrap_or(default_reps);

    std::fs::create_dir_all(&args.out)?;
    let summary = run_batch(&spec, replications, &args.out)?;
    for cell in &summary.cells {
        let sig = match (cell.igd_p_vs_baseline, cell.significant_at_0_05) {
            (Some(p), Some(true)) => format!("  p={p:.4} (significant)"),
            (Some(p), Some(false)) => format!("  p={p:.4}"),
            _ => String::new(),
        };
        println!(
            "{}-{} {:<12} igd {}  hv {}{}",
            cell.problem,
            cell.objectives,
            cell.algorithm,
            atm_moead::stats::format_mean_sd(cell.igd_mean, cell.igd_sd),
            atm_moead::stats::format_mean_sd(cell.hv_mean, cell.hv_sd),
            sig
        );
    }
    for failure in &summary.failures {
        eprintln!("failed: {failure}");
    }
    println!(
        "summary written to {}",
        args.out.join("summary.csv").display()
    );
    Ok(())
}

fn cmd_score(args: ScoreArgs) -> Result<()> {
    let problem = ProblemSpec::by_name(&args.problem, args.objectives)
        .map_err(anyhow::Error::new)
        .context("problem/objectives")?;
    let front = load_front_csv(&args.front)?;
    anyhow::ensure!(
        front.iter().all(|p| p.len() == args.objectives),
        "front {} has a different column count than --objectives {}",
        args.front.display(),
        args.objectives
    );
    let reference = match &args.reference {
        Some(path) => load_front_csv(path)?,
        None => {
            let n = args
                .reference_size
                .unwrap_or_else(|| reference_front_size(args.objectives));
            problem
                .pareto_front_sample(n)
                .map_err(anyhow::Error::new)?
                .points
        }
    };
    let igd = igd_for_problem(&front, &reference, &problem).map_err(anyhow::Error::new)?;
    let (hv, mc_samples) = hv_for_objective_count(&front, &hv_reference(&problem));
    println!("igd {}", sci(igd, 3));
    match mc_samples {
        Some(samples) => println!("hv {} (monte carlo, {samples} samples)", sci(hv, 3)),
        None => println!("hv {}", sci(hv, 3)),
    }
    Ok(())
}
