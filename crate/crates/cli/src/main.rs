//! Command-line experiment runner.
//!
//! Exit codes: 0 success, 2 configuration error, 3 runtime failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use sra3::analysis::{profile_argmax, FrontShape, ShapeKind, DEFAULT_ALPHA};
use sra3::experiment::{
    bias_study, load_results, read_json, render_summary_table, run_experiment, summarize,
    write_atomic, write_json_atomic, write_summary_csv, BiasStudy, ExperimentConfig, FrontSampling, ProblemCell,
    DEFAULT_RUNS,
};
use sra3::problems::write_front_csv;
use sra3::sra3::DEFAULT_MAX_EVALUATIONS;
use sra3::{Error, NormalizationVariant, ProblemName, ProblemSpec, RandomSource};

#[derive(Debug, Parser)]
#[command(name = "sra3", version, about = "Two-archive many-objective optimizer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every problem x objective count x variant cell and store the results.
    Run(RunArgs),
    /// Tabulate stored results with pairwise rank-sum verdicts.
    Summarize(SummarizeArgs),
    /// Write the mean epsilon-indicator profile of a two-objective front.
    Bias(BiasArgs),
    /// Export a sampled reference front.
    Front(FrontArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment configuration as JSON; the flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Problems, comma-separated (e.g. DTLZ2,WFG4).
    #[arg(long, value_delimiter = ',')]
    problem: Vec<ProblemName>,
    /// Objective counts, comma-separated.
    #[arg(long, value_delimiter = ',')]
    objectives: Vec<usize>,
    /// Normalization variants, comma-separated: none, eps, sde, both.
    #[arg(long, value_delimiter = ',')]
    variant: Vec<NormalizationVariant>,
    /// Archive size for every objective count (default: 210, 275, 135,
    /// 135, 135 for 5, 10, 15, 20, 25 objectives).
    #[arg(long)]
    archive_size: Option<usize>,
    /// Evaluation budget per run [default: 90000].
    #[arg(long)]
    max_evals: Option<usize>,
    /// Independent runs per cell [default: 20].
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run i uses seed + i [default: 1].
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory [default: results].
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum concurrent runs [default: all cores].
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct SummarizeArgs {
    /// Directory written by `run`.
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Significance level of the rank-sum test.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct BiasArgs {
    /// Front shape: concave, convex or linear.
    #[arg(long, default_value = "linear")]
    shape: ShapeKind,
    /// Objective ranges f1,f2.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.0])]
    scales: Vec<f64>,
    /// Number of front points.
    #[arg(long, default_value_t = 1000)]
    points: usize,
    /// Min-max scale the objectives before computing the indicator.
    #[arg(long)]
    normalized: bool,
    /// Draw front parameters at random with this seed instead of a grid.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV.
    #[arg(long, default_value = "bias_profile.csv")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct FrontArgs {
    #[arg(long)]
    problem: ProblemName,
    #[arg(long)]
    objectives: usize,
    /// Number of points.
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV.
    #[arg(long)]
    out: PathBuf,
}

fn build_config(args: RunArgs) -> sra3::Result<ExperimentConfig> {
    let mut config = match &args.config {
        Some(path) => read_json::<ExperimentConfig>(path).map_err(|e| match e {
            Error::Json(j) => Error::Config(format!("{}: {j}", path.display())),
            other => other,
        })?,
        None => {
            let mut c = ExperimentConfig::new(vec![], vec![NormalizationVariant::None], "results");
            c.max_evaluations = DEFAULT_MAX_EVALUATIONS;
            c.runs = DEFAULT_RUNS;
            c
        }
    };
    if !args.problem.is_empty() || !args.objectives.is_empty() {
        if args.problem.is_empty() || args.objectives.is_empty() {
            return Err(Error::Config(
                "--problem and --objectives must be given together".into(),
            ));
        }
        config.problems = args
            .problem
            .iter()
            .flat_map(|&problem| args.objectives.iter().map(move |&m| ProblemCell { problem, m }))
            .collect();
    }
    if !args.variant.is_empty() {
        config.variants = args.variant;
    }
    if let Some(n) = args.archive_size {
        for cell in &config.problems {
            config.archive_sizes.insert(cell.m, n);
        }
    }
    if let Some(v) = args.max_evals {
        config.max_evaluations = v;
    }
    if let Some(v) = args.runs {
        config.runs = v;
    }
    if let Some(v) = args.seed {
        config.base_seed = v;
    }
    if let Some(v) = args.out {
        config.output_dir = v;
    }
    if args.jobs.is_some() {
        config.jobs = args.jobs;
    }
    if config.problems.is_empty() {
        return Err(Error::Config("no problems given (use --problem and --objectives)".into()));
    }
    config.validate()?;
    Ok(config)
}

fn run(args: RunArgs) -> sra3::Result<()> {
    let config = build_config(args)?;
    write_json_atomic(&config.output_dir.join("experiment.json"), &config)?;
    let results = run_experiment(&config)?;
    println!(
        "{} runs written to {}",
        results.len(),
        config.output_dir.display()
    );
    Ok(())
}

fn summarize_dir(args: SummarizeArgs) -> sra3::Result<()> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(Error::Config("--alpha must lie in (0, 1)".into()));
    }
    let results = load_results(&args.out)?;
    let summary = summarize(&results, args.alpha)?;
    write_summary_csv(&summary, &args.out)?;
    print!("{}", render_summary_table(&summary));
    Ok(())
}

fn bias(args: BiasArgs) -> sra3::Result<()> {
    if args.scales.len() != 2 {
        return Err(Error::Config("--scales takes exactly two values".into()));
    }
    let shape = FrontShape::new(args.shape, [args.scales[0], args.scales[1]])?;
    let study = BiasStudy {
        shape,
        points: args.points,
        normalized: args.normalized,
        sampling: match args.seed {
            Some(seed) => FrontSampling::Random { seed },
            None => FrontSampling::Grid,
        },
    };
    let rows = bias_study(&study, &args.out)?;
    if let Some(i) = profile_argmax(&rows) {
        let r = rows[i];
        println!(
            "max mean epsilon {:.6} at t={:.4} (f1={:.4}, f2={:.4})",
            r.mean_eps, r.t, r.f1, r.f2
        );
    }
    Ok(())
}

fn front(args: FrontArgs) -> sra3::Result<()> {
    let spec = ProblemSpec::new(args.problem, args.objectives)?;
    if args.points == 0 {
        return Err(Error::Config("--points must be at least 1".into()));
    }
    let points = spec.sample_reference_front(args.points, &mut RandomSource::new(args.seed))?;
    write_atomic(&args.out, |w| {
        write_front_csv(w, &points, Some((&spec, points.len())))
    })?;
    info!("{} points written to {}", points.len(), args.out.display());
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Usage(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => run(a),
        Command::Summarize(a) => summarize_dir(a),
        Command::Bias(a) => bias(a),
        Command::Front(a) => front(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
