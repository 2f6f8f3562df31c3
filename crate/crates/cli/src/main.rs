//! `rrt-ldv`: run RRT* / RRT*-LDV on scenario files.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 scenario error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use ldv_core::report::{emit_csv, emit_svg, format_summary};
use ldv_core::{
    run_experiment, Arm, Error, ExperimentOptions, Mode, ParamOverrides, Planner, Scenario,
    TrialRecord,
};

#[derive(Debug, Parser)]
#[command(
    name = "rrt-ldv",
    version,
    about = "RRT* and RRT*-LDV motion planning benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single planning run; writes a CSV trace and, for 2-D scenes, an SVG.
    Plan(RunArgs),
    /// Multi-trial paired-seed experiment; writes a CSV and prints a summary.
    Bench(RunArgs),
    /// Load and check a scenario file.
    Validate {
        /// Scenario file, or the name of a bundled scenario.
        scenario: PathBuf,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario file, or the name of a bundled scenario.
    scenario: PathBuf,
    /// Algorithm(s): rrt-star, ldv. Repeat or comma-separate for several arms.
    #[arg(long, value_delimiter = ',')]
    algo: Vec<String>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "lambda-s")]
    lambda_s: Option<f64>,
    #[arg(long = "lambda-i")]
    lambda_i: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long = "rho-fail")]
    rho_fail: Option<f64>,
    #[arg(long = "r-f")]
    r_f: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long = "goal-bias")]
    goal_bias: Option<f64>,
    #[arg(long = "eps-c")]
    eps_c: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Record wall-clock time in the elapsed_ns column (output is then not reproducible).
    #[arg(long = "wall-clock")]
    wall_clock: bool,
    /// Run each trial for a wall-time budget (milliseconds) instead of --iters.
    #[arg(long = "time-budget-ms")]
    time_budget_ms: Option<u64>,
}

impl RunArgs {
    fn overrides(&self) -> ParamOverrides {
        ParamOverrides {
            algo: None,
            iters: self.iters,
            trials: self.trials,
            seed: self.seed,
            lambda_s: self.lambda_s,
            lambda_i: self.lambda_i,
            m: self.m,
            rho_fail: self.rho_fail,
            r_f: self.r_f,
            eta: self.eta,
            gamma: self.gamma,
            goal_bias: self.goal_bias,
            eps_c: self.eps_c,
        }
    }

    /// Arms requested on the command line, else the scenario's algorithm,
    /// else `fallback`.
    fn arms(&self, scenario: &Scenario, fallback: &[Mode]) -> Result<Vec<Arm>, Failure> {
        let params = scenario.params.merged(&self.overrides());
        let modes: Vec<Mode> = if !self.algo.is_empty() {
            self.algo
                .iter()
                .map(|a| a.parse::<Mode>())
                .collect::<Result<_, _>>()
                .map_err(Failure::Usage)?
        } else if let Some(m) = params.mode().map_err(Failure::Scenario)? {
            vec![m]
        } else {
            fallback.to_vec()
        };
        modes
            .into_iter()
            .map(|m| {
                let mut p = params.resolve(m).map_err(Failure::Usage)?;
                p.sampler.v_max = scenario.world.diag();
                p.validate().map_err(Failure::Usage)?;
                Ok(Arm::labeled(m.to_string(), p))
            })
            .collect()
    }
}

enum Failure {
    Usage(Error),
    Scenario(Error),
    Runtime(Error),
}

impl Failure {
    fn report(self) -> ExitCode {
        let (code, e) = match self {
            Failure::Usage(e) => (1, e),
            Failure::Scenario(e) => (2, e),
            Failure::Runtime(e) => (1, e),
        };
        eprintln!("error: {e}");
        ExitCode::from(code)
    }
}

fn load(path: &Path) -> Result<Scenario, Failure> {
    Scenario::load(path).map_err(Failure::Scenario)
}

fn prepare_out(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| {
        Failure::Runtime(Error::Io {
            path: dir.to_path_buf(),
            source: e,
        })
    })
}

fn cmd_plan(args: &RunArgs) -> Result<(), Failure> {
    let scenario = load(&args.scenario)?;
    let arm = args
        .arms(&scenario, &[Mode::Ldv])?
        .into_iter()
        .next()
        .expect("at least one arm");
    prepare_out(&args.out)?;
    let params = arm.params.clone();
    let seed = params.seed;
    let iters = params.max_iter;
    let mut planner = Planner::new(
        &scenario.world,
        scenario.start.clone(),
        scenario.goal.clone(),
        params,
    )
    .map_err(Failure::Scenario)?
    .with_timing(args.wall_clock);
    match args.time_budget_ms {
        Some(ms) => {
            planner.run_for(Duration::from_millis(ms));
        }
        None => planner.run(iters),
    }
    let result = planner.finish();

    let records: Vec<TrialRecord> = result
        .trace
        .iter()
        .map(|row| TrialRecord {
            trial: 0,
            seed,
            algorithm: arm.label.clone(),
            iteration: row.iteration,
            best_cost: row.best_cost,
            node_count: row.node_count,
            fail_count: row.fail_count,
            elapsed_ns: row.elapsed_ns,
        })
        .collect();
    let stem = format!("{}-{}", scenario.name, arm.label);
    let csv_path = args.out.join(format!("{stem}.csv"));
    emit_csv(&records, &csv_path).map_err(Failure::Runtime)?;
    println!("wrote {}", csv_path.display());
    if scenario.dim() == 2 {
        let svg_path = args.out.join(format!("{stem}.svg"));
        emit_svg(&result, &scenario, &svg_path).map_err(Failure::Runtime)?;
        println!("wrote {}", svg_path.display());
    }
    let cost = result
        .best_cost
        .map_or_else(|| "none".to_string(), |c| format!("{c:.4}"));
    println!(
        "{}: {} iterations, {} nodes, {} near-obstacle nodes, best cost {}",
        arm.label,
        result.trace.len(),
        result.tree.len(),
        result.fail_set.len(),
        cost
    );
    Ok(())
}

fn cmd_bench(args: &RunArgs) -> Result<(), Failure> {
    let scenario = load(&args.scenario)?;
    let arms = args.arms(&scenario, &[Mode::RrtStar, Mode::Ldv])?;
    let merged = scenario.params.merged(&args.overrides());
    let mut opts = ExperimentOptions::new(merged.trials.unwrap_or(20), merged.seed.unwrap_or(0));
    opts.record_timing = args.wall_clock;
    opts.time_budget = args.time_budget_ms.map(Duration::from_millis);
    prepare_out(&args.out)?;
    let experiment = run_experiment(&scenario, &arms, &opts).map_err(|e| match e {
        Error::Config(_) => Failure::Usage(e),
        other => Failure::Runtime(other),
    })?;
    let csv_path = args.out.join(format!("{}-bench.csv", scenario.name));
    emit_csv(&experiment.records, &csv_path).map_err(Failure::Runtime)?;
    println!("wrote {}", csv_path.display());
    print!("{}", format_summary(&experiment.summary));
    Ok(())
}

fn cmd_validate(path: &Path) -> Result<(), Failure> {
    let s = load(path)?;
    println!(
        "{}: ok ({}-D, {} obstacles, {} passage regions)",
        s.name,
        s.dim(),
        s.world.obstacles().len(),
        s.passage_regions.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Plan(args) => cmd_plan(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Validate { scenario } => cmd_validate(scenario),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
