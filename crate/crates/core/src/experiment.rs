//! Multi-trial experiments with paired seeds.
//!
//! Trial `k` of every arm runs with seed `base_seed + k`, so arms see the
//! same random stream until their samplers diverge. Trials run in parallel;
//! results are assembled by `(arm, trial)` index so output never depends on
//! scheduling.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::geometry::{Configuration, HyperRect};
use crate::planner::{PlanResult, Planner, PlannerParams};
use crate::scenario::Scenario;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "LDV_THREADS";

/// One algorithm configuration under test.
#[derive(Debug, Clone)]
pub struct Arm {
    pub label: String,
    pub params: PlannerParams,
}

impl Arm {
    pub fn new(params: PlannerParams) -> Self {
        Arm {
            label: params.label(),
            params,
        }
    }

    pub fn labeled(label: impl Into<String>, params: PlannerParams) -> Self {
        Arm {
            label: label.into(),
            params,
        }
    }
}

/// One CSV row: the state of one trial after one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub algorithm: String,
    pub iteration: usize,
    pub best_cost: Option<f64>,
    pub node_count: usize,
    pub fail_count: usize,
    pub elapsed_ns: u64,
}

/// Final state of one trial.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub arm: usize,
    pub trial: usize,
    pub seed: u64,
    pub iterations: usize,
    pub final_cost: Option<f64>,
    pub first_solution_iter: Option<usize>,
    pub best_path: Option<Vec<Configuration>>,
    /// Final best path crosses at least one declared passage region.
    pub passage_hit: bool,
    pub wall_time: Duration,
    pub digest: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArmSummary {
    pub label: String,
    pub trials: usize,
    /// Trials that ended with a path to the goal.
    pub solved: usize,
    /// Mean / sample standard deviation of the final cost over solved trials.
    pub mean_final_cost: Option<f64>,
    pub std_final_cost: Option<f64>,
    /// Fraction of trials whose final path crosses a passage region;
    /// `None` when the scenario declares no passage regions.
    pub success_rate: Option<f64>,
    pub mean_first_solution_iter: Option<f64>,
    pub mean_wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub arms: Vec<ArmSummary>,
}

impl ExperimentSummary {
    pub fn arm(&self, label: &str) -> Option<&ArmSummary> {
        self.arms.iter().find(|a| a.label == label)
    }
}

#[derive(Debug, Clone)]
pub struct Experiment {
    /// Rows ordered by (arm, trial, iteration).
    pub records: Vec<TrialRecord>,
    /// Ordered by (arm, trial).
    pub outcomes: Vec<TrialOutcome>,
    pub summary: ExperimentSummary,
}

impl Experiment {
    pub fn outcomes_for(&self, arm: usize) -> impl Iterator<Item = &TrialOutcome> + '_ {
        self.outcomes.iter().filter(move |o| o.arm == arm)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOptions {
    pub trials: usize,
    pub base_seed: u64,
    /// Fill `elapsed_ns` with wall-clock time (breaks byte-identical output).
    pub record_timing: bool,
    /// Run each trial for this much wall time (in 100-iteration chunks)
    /// instead of a fixed iteration budget.
    pub time_budget: Option<Duration>,
    /// Worker cap; `None` reads `LDV_THREADS`, then uses all cores.
    pub threads: Option<usize>,
}

impl ExperimentOptions {
    pub fn new(trials: usize, base_seed: u64) -> Self {
        ExperimentOptions {
            trials,
            base_seed,
            record_timing: false,
            time_budget: None,
            threads: None,
        }
    }
}

/// Worker count from `LDV_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// True if any edge of `path` touches the closed `region`. A single-point
/// path counts when the point lies inside.
pub fn passage_hit(path: &[Configuration], region: &HyperRect) -> bool {
    match path {
        [] => false,
        [only] => region.contains(only),
        _ => path
            .windows(2)
            .any(|w| region.intersects_segment(&w[0], &w[1])),
    }
}

fn run_trial(
    scenario: &Scenario,
    arm: &Arm,
    arm_index: usize,
    trial: usize,
    opts: &ExperimentOptions,
) -> Result<(TrialOutcome, PlanResult)> {
    let seed = opts.base_seed.wrapping_add(trial as u64);
    let mut params = arm.params.clone();
    params.seed = seed;
    let iters = params.max_iter;
    let mut planner = Planner::new(
        &scenario.world,
        scenario.start.clone(),
        scenario.goal.clone(),
        params,
    )?
    .with_timing(opts.record_timing);
    let iterations = match opts.time_budget {
        Some(budget) => planner.run_for(budget),
        None => {
            planner.run(iters);
            iters
        }
    };
    let result = planner.finish();
    let hit = result.best_path.as_deref().is_some_and(|p| {
        scenario
            .passage_regions
            .iter()
            .any(|r| passage_hit(p, &r.region))
    });
    let outcome = TrialOutcome {
        arm: arm_index,
        trial,
        seed,
        iterations,
        final_cost: result.best_cost,
        first_solution_iter: result.first_solution_iter,
        best_path: result.best_path.clone(),
        passage_hit: hit,
        wall_time: result.wall_time,
        digest: result.digest(),
    };
    Ok((outcome, result))
}

fn summarize(scenario: &Scenario, arm: &Arm, outcomes: &[&TrialOutcome]) -> ArmSummary {
    let costs: Vec<f64> = outcomes.iter().filter_map(|o| o.final_cost).collect();
    let mean = (!costs.is_empty()).then(|| costs.iter().sum::<f64>() / costs.len() as f64);
    let std = mean.map(|m| {
        if costs.len() < 2 {
            0.0
        } else {
            (costs.iter().map(|c| (c - m) * (c - m)).sum::<f64>() / (costs.len() - 1) as f64).sqrt()
        }
    });
    let firsts: Vec<f64> = outcomes
        .iter()
        .filter_map(|o| o.first_solution_iter.map(|i| i as f64))
        .collect();
    let n = outcomes.len().max(1);
    ArmSummary {
        label: arm.label.clone(),
        trials: outcomes.len(),
        solved: costs.len(),
        mean_final_cost: mean,
        std_final_cost: std,
        success_rate: (!scenario.passage_regions.is_empty())
            .then(|| outcomes.iter().filter(|o| o.passage_hit).count() as f64 / n as f64),
        mean_first_solution_iter: (!firsts.is_empty())
            .then(|| firsts.iter().sum::<f64>() / firsts.len() as f64),
        mean_wall_time: outcomes.iter().map(|o| o.wall_time).sum::<Duration>() / n as u32,
    }
}

/// Runs every arm for `opts.trials` paired-seed trials.
pub fn run_experiment(
    scenario: &Scenario,
    arms: &[Arm],
    opts: &ExperimentOptions,
) -> Result<Experiment> {
    if opts.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    if arms.is_empty() {
        return Err(Error::Config("at least one algorithm is required".into()));
    }
    let jobs: Vec<(usize, usize)> = (0..arms.len())
        .flat_map(|a| (0..opts.trials).map(move |t| (a, t)))
        .collect();
    let threads = opts.threads.or_else(threads_from_env).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let results: Vec<Result<(TrialOutcome, Vec<TrialRecord>)>> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|&(a, t)| {
                let (outcome, result) = run_trial(scenario, &arms[a], a, t, opts)?;
                let records = result
                    .trace
                    .iter()
                    .map(|row| TrialRecord {
                        trial: t,
                        seed: outcome.seed,
                        algorithm: arms[a].label.clone(),
                        iteration: row.iteration,
                        best_cost: row.best_cost,
                        node_count: row.node_count,
                        fail_count: row.fail_count,
                        elapsed_ns: row.elapsed_ns,
                    })
                    .collect();
                Ok((outcome, records))
            })
            .collect()
    });

    let mut records = Vec::new();
    let mut outcomes = Vec::with_capacity(jobs.len());
    for r in results {
        let (o, rows) = r?;
        records.extend(rows);
        outcomes.push(o);
    }
    let summary = ExperimentSummary {
        arms: arms
            .iter()
            .enumerate()
            .map(|(i, arm)| {
                let mine: Vec<&TrialOutcome> = outcomes.iter().filter(|o| o.arm == i).collect();
                summarize(scenario, arm, &mine)
            })
            .collect(),
    };
    Ok(Experiment {
        records,
        outcomes,
        summary,
    })
}
