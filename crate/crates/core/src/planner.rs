//! RRT* main loop, shared by the baseline and the LDV variant.
//!
//! Both modes consume the random stream identically until the first
//! solution is found; the LDV bookkeeping (visibility, fail set, importance)
//! never draws from the stream.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::geometry::{distance, Configuration, World};
use crate::ldv::{self, FailSet, SampleOrigin, SamplerParams};
use crate::rng::{RandomSource, SeededRng};
use crate::tree::{neighbor_radius, NodeId, Tree};

/// Rewires must improve cost by more than this.
pub const REWIRE_EPS: f64 = 1e-12;

/// Closed ball around `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalRegion {
    center: Configuration,
    radius: f64,
}

impl GoalRegion {
    pub fn new(center: Configuration, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "goal radius must be positive, got {radius}"
            )));
        }
        Ok(GoalRegion { center, radius })
    }

    pub fn center(&self) -> &Configuration {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, q: &[f64]) -> bool {
        distance(&self.center, q) <= self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    RrtStar,
    Ldv,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::RrtStar => "rrt-star",
            Mode::Ldv => "ldv",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rrt-star" | "rrt_star" | "rrtstar" => Ok(Mode::RrtStar),
            "ldv" => Ok(Mode::Ldv),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerParams {
    pub mode: Mode,
    /// Steer size.
    pub eta: f64,
    /// Shrinking-ball constant.
    pub gamma: f64,
    /// Back-off from the obstacle when placing a fail node.
    pub eps_c: f64,
    /// Minimum spacing of fail nodes.
    pub rho_fail: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// `v_max` is overwritten with the world diagonal by the planner.
    pub sampler: SamplerParams,
}

impl PlannerParams {
    /// Defaults: `ε_c = 0.05`, `ρ_fail = η`, 1500 iterations, seed 0, and the
    /// sampler defaults of [`SamplerParams::with_eta`].
    pub fn new(mode: Mode, eta: f64, gamma: f64) -> Self {
        PlannerParams {
            mode,
            eta,
            gamma,
            eps_c: 0.05,
            rho_fail: eta,
            max_iter: 1500,
            seed: 0,
            sampler: SamplerParams::with_eta(eta, 0.0),
        }
    }

    /// Human-readable label used in reports.
    pub fn label(&self) -> String {
        match self.mode {
            Mode::RrtStar => "rrt-star".to_string(),
            Mode::Ldv => format!(
                "ldv(ls={},li={})",
                self.sampler.lambda_s, self.sampler.lambda_i
            ),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.eta.is_nan() || self.eta <= 0.0 || self.gamma.is_nan() || self.gamma <= 0.0 {
            return Err(Error::Config(format!(
                "eta and gamma must be positive (got {}, {})",
                self.eta, self.gamma
            )));
        }
        if !(self.eps_c > 0.0 && self.eps_c < self.eta) {
            return Err(Error::Config(format!(
                "eps_c must satisfy 0 < eps_c < eta (got {})",
                self.eps_c
            )));
        }
        if self.rho_fail.is_nan() || self.rho_fail <= 0.0 {
            return Err(Error::Config(format!(
                "rho_fail must be positive (got {})",
                self.rho_fail
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        self.sampler.validate()
    }
}

/// One row of the per-iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based iteration number.
    pub iteration: usize,
    pub best_cost: Option<f64>,
    pub node_count: usize,
    pub fail_count: usize,
    /// Wall time since the run started; 0 when timing is disabled.
    pub elapsed_ns: u64,
}

#[derive(Debug, Clone)]
pub struct PlanResult {
    pub tree: Tree,
    pub fail_set: FailSet,
    pub best_path: Option<Vec<Configuration>>,
    pub best_cost: Option<f64>,
    pub first_solution_iter: Option<usize>,
    pub trace: Vec<TraceRow>,
    /// Total wall time spent iterating, measured regardless of trace timing.
    pub wall_time: Duration,
}

impl PlanResult {
    /// Hash of everything deterministic in the result (excludes timings).
    pub fn digest(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for (_, n) in self.tree.nodes() {
            n.config().iter().for_each(|c| c.to_bits().hash(&mut h));
            n.parent().hash(&mut h);
            n.cost().to_bits().hash(&mut h);
            n.vis().to_bits().hash(&mut h);
        }
        for f in self.fail_set.items() {
            f.config.iter().for_each(|c| c.to_bits().hash(&mut h));
            f.importance.to_bits().hash(&mut h);
        }
        for row in &self.trace {
            row.iteration.hash(&mut h);
            row.best_cost.map(f64::to_bits).hash(&mut h);
            row.node_count.hash(&mut h);
            row.fail_count.hash(&mut h);
        }
        self.first_solution_iter.hash(&mut h);
        h.finish()
    }
}

/// `argmin ||z - x_rand||` subject to `||z - x_nearest|| <= eta`; `None`
/// when the two inputs coincide.
pub fn steer(x_nearest: &Configuration, x_rand: &Configuration, eta: f64) -> Option<Configuration> {
    let dir = x_nearest.direction_to(x_rand)?;
    if x_nearest.distance(x_rand) <= eta {
        Some(x_rand.clone())
    } else {
        Some(x_nearest.offset(&dir, eta))
    }
}

/// Cheapest collision-free parent for `x_new` among `near ∪ {nearest}`.
/// Ties go to the lowest id.
pub fn best_parent(
    tree: &Tree,
    x_new: &Configuration,
    near: &[NodeId],
    nearest: NodeId,
    world: &World,
) -> NodeId {
    let mut candidates: Vec<(f64, NodeId)> = near
        .iter()
        .copied()
        .chain(std::iter::once(nearest))
        .map(|id| {
            (
                tree.node(id).cost() + tree.node(id).config().distance(x_new),
                id,
            )
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    candidates.dedup_by_key(|c| c.1);
    candidates
        .into_iter()
        .find(|&(_, id)| {
            id == nearest || world.segment_free_unchecked(tree.node(id).config(), x_new)
        })
        .map(|(_, id)| id)
        .unwrap_or(nearest)
}

/// Reparents each candidate (ascending id) under `x_new` when that strictly
/// lowers its cost through a free edge. Returns the reparented ids.
pub fn rewire(tree: &mut Tree, x_new: NodeId, candidates: &[NodeId], world: &World) -> Vec<NodeId> {
    let mut ids = candidates.to_vec();
    ids.sort_unstable();
    let mut rewired = Vec::new();
    for id in ids {
        if id == x_new || tree.is_ancestor(id, x_new) {
            continue;
        }
        let (new_cfg, new_cost) = (tree.node(x_new).config(), tree.node(x_new).cost());
        let through = new_cost + new_cfg.distance(tree.node(id).config());
        if through < tree.node(id).cost() - REWIRE_EPS
            && world.segment_free_unchecked(new_cfg, tree.node(id).config())
        {
            tree.set_parent(id, x_new)
                .expect("ancestor check rules out cycles");
            rewired.push(id);
        }
    }
    rewired
}

/// Lowest-cost node inside the goal region (ties to lowest id) and its
/// root-to-node path.
pub fn extract_best_path(tree: &Tree, goal: &GoalRegion) -> Option<(Vec<Configuration>, f64)> {
    let mut best: Option<(NodeId, f64)> = None;
    for (id, n) in tree.nodes() {
        if goal.contains(n.config()) && best.is_none_or(|(_, c)| n.cost() < c) {
            best = Some((id, n.cost()));
        }
    }
    best.map(|(id, cost)| (tree.path_to(id), cost))
}

/// What happened during one loop pass.
#[derive(Debug, Clone)]
pub struct IterationReport {
    pub iteration: usize,
    pub sample: Configuration,
    pub origin: SampleOrigin,
    pub nearest: NodeId,
    /// `None` when the sample coincided with its nearest node or the
    /// extension collided.
    pub x_new: Option<NodeId>,
    pub near: Vec<NodeId>,
    pub rewired: Vec<NodeId>,
    pub fail_added: bool,
}

/// Incremental planner state; [`plan`] drives it for a fixed budget.
pub struct Planner<'w, R = SeededRng> {
    world: &'w World,
    goal: GoalRegion,
    params: PlannerParams,
    rng: R,
    tree: Tree,
    fail_set: FailSet,
    first_found: bool,
    first_solution_iter: Option<usize>,
    goal_nodes: Vec<NodeId>,
    iteration: usize,
    trace: Vec<TraceRow>,
    record_timing: bool,
    started: Option<Instant>,
    wall_time: Duration,
}

impl<'w> Planner<'w, SeededRng> {
    pub fn new(
        world: &'w World,
        start: Configuration,
        goal: GoalRegion,
        params: PlannerParams,
    ) -> Result<Self> {
        let rng = SeededRng::new(params.seed);
        Planner::with_rng(world, start, goal, params, rng)
    }
}

impl<'w, R: RandomSource> Planner<'w, R> {
    pub fn with_rng(
        world: &'w World,
        start: Configuration,
        goal: GoalRegion,
        mut params: PlannerParams,
        rng: R,
    ) -> Result<Self> {
        world.check_dim(&start)?;
        world.check_dim(goal.center())?;
        if !start.is_finite() || !world.point_free_unchecked(&start) {
            return Err(Error::InvalidInput("start in collision".into()));
        }
        if !world.point_free_unchecked(goal.center()) {
            return Err(Error::InvalidInput("goal center in collision".into()));
        }
        params.sampler.v_max = world.diag();
        if params.mode == Mode::RrtStar {
            params.sampler.lambda_s = 0.0;
        }
        params.validate()?;
        let mut tree = Tree::new(start, world.diag());
        ldv::compute_dir_vis(&mut tree, NodeId::ROOT, world);
        let fail_set = FailSet::new(params.rho_fail);
        let mut planner = Planner {
            world,
            goal,
            params,
            rng,
            tree,
            fail_set,
            first_found: false,
            first_solution_iter: None,
            goal_nodes: Vec::new(),
            iteration: 0,
            trace: Vec::new(),
            record_timing: false,
            started: None,
            wall_time: Duration::ZERO,
        };
        if planner
            .goal
            .contains(planner.tree.node(NodeId::ROOT).config())
        {
            planner.goal_nodes.push(NodeId::ROOT);
        }
        Ok(planner)
    }

    /// Record wall-clock time in the trace. Off by default so traces are
    /// reproducible byte for byte.
    pub fn with_timing(mut self, on: bool) -> Self {
        self.record_timing = on;
        self
    }

    pub fn params(&self) -> &PlannerParams {
        &self.params
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn fail_set(&self) -> &FailSet {
        &self.fail_set
    }

    pub fn world(&self) -> &World {
        self.world
    }

    pub fn goal(&self) -> &GoalRegion {
        &self.goal
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn first_found(&self) -> bool {
        self.first_found
    }

    pub fn trace(&self) -> &[TraceRow] {
        &self.trace
    }

    /// Current best goal node and its cost.
    pub fn best(&self) -> Option<(NodeId, f64)> {
        let mut best: Option<(NodeId, f64)> = None;
        for &id in &self.goal_nodes {
            let c = self.tree.node(id).cost();
            if best.is_none_or(|(b, bc)| c < bc || (c == bc && id < b)) {
                best = Some((id, c));
            }
        }
        best
    }

    /// Runs one loop pass and appends a trace row.
    pub fn step(&mut self) -> IterationReport {
        let t0 = Instant::now();
        self.started.get_or_insert(t0);
        self.iteration += 1;
        let it = self.iteration;
        let ldv_on = self.params.mode == Mode::Ldv;
        let world = self.world;

        let (sample, origin) = ldv::draw_sample(
            self.first_found,
            &self.fail_set,
            &mut self.rng,
            &self.params.sampler,
            world,
            &self.goal,
        );
        let nearest = self
            .tree
            .nearest(&sample)
            .expect("sample has world dimension");
        let x_nearest = self.tree.node(nearest).config().clone();
        let mut report = IterationReport {
            iteration: it,
            sample,
            origin,
            nearest,
            x_new: None,
            near: Vec::new(),
            rewired: Vec::new(),
            fail_added: false,
        };

        if let Some(x_new) = steer(&x_nearest, &report.sample, self.params.eta) {
            if ldv_on {
                if let Some(candidate) =
                    ldv::get_xfail(&x_nearest, &x_new, world, self.params.eps_c)
                {
                    if self.fail_set.add(candidate, it) {
                        let idx = self.fail_set.len() - 1;
                        let imp = ldv::importance_of(
                            &self.fail_set.items()[idx].config,
                            &self.tree,
                            &self.params.sampler,
                        );
                        self.fail_set.set_importance(idx, imp);
                        report.fail_added = true;
                    }
                }
            }
            if world.segment_free_unchecked(&x_nearest, &x_new)
                && world.point_free_unchecked(&x_new)
            {
                self.extend(x_new, nearest, &mut report);
            }
        }

        self.wall_time += t0.elapsed();
        let elapsed_ns = if self.record_timing {
            self.started.map_or(0, |s| s.elapsed().as_nanos() as u64)
        } else {
            0
        };
        self.trace.push(TraceRow {
            iteration: it,
            best_cost: self.best().map(|(_, c)| c),
            node_count: self.tree.len(),
            fail_count: self.fail_set.len(),
            elapsed_ns,
        });
        report
    }

    fn extend(&mut self, x_new: Configuration, nearest: NodeId, report: &mut IterationReport) {
        let world = self.world;
        let r = neighbor_radius(
            self.tree.len(),
            world.dim(),
            self.params.gamma,
            self.params.eta,
        )
        .expect("validated parameters");
        let near = self.tree.near(&x_new, r).expect("dimension checked");
        let parent = best_parent(&self.tree, &x_new, &near, nearest, world);
        let in_goal = self.goal.contains(&x_new);
        let id = self
            .tree
            .insert(x_new, parent)
            .expect("steer never returns its origin");
        let candidates: Vec<NodeId> = near.iter().copied().filter(|&n| n != parent).collect();
        let rewired = rewire(&mut self.tree, id, &candidates, world);

        if self.params.mode == Mode::Ldv {
            ldv::update_visibility(&mut self.tree, id, &rewired, world);
            ldv::update_importance(
                &mut self.fail_set,
                &self.tree,
                id,
                &rewired,
                &self.params.sampler,
            );
        }
        if in_goal {
            self.goal_nodes.push(id);
            if !self.first_found {
                self.first_found = true;
                self.first_solution_iter = Some(self.iteration);
            }
        }
        report.x_new = Some(id);
        report.near = near;
        report.rewired = rewired;
    }

    /// Runs `n` more iterations.
    pub fn run(&mut self, n: usize) {
        for _ in 0..n {
            self.step();
        }
    }

    /// Runs 100-iteration chunks until `budget` of wall time has been spent.
    /// Returns the number of iterations executed.
    pub fn run_for(&mut self, budget: Duration) -> usize {
        let start = Instant::now();
        let before = self.iteration;
        while start.elapsed() < budget {
            self.run(100);
        }
        self.iteration - before
    }

    pub fn finish(self) -> PlanResult {
        let best = extract_best_path(&self.tree, &self.goal);
        let (best_path, best_cost) = match best {
            Some((p, c)) => (Some(p), Some(c)),
            None => (None, None),
        };
        PlanResult {
            tree: self.tree,
            fail_set: self.fail_set,
            best_path,
            best_cost,
            first_solution_iter: self.first_solution_iter,
            trace: self.trace,
            wall_time: self.wall_time,
        }
    }
}

/// Runs `params.max_iter` iterations from `start`.
pub fn plan(
    world: &World,
    start: Configuration,
    goal: GoalRegion,
    params: PlannerParams,
) -> Result<PlanResult> {
    let iters = params.max_iter;
    let mut planner = Planner::new(world, start, goal, params)?;
    planner.run(iters);
    Ok(planner.finish())
}
