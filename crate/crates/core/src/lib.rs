//! Sampling-based motion planning with RRT* and RRT*-LDV.
//!
//! RRT*-LDV extends RRT* with three pieces of bookkeeping that never touch
//! the random stream: every node records how far it can "see" along its
//! incoming edge, steering rays that run into obstacles leave behind
//! near-obstacle ("fail") nodes, and each fail node is scored by the mean
//! visibility and crowding of the tree around it. Once a first solution
//! exists, the sampler spends a fraction of its draws in small cubes around
//! fail nodes, preferring the most important one.
//!
//! Worlds are bounded boxes with closed, axis-aligned box obstacles in any
//! dimension; all collision queries are exact.

pub mod error;
pub mod experiment;
pub mod geometry;
pub mod ldv;
pub mod planner;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod tree;

pub use error::{Error, Result};
pub use experiment::{
    passage_hit, run_experiment, Arm, ArmSummary, Experiment, ExperimentOptions, ExperimentSummary,
    TrialOutcome, TrialRecord,
};
pub use geometry::{Configuration, HyperRect, RayHit, World};
pub use ldv::{FailNode, FailSet, SamplerParams};
pub use planner::{
    extract_best_path, plan, GoalRegion, IterationReport, Mode, PlanResult, Planner, PlannerParams,
    TraceRow,
};
pub use rng::{RandomSource, ScriptedRng, SeededRng};
pub use scenario::{ParamOverrides, PassageRegion, Scenario};
pub use tree::{neighbor_radius, Node, NodeId, Tree};
