//! JSON scenario files.
//!
//! ```json
//! {
//!   "name": "passage2d",
//!   "dim": 2,
//!   "bounds": { "lo": [0, 0], "hi": [10, 10] },
//!   "obstacles": [ { "lo": [4.5, 0], "hi": [5.5, 4.9] } ],
//!   "start": [2, 5],
//!   "goal": { "center": [8, 5], "radius": 0.5 },
//!   "passage_regions": [ { "name": "slit", "lo": [4.4, 4.85], "hi": [5.6, 5.15] } ],
//!   "params": { "eta": 0.5, "gamma": 40 }
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Configuration, HyperRect, World};
use crate::planner::{GoalRegion, Mode, PlannerParams};

/// Scenarios shipped with the library, addressable by name.
pub const BUNDLED: &[(&str, &str)] = &[
    (
        "passage2d",
        include_str!("../../../scenarios/passage2d.json"),
    ),
    ("box5d", include_str!("../../../scenarios/box5d.json")),
    ("empty2d", include_str!("../../../scenarios/empty2d.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    name: String,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGoal {
    center: Vec<f64>,
    radius: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    dim: usize,
    bounds: RawBox,
    obstacles: Vec<RawBox>,
    start: Vec<f64>,
    goal: RawGoal,
    #[serde(default)]
    passage_regions: Vec<RawRegion>,
    #[serde(default)]
    params: ParamOverrides,
}

/// Optional planner settings; names mirror the CLI flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub algo: Option<String>,
    pub iters: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub lambda_s: Option<f64>,
    pub lambda_i: Option<f64>,
    pub m: Option<f64>,
    pub rho_fail: Option<f64>,
    pub r_f: Option<f64>,
    pub eta: Option<f64>,
    pub gamma: Option<f64>,
    pub goal_bias: Option<f64>,
    pub eps_c: Option<f64>,
}

impl ParamOverrides {
    pub const DEFAULT_ETA: f64 = 0.5;
    pub const DEFAULT_GAMMA: f64 = 40.0;

    /// Field-wise merge; values set in `other` win.
    pub fn merged(&self, other: &ParamOverrides) -> ParamOverrides {
        macro_rules! pick {
            ($($f:ident),*) => { ParamOverrides { $($f: other.$f.clone().or_else(|| self.$f.clone()),)* } };
        }
        pick!(
            algo, iters, trials, seed, lambda_s, lambda_i, m, rho_fail, r_f, eta, gamma, goal_bias,
            eps_c
        )
    }

    pub fn mode(&self) -> Result<Option<Mode>> {
        self.algo.as_deref().map(str::parse).transpose()
    }

    /// Full parameter set for `mode`. Spacing and ball radius default to
    /// multiples of the (possibly overridden) steer size.
    pub fn resolve(&self, mode: Mode) -> Result<PlannerParams> {
        let eta = self.eta.unwrap_or(Self::DEFAULT_ETA);
        let mut p = PlannerParams::new(mode, eta, self.gamma.unwrap_or(Self::DEFAULT_GAMMA));
        if let Some(v) = self.iters {
            p.max_iter = v;
        }
        if let Some(v) = self.seed {
            p.seed = v;
        }
        if let Some(v) = self.rho_fail {
            p.rho_fail = v;
        }
        if let Some(v) = self.eps_c {
            p.eps_c = v;
        }
        let s = &mut p.sampler;
        if let Some(v) = self.lambda_s {
            s.lambda_s = v;
        }
        if let Some(v) = self.lambda_i {
            s.lambda_i = v;
        }
        if let Some(v) = self.m {
            s.m = v;
        }
        if let Some(v) = self.r_f {
            s.r_f = v;
        }
        if let Some(v) = self.goal_bias {
            s.goal_bias = v;
        }
        if mode == Mode::RrtStar {
            s.lambda_s = 0.0;
        }
        Ok(p)
    }
}

#[derive(Debug, Clone)]
pub struct PassageRegion {
    pub name: String,
    pub region: HyperRect,
}

/// A validated planning problem.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub world: World,
    pub start: Configuration,
    pub goal: GoalRegion,
    pub passage_regions: Vec<PassageRegion>,
    pub params: ParamOverrides,
}

fn scenario_err(msg: impl Into<String>) -> Error {
    Error::Scenario(msg.into())
}

fn check_len(field: &str, v: &[f64], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(scenario_err(format!(
            "{field}: dimension mismatch, expected {dim} coordinates, got {}",
            v.len()
        )));
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(scenario_err(format!("{field}: coordinates must be finite")));
    }
    Ok(())
}

fn build_box(field: &str, lo: &[f64], hi: &[f64], dim: usize, what: &str) -> Result<HyperRect> {
    check_len(&format!("{field}.lo"), lo, dim)?;
    check_len(&format!("{field}.hi"), hi, dim)?;
    if let Some(k) = (0..dim).find(|&k| lo[k] >= hi[k]) {
        return Err(scenario_err(format!(
            "{field}: degenerate {what} (lo >= hi on axis {k})"
        )));
    }
    HyperRect::new(lo.to_vec(), hi.to_vec()).map_err(|e| scenario_err(format!("{field}: {e}")))
}

impl Scenario {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawScenario = serde_json::from_str(text)
            .map_err(|e| scenario_err(format!("malformed scenario: {e}")))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawScenario) -> Result<Self> {
        let dim = raw.dim;
        if dim == 0 {
            return Err(scenario_err("dim: must be positive"));
        }
        let bounds = build_box("bounds", &raw.bounds.lo, &raw.bounds.hi, dim, "bounds")?;
        let obstacles = raw
            .obstacles
            .iter()
            .enumerate()
            .map(|(i, o)| build_box(&format!("obstacles[{i}]"), &o.lo, &o.hi, dim, "obstacle"))
            .collect::<Result<Vec<_>>>()?;
        for (i, o) in obstacles.iter().enumerate() {
            if !bounds.overlaps(o) {
                return Err(scenario_err(format!("obstacles[{i}]: lies outside bounds")));
            }
        }
        let world = World::new(bounds, obstacles).map_err(|e| scenario_err(e.to_string()))?;

        check_len("start", &raw.start, dim)?;
        let start = Configuration::new(raw.start);
        if !world.point_free_unchecked(&start) {
            return Err(scenario_err("start in collision or outside bounds"));
        }
        check_len("goal.center", &raw.goal.center, dim)?;
        let goal = GoalRegion::new(raw.goal.center.into(), raw.goal.radius)
            .map_err(|e| scenario_err(format!("goal.radius: {e}")))?;
        if !world.point_free_unchecked(goal.center()) {
            return Err(scenario_err("goal.center in collision or outside bounds"));
        }

        let mut passage_regions = Vec::new();
        for (i, r) in raw.passage_regions.iter().enumerate() {
            let field = format!("passage_regions[{i}]");
            let region = build_box(&field, &r.lo, &r.hi, dim, "passage region")?;
            if !world.bounds().contains_rect(&region) {
                return Err(scenario_err(format!(
                    "{field} ({}): not inside bounds",
                    r.name
                )));
            }
            passage_regions.push(PassageRegion {
                name: r.name.clone(),
                region,
            });
        }
        let mode = raw
            .params
            .mode()
            .map_err(|e| scenario_err(format!("params.algo: {e}")))?
            .unwrap_or(Mode::Ldv);
        let mut resolved = raw
            .params
            .resolve(mode)
            .map_err(|e| scenario_err(format!("params: {e}")))?;
        resolved.sampler.v_max = world.diag();
        resolved
            .validate()
            .map_err(|e| scenario_err(format!("params: {e}")))?;

        Ok(Scenario {
            name: raw.name,
            world,
            start,
            goal,
            passage_regions,
            params: raw.params,
        })
    }

    pub fn dim(&self) -> usize {
        self.world.dim()
    }

    pub fn bundled(name: &str) -> Option<Scenario> {
        BUNDLED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| Scenario::from_json_str(text).expect("bundled scenarios are valid"))
    }

    /// Loads `path`, then `path.json`, then a bundled scenario named after
    /// the path's file stem.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let with_ext = PathBuf::from(format!("{}.json", path.display()));
        for candidate in [path, with_ext.as_path()] {
            if candidate.is_file() {
                let text =
                    std::fs::read_to_string(candidate).map_err(|e| Error::io(candidate, e))?;
                return Self::from_json_str(&text)
                    .map_err(|e| scenario_err(format!("{}: {e}", candidate.display())));
            }
        }
        path.file_stem()
            .and_then(|s| s.to_str())
            .and_then(Scenario::bundled)
            .ok_or_else(|| {
                Error::io(
                    path,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "no such scenario"),
                )
            })
    }
}
