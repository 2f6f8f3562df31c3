use crate::geometry::{distance, Configuration, World};
use crate::ldv::SamplerParams;
use crate::tree::{NodeId, Tree};

/// A harvested near-obstacle configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FailNode {
    pub config: Configuration,
    pub importance: f64,
    /// Planner iteration that produced this node.
    pub created_at: usize,
}

/// Near-obstacle nodes kept at least `rho_fail` apart.
#[derive(Debug, Clone)]
pub struct FailSet {
    items: Vec<FailNode>,
    rho_fail: f64,
}

impl FailSet {
    pub fn new(rho_fail: f64) -> Self {
        FailSet {
            items: Vec::new(),
            rho_fail,
        }
    }

    pub fn rho_fail(&self) -> f64 {
        self.rho_fail
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[FailNode] {
        &self.items
    }

    pub fn get(&self, index: usize) -> Option<&FailNode> {
        self.items.get(index)
    }

    /// Distance from `q` to the closest stored node, `None` when empty.
    pub fn nearest_distance(&self, q: &[f64]) -> Option<f64> {
        self.items
            .iter()
            .map(|f| distance(&f.config, q))
            .min_by(f64::total_cmp)
    }

    /// Appends `candidate` with zero importance if the set is empty or the
    /// candidate is at least `rho_fail` from every member.
    pub fn add(&mut self, candidate: Configuration, created_at: usize) -> bool {
        let spaced = self
            .nearest_distance(&candidate)
            .is_none_or(|d| d >= self.rho_fail);
        if spaced {
            self.items.push(FailNode {
                config: candidate,
                importance: 0.0,
                created_at,
            });
        }
        spaced
    }

    pub(crate) fn set_importance(&mut self, index: usize, importance: f64) {
        self.items[index].importance = importance;
    }
}

/// Candidate near-obstacle node along the steering ray `x_nearest → x_new`:
/// the point `eps_c` before the first obstacle contact. Rays that leave the
/// workspace first, or touch an obstacle within `eps_c`, yield nothing.
pub fn get_xfail(
    x_nearest: &Configuration,
    x_new: &Configuration,
    world: &World,
    eps_c: f64,
) -> Option<Configuration> {
    let dir = x_nearest.direction_to(x_new)?;
    if !world.point_free_unchecked(x_nearest) {
        return None;
    }
    let hit = world.ray_cast_unchecked(x_nearest, &dir);
    (hit.hit_obstacle && hit.distance > eps_c).then(|| x_nearest.offset(&dir, hit.distance - eps_c))
}

/// Mean visibility of tree nodes within `r_f` of `config`, divided by
/// `(count + 1)^m`. An empty ball counts as mean visibility `v_max`.
pub fn importance_of(config: &[f64], tree: &Tree, params: &SamplerParams) -> f64 {
    let (count, sum) = tree
        .nodes()
        .filter(|(_, n)| distance(n.config(), config) <= params.r_f)
        .fold((0usize, 0.0), |(c, s), (_, n)| (c + 1, s + n.vis()));
    let mean = if count == 0 {
        params.v_max
    } else {
        sum / count as f64
    };
    mean / ((count + 1) as f64).powf(params.m)
}

/// Recomputes the importance of every fail node whose ball contains
/// `x_new` or one of the `rewired` nodes. Returns the touched indices.
pub fn update_importance(
    fail_set: &mut FailSet,
    tree: &Tree,
    x_new: NodeId,
    rewired: &[NodeId],
    params: &SamplerParams,
) -> Vec<usize> {
    let changed: Vec<&[f64]> = std::iter::once(x_new)
        .chain(rewired.iter().copied())
        .map(|id| tree.node(id).config().as_slice())
        .collect();
    let touched: Vec<usize> = fail_set
        .items
        .iter()
        .enumerate()
        .filter(|(_, f)| changed.iter().any(|c| distance(c, &f.config) <= params.r_f))
        .map(|(i, _)| i)
        .collect();
    for &i in &touched {
        let imp = importance_of(&fail_set.items[i].config, tree, params);
        fail_set.items[i].importance = imp;
    }
    touched
}
