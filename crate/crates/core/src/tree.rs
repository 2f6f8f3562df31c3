//! Rooted search tree with cost-to-come bookkeeping.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{distance, distance_sq, Configuration};

/// Dense index of a node, assigned in insertion order. The root is `NodeId(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Node {
    pub(crate) config: Configuration,
    pub(crate) parent: Option<NodeId>,
    pub(crate) children: Vec<NodeId>,
    pub(crate) cost: f64,
    pub(crate) dir: Option<Configuration>,
    pub(crate) vis: f64,
}

impl Node {
    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    /// Euclidean path length from the root along tree edges.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Unit direction of the incoming edge; `None` for the root.
    pub fn dir(&self) -> Option<&Configuration> {
        self.dir.as_ref()
    }

    /// Local directional visibility.
    pub fn vis(&self) -> f64 {
        self.vis
    }
}

#[derive(Debug, Clone)]
pub struct Tree {
    nodes: Vec<Node>,
    v_max: f64,
}

impl Tree {
    /// Creates a tree holding only `root`. Fresh nodes start with `vis = v_max`.
    pub fn new(root: Configuration, v_max: f64) -> Self {
        Tree {
            nodes: vec![Node {
                config: root,
                parent: None,
                children: Vec::new(),
                cost: 0.0,
                dir: None,
                vis: v_max,
            }],
            v_max,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false: a tree owns at least its root.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.nodes[0].config.dim()
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn get(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = (NodeId, &Node)> + '_ {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i), n))
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.parent.is_some()).count()
    }

    fn check_dim(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: q.len(),
            });
        }
        Ok(())
    }

    fn check_id(&self, id: NodeId) -> Result<()> {
        if id.0 >= self.nodes.len() {
            return Err(Error::InvalidInput(format!("unknown node {id}")));
        }
        Ok(())
    }

    /// Appends `config` as a child of `parent`.
    pub fn insert(&mut self, config: Configuration, parent: NodeId) -> Result<NodeId> {
        self.check_dim(&config)?;
        self.check_id(parent)?;
        let p = &self.nodes[parent.0];
        let dir = p
            .config
            .direction_to(&config)
            .ok_or_else(|| Error::InvalidInput("zero-length edge".into()))?;
        let cost = p.cost + p.config.distance(&config);
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            config,
            parent: Some(parent),
            children: Vec::new(),
            cost,
            dir: Some(dir),
            vis: self.v_max,
        });
        self.nodes[parent.0].children.push(id);
        Ok(id)
    }

    /// Node closest to `q`; ties go to the lowest id.
    pub fn nearest(&self, q: &[f64]) -> Result<NodeId> {
        self.check_dim(q)?;
        let mut best = (NodeId::ROOT, f64::INFINITY);
        for (i, n) in self.nodes.iter().enumerate() {
            let d = distance_sq(&n.config, q);
            if d < best.1 {
                best = (NodeId(i), d);
            }
        }
        Ok(best.0)
    }

    /// All nodes in the closed ball of radius `r` around `q`, ascending id.
    pub fn near(&self, q: &[f64], r: f64) -> Result<Vec<NodeId>> {
        self.check_dim(q)?;
        if r.is_nan() || r < 0.0 {
            return Err(Error::InvalidInput(format!("negative radius {r}")));
        }
        Ok(self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| distance(&n.config, q) <= r)
            .map(|(i, _)| NodeId(i))
            .collect())
    }

    /// True if `ancestor` lies on the path from the root to `id` (inclusive).
    pub fn is_ancestor(&self, ancestor: NodeId, id: NodeId) -> bool {
        let mut cur = Some(id);
        while let Some(c) = cur {
            if c == ancestor {
                return true;
            }
            cur = self.nodes[c.0].parent;
        }
        false
    }

    /// Moves `child` under `new_parent`, recomputing its direction and the
    /// cost of every node in its subtree.
    pub fn set_parent(&mut self, child: NodeId, new_parent: NodeId) -> Result<()> {
        self.check_id(child)?;
        self.check_id(new_parent)?;
        let old_parent = self.nodes[child.0]
            .parent
            .ok_or_else(|| Error::Logic("cannot reparent the root".into()))?;
        if self.is_ancestor(child, new_parent) {
            return Err(Error::Logic(format!(
                "reparenting {child} under {new_parent} would create a cycle"
            )));
        }
        let dir = self.nodes[new_parent.0]
            .config
            .direction_to(&self.nodes[child.0].config)
            .ok_or_else(|| Error::InvalidInput("zero-length edge".into()))?;

        self.nodes[old_parent.0].children.retain(|&c| c != child);
        self.nodes[new_parent.0].children.push(child);
        let node = &mut self.nodes[child.0];
        node.parent = Some(new_parent);
        node.dir = Some(dir);

        let mut stack = vec![child];
        while let Some(id) = stack.pop() {
            let parent = self.nodes[id.0].parent.expect("non-root in subtree");
            let cost = self.nodes[parent.0].cost
                + distance(&self.nodes[parent.0].config, &self.nodes[id.0].config);
            self.nodes[id.0].cost = cost;
            stack.extend_from_slice(&self.nodes[id.0].children);
        }
        Ok(())
    }

    pub(crate) fn set_vis(&mut self, id: NodeId, vis: f64) {
        self.nodes[id.0].vis = vis;
    }

    /// Root-to-`id` sequence of configurations.
    pub fn path_to(&self, id: NodeId) -> Vec<Configuration> {
        let mut path = Vec::new();
        let mut cur = Some(id);
        while let Some(c) = cur {
            path.push(self.nodes[c.0].config.clone());
            cur = self.nodes[c.0].parent;
        }
        path.reverse();
        path
    }
}

/// Volume of the unit ball in `d` dimensions.
pub fn unit_ball_volume(d: usize) -> f64 {
    use std::f64::consts::PI;
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * PI / d as f64,
    }
}

/// Shrinking-ball radius `min((γ/ξ_d · ln n / n)^(1/d), η)`, with `n`
/// clamped to at least 2.
pub fn neighbor_radius(n: usize, d: usize, gamma: f64, eta: f64) -> Result<f64> {
    if gamma.is_nan() || gamma <= 0.0 || eta.is_nan() || eta <= 0.0 {
        return Err(Error::Config(format!(
            "neighbor radius needs gamma > 0 and eta > 0 (got {gamma}, {eta})"
        )));
    }
    if d == 0 {
        return Err(Error::Config("dimension must be positive".into()));
    }
    let n = n.max(2) as f64;
    let r = (gamma / unit_ball_volume(d) * n.ln() / n).powf(1.0 / d as f64);
    Ok(r.min(eta))
}
