//! Exact collision and ray queries against axis-aligned boxes.
//!
//! Obstacles are closed hyperrectangles: a point on an obstacle face is in
//! collision. Every query here is analytic (slab method); nothing is sampled.

use std::ops::{Deref, Index};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `||dir|| == 1` for ray queries.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// A point in the d-dimensional configuration space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration(Vec<f64>);

impl Configuration {
    pub fn new(coords: Vec<f64>) -> Self {
        Configuration(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Configuration) -> f64 {
        distance(&self.0, &other.0)
    }

    /// `self + t * dir`
    pub fn offset(&self, dir: &Configuration, t: f64) -> Configuration {
        Configuration(self.0.iter().zip(&dir.0).map(|(a, d)| a + t * d).collect())
    }

    /// Unit vector pointing from `self` to `target`, or `None` if they coincide.
    pub fn direction_to(&self, target: &Configuration) -> Option<Configuration> {
        let len = self.distance(target);
        if len < 1e-12 {
            return None;
        }
        Some(Configuration(
            self.0
                .iter()
                .zip(&target.0)
                .map(|(a, b)| (b - a) / len)
                .collect(),
        ))
    }
}

impl Deref for Configuration {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for Configuration {
    type Output = f64;

    fn index(&self, axis: usize) -> &f64 {
        &self.0[axis]
    }
}

impl From<Vec<f64>> for Configuration {
    fn from(coords: Vec<f64>) -> Self {
        Configuration(coords)
    }
}

impl<const N: usize> From<[f64; N]> for Configuration {
    fn from(coords: [f64; N]) -> Self {
        Configuration(coords.to_vec())
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    distance_sq(a, b).sqrt()
}

pub(crate) fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Closed axis-aligned box `[lo, hi]` with `lo[k] < hi[k]` on every axis.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperRect {
    lo: Configuration,
    hi: Configuration,
}

impl HyperRect {
    pub fn new(lo: impl Into<Configuration>, hi: impl Into<Configuration>) -> Result<Self> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo.dim() != hi.dim() {
            return Err(Error::DimensionMismatch {
                expected: lo.dim(),
                actual: hi.dim(),
            });
        }
        if lo.dim() == 0 {
            return Err(Error::InvalidInput("box has zero dimensions".into()));
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput("box corner is not finite".into()));
        }
        if let Some(axis) = (0..lo.dim()).find(|&k| lo[k] >= hi[k]) {
            return Err(Error::InvalidInput(format!(
                "degenerate box on axis {axis}: lo {} >= hi {}",
                lo[axis], hi[axis]
            )));
        }
        Ok(HyperRect { lo, hi })
    }

    pub fn lo(&self) -> &Configuration {
        &self.lo
    }

    pub fn hi(&self) -> &Configuration {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn diagonal(&self) -> f64 {
        self.lo.distance(&self.hi)
    }

    /// Closed containment test.
    pub fn contains(&self, q: &[f64]) -> bool {
        q.iter()
            .enumerate()
            .all(|(k, &c)| c >= self.lo[k] && c <= self.hi[k])
    }

    /// True if `other` lies entirely inside `self`.
    pub fn contains_rect(&self, other: &HyperRect) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// True if the closed boxes share at least one point.
    pub fn overlaps(&self, other: &HyperRect) -> bool {
        (0..self.dim()).all(|k| self.lo[k] <= other.hi[k] && other.lo[k] <= self.hi[k])
    }

    /// Euclidean distance from `q` to the box (0 inside).
    pub fn distance_to(&self, q: &[f64]) -> f64 {
        q.iter()
            .enumerate()
            .map(|(k, &c)| {
                let gap = (self.lo[k] - c).max(c - self.hi[k]).max(0.0);
                gap * gap
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Parameter interval `[t0, t1] ⊆ [t_min, t_max]` on which
    /// `origin + t * dir` lies inside the closed box, if nonempty.
    pub fn clip(&self, origin: &[f64], dir: &[f64], t_min: f64, t_max: f64) -> Option<(f64, f64)> {
        let (mut t0, mut t1) = (t_min, t_max);
        for k in 0..self.dim() {
            let (o, d) = (origin[k], dir[k]);
            let (lo, hi) = (self.lo[k], self.hi[k]);
            if d == 0.0 {
                if o < lo || o > hi {
                    return None;
                }
                continue;
            }
            let (mut ta, mut tb) = ((lo - o) / d, (hi - o) / d);
            if ta > tb {
                std::mem::swap(&mut ta, &mut tb);
            }
            t0 = t0.max(ta);
            t1 = t1.min(tb);
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }

    /// Closed segment `[a, b]` versus closed box.
    pub fn intersects_segment(&self, a: &[f64], b: &[f64]) -> bool {
        let dir: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
        self.clip(a, &dir, 0.0, 1.0).is_some()
    }
}

/// Outcome of a ray cast.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayHit {
    pub distance: f64,
    /// `true` if the ray stopped at an obstacle, `false` if it left the workspace.
    pub hit_obstacle: bool,
}

/// Workspace bounds plus obstacle boxes.
#[derive(Debug, Clone)]
pub struct World {
    bounds: HyperRect,
    obstacles: Vec<HyperRect>,
    diag: f64,
}

impl World {
    pub fn new(bounds: HyperRect, obstacles: Vec<HyperRect>) -> Result<Self> {
        for (i, obs) in obstacles.iter().enumerate() {
            if obs.dim() != bounds.dim() {
                return Err(Error::DimensionMismatch {
                    expected: bounds.dim(),
                    actual: obs.dim(),
                });
            }
            if !bounds.overlaps(obs) {
                return Err(Error::InvalidInput(format!(
                    "obstacle {i} lies entirely outside the workspace bounds"
                )));
            }
        }
        let diag = bounds.diagonal();
        Ok(World {
            bounds,
            obstacles,
            diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &HyperRect {
        &self.bounds
    }

    pub fn obstacles(&self) -> &[HyperRect] {
        &self.obstacles
    }

    /// Euclidean diagonal of the bounds; also the finite visibility cap.
    pub fn diag(&self) -> f64 {
        self.diag
    }

    pub fn check_dim(&self, q: &[f64]) -> Result<()> {
        if q.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: q.len(),
            });
        }
        Ok(())
    }

    pub fn point_free(&self, q: &[f64]) -> Result<bool> {
        self.check_dim(q)?;
        Ok(self.point_free_unchecked(q))
    }

    pub(crate) fn point_free_unchecked(&self, q: &[f64]) -> bool {
        self.bounds.contains(q) && !self.obstacles.iter().any(|o| o.contains(q))
    }

    /// Exact test of the closed segment `[a, b]` against every obstacle.
    pub fn segment_free(&self, a: &[f64], b: &[f64]) -> Result<bool> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        Ok(self.segment_free_unchecked(a, b))
    }

    pub(crate) fn segment_free_unchecked(&self, a: &[f64], b: &[f64]) -> bool {
        self.bounds.contains(a)
            && self.bounds.contains(b)
            && !self.obstacles.iter().any(|o| o.intersects_segment(a, b))
    }

    /// Distance along unit `dir` from a free `origin` until the ray first
    /// touches an obstacle or reaches the workspace boundary.
    pub fn ray_cast(&self, origin: &[f64], dir: &[f64]) -> Result<RayHit> {
        self.check_dim(origin)?;
        self.check_dim(dir)?;
        let norm = dir.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::InvalidInput("zero ray direction".into()));
        }
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "ray direction is not unit length (norm {norm})"
            )));
        }
        if !self.point_free_unchecked(origin) {
            return Err(Error::Precondition(
                "ray origin is in collision or outside the workspace".into(),
            ));
        }
        Ok(self.ray_cast_unchecked(origin, dir))
    }

    pub(crate) fn ray_cast_unchecked(&self, origin: &[f64], dir: &[f64]) -> RayHit {
        let exit = (0..self.dim())
            .filter_map(|k| {
                let d = dir[k];
                if d > 0.0 {
                    Some((self.bounds.hi()[k] - origin[k]) / d)
                } else if d < 0.0 {
                    Some((self.bounds.lo()[k] - origin[k]) / d)
                } else {
                    None
                }
            })
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        let hit = self
            .obstacles
            .iter()
            .filter_map(|o| o.clip(origin, dir, 0.0, f64::INFINITY).map(|(t0, _)| t0))
            .fold(f64::INFINITY, f64::min);
        if hit <= exit {
            RayHit {
                distance: hit,
                hit_obstacle: true,
            }
        } else {
            RayHit {
                distance: exit,
                hit_obstacle: false,
            }
        }
    }

    /// Distance from `q` to the nearest obstacle; `2 * diag` when there are none.
    pub fn obstacle_distance(&self, q: &[f64]) -> Result<f64> {
        self.check_dim(q)?;
        Ok(self
            .obstacles
            .iter()
            .map(|o| o.distance_to(q))
            .fold(2.0 * self.diag, f64::min))
    }
}
