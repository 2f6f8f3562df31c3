//! Local-directional-visibility machinery: per-node visibility, the
//! near-obstacle node set with importance scores, and the two-stage sampler.

mod fail_set;
mod sampler;
mod visibility;

pub use fail_set::{get_xfail, importance_of, update_importance, FailNode, FailSet};
pub use sampler::{
    draw_sample, sample_around_fail, select_fail_node, uniform_sample, SampleOrigin,
};
pub use visibility::{compute_dir_vis, update_visibility};

use crate::error::{Error, Result};

/// Parameters of the biased sampler and the importance score.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerParams {
    /// Probability of sampling around a near-obstacle node once a solution exists.
    pub lambda_s: f64,
    /// Probability of picking the most important near-obstacle node.
    pub lambda_i: f64,
    /// Probability of sampling the goal center in the uniform branch.
    pub goal_bias: f64,
    /// Half-width of the sampling cube around a near-obstacle node.
    pub eta: f64,
    /// Radius of the ball used for importance.
    pub r_f: f64,
    /// Node-count exponent of the importance score.
    pub m: f64,
    /// Finite stand-in for infinite visibility (the workspace diagonal).
    pub v_max: f64,
}

impl SamplerParams {
    /// Defaults derived from the steer size: `r_f = 1.5 η`, `m = 1`,
    /// `λ_s = 0.9`, `λ_i = 0.5`, goal bias 0.05.
    pub fn with_eta(eta: f64, v_max: f64) -> Self {
        SamplerParams {
            lambda_s: 0.9,
            lambda_i: 0.5,
            goal_bias: 0.05,
            eta,
            r_f: 1.5 * eta,
            m: 1.0,
            v_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be in [0, 1], got {v}")))
            }
        };
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        unit("lambda_s", self.lambda_s)?;
        unit("lambda_i", self.lambda_i)?;
        unit("goal_bias", self.goal_bias)?;
        positive("eta", self.eta)?;
        positive("r_f", self.r_f)?;
        positive("v_max", self.v_max)?;
        if !(self.m >= 0.0 && self.m.is_finite()) {
            return Err(Error::Config(format!("m must be >= 0, got {}", self.m)));
        }
        Ok(())
    }
}
