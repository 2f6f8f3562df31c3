//! Seeded random streams.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of uniform draws used by the samplers.
///
/// Every random decision in a planning run goes through `uniform01`, so the
/// draw order fully determines a trace.
pub trait RandomSource {
    /// Uniform draw in `[0, 1)`.
    fn uniform01(&mut self) -> f64;

    /// Uniform draw in `[lo, hi)`.
    fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform01()
    }

    /// Bernoulli trial. Degenerate probabilities (`p <= 0` or `p >= 1`)
    /// consume no draw, so disabling a bias never shifts the stream.
    fn chance(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.uniform01() < p
        }
    }

    /// Uniform index in `0..len`. `len` must be nonzero.
    fn index(&mut self, len: usize) -> usize {
        debug_assert!(len > 0);
        ((self.uniform01() * len as f64) as usize).min(len - 1)
    }
}

/// ChaCha8 stream; identical seeds give identical streams on every platform.
#[derive(Debug, Clone)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RandomSource for SeededRng {
    fn uniform01(&mut self) -> f64 {
        self.0.random::<f64>()
    }
}

/// Replays a fixed list of draws, cycling when exhausted. Intended for tests.
#[derive(Debug, Clone)]
pub struct ScriptedRng {
    draws: Vec<f64>,
    pos: usize,
}

impl ScriptedRng {
    pub fn new(draws: Vec<f64>) -> Self {
        assert!(!draws.is_empty(), "scripted rng needs at least one draw");
        ScriptedRng { draws, pos: 0 }
    }

    /// Number of draws consumed so far.
    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl RandomSource for ScriptedRng {
    fn uniform01(&mut self) -> f64 {
        let v = self.draws[self.pos % self.draws.len()];
        self.pos += 1;
        v
    }
}
