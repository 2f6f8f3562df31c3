//! Deterministic fixtures shared by the benchmarks.

use ldv_core::{Configuration, HyperRect, NodeId, RandomSource, SeededRng, Tree, World};

/// `[0, 10]^dim` with `n_obstacles` random boxes.
pub fn cluttered_world(dim: usize, n_obstacles: usize, seed: u64) -> World {
    let mut rng = SeededRng::new(seed);
    let bounds = HyperRect::new(vec![0.0; dim], vec![10.0; dim]).expect("valid bounds");
    let obstacles = (0..n_obstacles)
        .map(|_| {
            let lo: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.0, 9.0)).collect();
            let hi: Vec<f64> = lo.iter().map(|&l| l + rng.uniform_in(0.2, 1.0)).collect();
            HyperRect::new(lo, hi).expect("valid obstacle")
        })
        .collect();
    World::new(bounds, obstacles).expect("valid world")
}

/// Free configurations in `world`, for use as ray origins or queries.
pub fn free_points(world: &World, count: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = SeededRng::new(seed);
    let b = world.bounds().clone();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q: Vec<f64> = (0..world.dim())
            .map(|i| rng.uniform_in(b.lo()[i], b.hi()[i]))
            .collect();
        if world.point_free(&q).unwrap_or(false) {
            out.push(Configuration::new(q));
        }
    }
    out
}

/// Unit vectors drawn uniformly from the cube, then normalized.
pub fn directions(dim: usize, count: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = SeededRng::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..dim).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            out.push(Configuration::new(v.iter().map(|x| x / n).collect()));
        }
    }
    out
}

/// Random tree in `[0, 10]^dim` with `size` nodes.
pub fn random_tree(dim: usize, size: usize, seed: u64) -> Tree {
    let mut rng = SeededRng::new(seed);
    let point = |rng: &mut SeededRng| {
        Configuration::new((0..dim).map(|_| rng.uniform_in(0.0, 10.0)).collect())
    };
    let mut tree = Tree::new(point(&mut rng), 10.0 * (dim as f64).sqrt());
    while tree.len() < size {
        let parent = NodeId(rng.index(tree.len()));
        let _ = tree.insert(point(&mut rng), parent);
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        let w = cluttered_world(3, 8, 1);
        assert_eq!(w.obstacles().len(), 8);
        let p = free_points(&w, 20, 2);
        assert!(p.iter().all(|q| w.point_free(q).unwrap()));
        assert_eq!(p, free_points(&w, 20, 2));
        assert!(directions(3, 10, 3)
            .iter()
            .all(|d| (d.norm() - 1.0).abs() < 1e-12));
        assert_eq!(random_tree(2, 300, 4).len(), 300);
    }
}
