use crate::error::{Error, Result};
use crate::geometry::{Configuration, World};
use crate::ldv::{FailNode, FailSet, SamplerParams};
use crate::planner::GoalRegion;
use crate::rng::RandomSource;

/// Which branch produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleOrigin {
    Goal,
    Uniform,
    FailRegion { index: usize, most_important: bool },
}

/// Picks a fail node: the most important one with probability `lambda_i`
/// (earliest wins ties), otherwise a uniformly random member.
pub fn select_fail_node<R: RandomSource + ?Sized>(
    fail_set: &FailSet,
    rng: &mut R,
    lambda_i: f64,
) -> Result<(usize, bool)> {
    if fail_set.is_empty() {
        return Err(Error::Logic("cannot select from an empty fail set".into()));
    }
    if rng.chance(lambda_i) {
        let mut best = 0;
        for (i, f) in fail_set.items().iter().enumerate() {
            if f.importance > fail_set.items()[best].importance {
                best = i;
            }
        }
        Ok((best, true))
    } else {
        Ok((rng.index(fail_set.len()), false))
    }
}

/// Uniform sample from the cube of half-width `eta` around `fail`, clipped
/// to the workspace. One draw per axis, in axis order.
pub fn sample_around_fail<R: RandomSource + ?Sized>(
    fail: &FailNode,
    rng: &mut R,
    eta: f64,
    world: &World,
) -> Configuration {
    let bounds = world.bounds();
    fail.config
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let lo = (c - eta).max(bounds.lo()[k]);
            let hi = (c + eta).min(bounds.hi()[k]);
            rng.uniform_in(lo, hi)
        })
        .collect::<Vec<_>>()
        .into()
}

/// Goal center with probability `goal_bias`, otherwise uniform over the bounds.
pub fn uniform_sample<R: RandomSource + ?Sized>(
    rng: &mut R,
    goal_bias: f64,
    world: &World,
    goal: &GoalRegion,
) -> (Configuration, SampleOrigin) {
    if rng.chance(goal_bias) {
        return (goal.center().clone(), SampleOrigin::Goal);
    }
    let bounds = world.bounds();
    let q: Vec<f64> = (0..world.dim())
        .map(|k| rng.uniform_in(bounds.lo()[k], bounds.hi()[k]))
        .collect();
    (q.into(), SampleOrigin::Uniform)
}

/// Two-stage sampler. Before the first solution (or with no fail nodes) it
/// is the plain RRT* sampler; afterwards it samples around a fail node with
/// probability `lambda_s`.
///
/// Draw order: branch coin, then selection coin / index, then one draw per
/// axis. Coins with probability 0 or 1 consume nothing.
pub fn draw_sample<R: RandomSource + ?Sized>(
    first_found: bool,
    fail_set: &FailSet,
    rng: &mut R,
    params: &SamplerParams,
    world: &World,
    goal: &GoalRegion,
) -> (Configuration, SampleOrigin) {
    if first_found && !fail_set.is_empty() && rng.chance(params.lambda_s) {
        let (index, most_important) =
            select_fail_node(fail_set, rng, params.lambda_i).expect("fail set is nonempty");
        let q = sample_around_fail(&fail_set.items()[index], rng, params.eta, world);
        (
            q,
            SampleOrigin::FailRegion {
                index,
                most_important,
            },
        )
    } else {
        uniform_sample(rng, params.goal_bias, world, goal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HyperRect;
    use crate::rng::{ScriptedRng, SeededRng};

    fn world() -> World {
        World::new(
            HyperRect::new([0.0, 0.0], [10.0, 10.0]).unwrap(),
            vec![HyperRect::new([5.0, 2.0], [7.0, 8.0]).unwrap()],
        )
        .unwrap()
    }

    fn goal() -> GoalRegion {
        GoalRegion::new([9.0, 9.0].into(), 0.5).unwrap()
    }

    fn two_items(a: f64, b: f64) -> FailSet {
        let mut fs = FailSet::new(0.5);
        fs.add([1.0, 1.0].into(), 0);
        fs.add([3.0, 3.0].into(), 0);
        fs.set_importance(0, a);
        fs.set_importance(1, b);
        fs
    }

    #[test]
    fn selection() {
        let fs = two_items(0.5, 0.9);
        let mut rng = ScriptedRng::new(vec![0.1]);
        assert_eq!(select_fail_node(&fs, &mut rng, 1.0).unwrap(), (1, true));

        let mut rng = ScriptedRng::new(vec![0.6]);
        assert_eq!(select_fail_node(&fs, &mut rng, 0.0).unwrap(), (1, false));
        assert_eq!(rng.consumed(), 1);

        let tie = two_items(0.9, 0.9);
        assert_eq!(select_fail_node(&tie, &mut rng, 1.0).unwrap(), (0, true));

        assert!(matches!(
            select_fail_node(&FailSet::new(0.5), &mut rng, 0.5),
            Err(Error::Logic(_))
        ));
    }

    #[test]
    fn cube_containment_and_clamping() {
        let w = world();
        let mut rng = SeededRng::new(3);
        let center = FailNode {
            config: [5.0, 5.0].into(),
            importance: 0.0,
            created_at: 0,
        };
        let corner = FailNode {
            config: [0.2, 0.2].into(),
            ..center.clone()
        };
        for _ in 0..1000 {
            let q = sample_around_fail(&center, &mut rng, 0.5, &w);
            assert!(q.iter().all(|&c| (4.5..=5.5).contains(&c)));
            let q = sample_around_fail(&corner, &mut rng, 0.5, &w);
            assert!(q.iter().all(|&c| (0.0..=0.7).contains(&c)));
        }
        let a = sample_around_fail(&center, &mut SeededRng::new(11), 0.5, &w);
        let b = sample_around_fail(&center, &mut SeededRng::new(11), 0.5, &w);
        assert_eq!(a, b);
    }

    #[test]
    fn branch_selection() {
        let w = world();
        let fs = two_items(0.5, 0.9);
        let p = SamplerParams {
            lambda_s: 0.9,
            lambda_i: 0.5,
            goal_bias: 0.0,
            ..SamplerParams::with_eta(0.5, w.diag())
        };

        // before the first solution the branch coin is never even drawn
        let mut rng = ScriptedRng::new(vec![0.3]);
        let (_, origin) = draw_sample(false, &fs, &mut rng, &p, &w, &goal());
        assert_eq!(origin, SampleOrigin::Uniform);
        assert_eq!(rng.consumed(), 2);

        let mut rng = ScriptedRng::new(vec![0.3]);
        let (_, origin) = draw_sample(true, &fs, &mut rng, &p, &w, &goal());
        assert_eq!(
            origin,
            SampleOrigin::FailRegion {
                index: 1,
                most_important: true
            }
        );

        let never = SamplerParams {
            lambda_s: 0.0,
            ..p.clone()
        };
        let mut rng = SeededRng::new(5);
        for _ in 0..1000 {
            let (_, origin) = draw_sample(true, &fs, &mut rng, &never, &w, &goal());
            assert_eq!(origin, SampleOrigin::Uniform);
        }

        let empty = FailSet::new(0.5);
        let (_, origin) = draw_sample(
            true,
            &empty,
            &mut ScriptedRng::new(vec![0.0]),
            &p,
            &w,
            &goal(),
        );
        assert_eq!(origin, SampleOrigin::Uniform);
    }

    #[test]
    fn goal_bias_returns_center() {
        let w = world();
        let p = SamplerParams {
            goal_bias: 0.05,
            ..SamplerParams::with_eta(0.5, w.diag())
        };
        let (q, origin) = draw_sample(
            false,
            &FailSet::new(0.5),
            &mut ScriptedRng::new(vec![0.01]),
            &p,
            &w,
            &goal(),
        );
        assert_eq!(origin, SampleOrigin::Goal);
        assert_eq!(q.as_slice(), &[9.0, 9.0]);
    }

    #[test]
    fn branch_frequencies() {
        let w = world();
        let mut fs = FailSet::new(0.5);
        for i in 0..10 {
            fs.add([0.5 + i as f64 * 0.6, 1.0].into(), 0);
            fs.set_importance(i, i as f64);
        }
        for &(ls, li) in &[(0.9, 0.5), (0.5, 0.3), (0.2, 0.8)] {
            let p = SamplerParams {
                lambda_s: ls,
                lambda_i: li,
                ..SamplerParams::with_eta(0.5, w.diag())
            };
            let mut rng = SeededRng::new(2024);
            let (mut fail, mut best) = (0usize, 0usize);
            let draws = 10_000;
            for _ in 0..draws {
                if let (_, SampleOrigin::FailRegion { most_important, .. }) =
                    draw_sample(true, &fs, &mut rng, &p, &w, &goal())
                {
                    fail += 1;
                    best += most_important as usize;
                }
            }
            let fail_rate = fail as f64 / draws as f64;
            let best_rate = best as f64 / fail as f64;
            assert!(
                (fail_rate - ls).abs() <= 0.02,
                "fail branch {fail_rate} vs {ls}"
            );
            assert!(
                (best_rate - li).abs() <= 0.02,
                "argmax pick {best_rate} vs {li}"
            );
        }
    }
}
