use ldv_core::{
    plan, Configuration, GoalRegion, HyperRect, Mode, Planner, PlannerParams, Scenario, World,
};

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn passage() -> Scenario {
    Scenario::bundled("passage2d").unwrap()
}

/// After each step, the new node's parent is the cheapest collision-free
/// candidate and no rewiring candidate could still improve through it.
#[test]
fn replayed_iterations_are_locally_optimal() {
    let s = passage();
    for mode in [Mode::RrtStar, Mode::Ldv] {
        let mut p = s.params.resolve(mode).unwrap();
        p.seed = 5;
        let mut pl = Planner::new(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
        let mut inserted = 0;
        for _ in 0..800 {
            let r = pl.step();
            let Some(id) = r.x_new else { continue };
            inserted += 1;
            let tree = pl.tree();
            let x = tree.node(id);
            let mut cands = r.near.clone();
            cands.push(r.nearest);
            for &c in &cands {
                if c == id {
                    continue;
                }
                let cn = tree.node(c);
                let d = dist(cn.config(), x.config());
                if !s.world.segment_free(cn.config(), x.config()).unwrap() {
                    continue;
                }
                assert!(
                    x.cost() <= cn.cost() + d + 1e-9,
                    "iteration {}: better parent {c}",
                    r.iteration
                );
                assert!(
                    cn.cost() <= x.cost() + d + 1e-9,
                    "iteration {}: missed rewire of {c}",
                    r.iteration
                );
            }
            for &c in &r.rewired {
                assert_eq!(tree.node(c).parent(), Some(id));
            }
        }
        assert!(inserted > 400);
    }
}

#[test]
fn every_edge_stays_collision_free() {
    let s = passage();
    let mut p = s.params.resolve(Mode::Ldv).unwrap();
    p.max_iter = 1500;
    p.seed = 9;
    let r = plan(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
    let mut edges = 0;
    for (_, n) in r.tree.nodes() {
        assert!(s.world.point_free(n.config()).unwrap());
        if let Some(parent) = n.parent() {
            assert!(s
                .world
                .segment_free(r.tree.node(parent).config(), n.config())
                .unwrap());
            edges += 1;
        }
    }
    assert_eq!(edges, r.tree.len() - 1);
    let path = r.best_path.unwrap();
    assert_eq!(path[0].as_slice(), s.start.as_slice());
    assert!(s.goal.contains(path.last().unwrap()));
    let len: f64 = path.windows(2).map(|w| dist(&w[0], &w[1])).sum();
    assert!((len - r.best_cost.unwrap()).abs() < 1e-9);
}

#[test]
fn empty_world_respects_lower_bound_and_improves() {
    let s = Scenario::bundled("empty2d").unwrap();
    let bound = dist(&s.start, s.goal.center()) - s.goal.radius();
    let mut p = s.params.resolve(Mode::RrtStar).unwrap();
    p.seed = 2;
    let mut pl = Planner::new(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
    pl.run(500);
    let early = pl.best().unwrap().1;
    pl.run(1500);
    let late = pl.best().unwrap().1;
    assert!(late <= early);
    assert!(late >= bound - 1e-9);
    assert!(late < 1.2 * bound, "cost {late}");

    // the first extension lands at min(|sample - root|, eta) from the root
    let mut p = PlannerParams::new(Mode::RrtStar, 0.5, 40.0);
    p.sampler.goal_bias = 0.0;
    let mut pl = Planner::new(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
    let r = pl.step();
    let id = r.x_new.unwrap();
    let expect = dist(&r.sample, &s.start).min(0.5);
    assert!((dist(pl.tree().node(id).config(), &s.start) - expect).abs() < 1e-12);
    assert_eq!(pl.tree().len(), 2);
}

#[test]
fn enclosed_goal_is_never_reached() {
    let world = World::new(
        HyperRect::new([0.0, 0.0], [10.0, 10.0]).unwrap(),
        vec![
            HyperRect::new([6.0, 6.0], [9.0, 6.5]).unwrap(),
            HyperRect::new([6.0, 8.5], [9.0, 9.0]).unwrap(),
            HyperRect::new([6.0, 6.0], [6.5, 9.0]).unwrap(),
            HyperRect::new([8.5, 6.0], [9.0, 9.0]).unwrap(),
        ],
    )
    .unwrap();
    let goal = GoalRegion::new(Configuration::from([7.5, 7.5]), 0.5).unwrap();
    let mut p = PlannerParams::new(Mode::Ldv, 0.5, 40.0);
    p.max_iter = 600;
    let r = plan(&world, Configuration::from([1.0, 1.0]), goal, p).unwrap();
    assert!(r.best_path.is_none() && r.best_cost.is_none());
    assert!(r.first_solution_iter.is_none());
    assert!(r.trace.iter().all(|t| t.best_cost.is_none()));
}

#[test]
fn same_seed_same_digest() {
    let s = passage();
    let mut p = s.params.resolve(Mode::Ldv).unwrap();
    p.max_iter = 700;
    p.seed = 77;
    let a = plan(&s.world, s.start.clone(), s.goal.clone(), p.clone()).unwrap();
    let b = plan(&s.world, s.start.clone(), s.goal.clone(), p.clone()).unwrap();
    assert_eq!(a.digest(), b.digest());
    p.seed = 78;
    let c = plan(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
    assert_ne!(a.digest(), c.digest());
}

#[test]
fn start_in_collision_is_rejected() {
    let s = passage();
    let p = s.params.resolve(Mode::Ldv).unwrap();
    assert!(plan(&s.world, Configuration::from([5.0, 2.0]), s.goal.clone(), p).is_err());
}
