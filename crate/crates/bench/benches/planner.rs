use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use ldv_bench::{cluttered_world, directions, free_points, random_tree};
use ldv_core::{Mode, Planner, Scenario};
use std::hint::black_box;

fn ray_cast(c: &mut Criterion) {
    let mut g = c.benchmark_group("ray_cast");
    for n_obs in [4, 32, 128] {
        let world = cluttered_world(2, n_obs, 7);
        let origins = free_points(&world, 256, 8);
        let dirs = directions(2, 256, 9);
        g.bench_with_input(BenchmarkId::from_parameter(n_obs), &n_obs, |b, _| {
            b.iter(|| {
                for (o, d) in origins.iter().zip(&dirs) {
                    black_box(world.ray_cast(o, d).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn nearest(c: &mut Criterion) {
    let mut g = c.benchmark_group("nearest");
    for size in [1_000, 5_000, 20_000] {
        let tree = random_tree(2, size, 11);
        let queries = free_points(&cluttered_world(2, 0, 12), 64, 13);
        g.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, _| {
            b.iter(|| {
                for q in &queries {
                    black_box(tree.nearest(q).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn iterations(c: &mut Criterion) {
    let mut g = c.benchmark_group("plan_500_iterations");
    g.sample_size(20);
    for name in ["passage2d", "box5d"] {
        let s = Scenario::bundled(name).expect("bundled scenario");
        for mode in [Mode::RrtStar, Mode::Ldv] {
            let params = s.params.resolve(mode).unwrap();
            g.bench_function(BenchmarkId::new(name, mode), |b| {
                b.iter_batched(
                    || params.clone(),
                    |p| {
                        let mut pl =
                            Planner::new(&s.world, s.start.clone(), s.goal.clone(), p).unwrap();
                        pl.run(500);
                        black_box(pl.best())
                    },
                    BatchSize::SmallInput,
                )
            });
        }
    }
    g.finish();
}

criterion_group!(benches, ray_cast, nearest, iterations);
criterion_main!(benches);
