use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use riesz_cover::cli::properties::random_pointed_generators;
use riesz_cover::cli::{properties, PropertyConfig};
use riesz_cover::cone::PolyCone;
use riesz_cover::exact::rational::qvec;
use riesz_cover::exact::Subspace;
use riesz_cover::fdspace::density::order_dense_in;
use riesz_cover::fdspace::FdSpace;
use riesz_cover::par::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn hexagonal_prism() -> PolyCone {
    let gens = [[2, 0, 1], [1, 2, 1], [-1, 2, 1], [-2, 0, 1], [-1, -2, 1], [1, -2, 1]].map(|g| qvec(&g));
    PolyCone::from_generators(3, &gens).expect("consistent")
}

fn density(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_density");
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let cones = [("hexagon", hexagonal_prism()), ("random4", PolyCone::from_generators(4, &random_pointed_generators(&mut rng, 4)).expect("consistent"))];
    for (name, cone) in cones {
        let space = FdSpace::build(cone).expect("pre-Riesz");
        let full = Subspace::full(space.m());
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &space, |b, s| {
                b.iter(|| order_dense_in(&s.image(), &full, None, exec).expect("coordinate"));
            });
        }
    }
    group.finish();
}

fn property_trials(c: &mut Criterion) {
    let mut group = c.benchmark_group("properties");
    group.sample_size(10);
    for (mode, exec) in MODES {
        let mut cfg = PropertyConfig::new(42, 8);
        cfg.exec = exec;
        group.bench_function(mode, |b| b.iter(|| properties(&cfg)));
    }
    group.finish();
}

criterion_group!(benches, density, property_trials);
criterion_main!(benches);
