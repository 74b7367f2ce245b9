use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use positroid::cluster::{mutation_class, Seed};
use positroid::cm::cluster_tilting_collections;
use positroid::combinatorics::{necklace_from_permutation, positroid_members};
use positroid::numeric::{known_identities, sample_cell_point, verify_identities};
use positroid::plabic::{bridge_graph_from_permutation, face_labels, quiver_from_graph};
use positroid_bench::fixtures;

fn combinatorics(c: &mut Criterion) {
    let mut group = c.benchmark_group("positroid members");
    for (name, sigma) in fixtures() {
        let nk = necklace_from_permutation(&sigma);
        group.bench_with_input(BenchmarkId::from_parameter(name), &nk, |b, nk| {
            b.iter(|| positroid_members(black_box(nk)).unwrap())
        });
    }
    group.finish();
}

fn plabic(c: &mut Criterion) {
    let mut group = c.benchmark_group("bridge graph, faces and quiver");
    for (name, sigma) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &sigma, |b, sigma| {
            b.iter(|| {
                let g = bridge_graph_from_permutation(black_box(sigma));
                (face_labels(&g).unwrap(), quiver_from_graph(&g).unwrap())
            })
        });
    }
    group.finish();
}

fn clusters(c: &mut Criterion) {
    let mut group = c.benchmark_group("mutation class");
    group.sample_size(10);
    for (name, sigma) in fixtures().into_iter().take(3) {
        let seed = Seed::from_graph(&bridge_graph_from_permutation(&sigma)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &seed, |b, seed| {
            b.iter(|| mutation_class(black_box(seed), 1000).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("maximal collections");
    group.sample_size(10);
    for (name, sigma) in fixtures() {
        let nk = necklace_from_permutation(&sigma);
        group.bench_with_input(BenchmarkId::from_parameter(name), &nk, |b, nk| {
            b.iter(|| cluster_tilting_collections(black_box(nk), 12).unwrap())
        });
    }
    group.finish();
}

fn numeric(c: &mut Criterion) {
    let mut group = c.benchmark_group("cell point");
    for (name, sigma) in fixtures() {
        let g = bridge_graph_from_permutation(&sigma);
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            b.iter(|| sample_cell_point(black_box(g), &mut rng).unwrap())
        });
    }
    group.finish();

    let (_, sigma) = fixtures().remove(0);
    let nk = necklace_from_permutation(&sigma);
    let g = bridge_graph_from_permutation(&sigma);
    let class = mutation_class(&Seed::from_graph(&g).unwrap(), 100).unwrap();
    let extra = known_identities(&sigma, &class.seeds[0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let points: Vec<_> = (0..10)
        .map(|_| sample_cell_point(&g, &mut rng).unwrap())
        .collect();
    c.bench_function("verify identities, 10 cell points", |b| {
        b.iter(|| verify_identities(&nk, &class, black_box(&points), &[], &extra).unwrap())
    });
}

criterion_group!(benches, combinatorics, plabic, clusters, numeric);
criterion_main!(benches);
