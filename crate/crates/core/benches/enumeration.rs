//! Exhaustive searches on a one-thread pool against the full pool. The
//! sequential baseline without rayon is
//! `cargo bench -p netform --no-default-features` (this bench is skipped
//! then; time the equivalent tests instead).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use netform::analysis::{brute_force_optimum, enumerate_equilibria, Limits};
use netform::rational::int;
use netform::{AdversarySpec, ConceptKind, FormationRule};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let all = rayon::current_num_threads();
    let mut sizes = vec![1];
    if all > 1 {
        sizes.push(all);
    }
    sizes
        .into_iter()
        .map(|t| (format!("{t}-thread"), rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap()))
        .collect()
}

fn bench(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for (label, pool) in pools() {
        group.bench_function(BenchmarkId::new("ulf_nash_n5", &label), |b| {
            b.iter(|| {
                pool.install(|| {
                    enumerate_equilibria(
                        5,
                        int(1),
                        FormationRule::Unilateral,
                        &AdversarySpec::SimpleMinded,
                        ConceptKind::Nash,
                        &limits,
                    )
                    .unwrap()
                    .len()
                })
            })
        });
        group.bench_function(BenchmarkId::new("blf_ps_n6", &label), |b| {
            b.iter(|| {
                pool.install(|| {
                    enumerate_equilibria(
                        6,
                        int(1),
                        FormationRule::Bilateral,
                        &AdversarySpec::Smart,
                        ConceptKind::PairwiseStable,
                        &limits,
                    )
                    .unwrap()
                    .len()
                })
            })
        });
        group.bench_function(BenchmarkId::new("optimum_n6", &label), |b| {
            b.iter(|| {
                pool.install(|| {
                    brute_force_optimum(6, int(2), FormationRule::Unilateral, &AdversarySpec::Smart, 7).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
