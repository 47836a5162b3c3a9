use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rlah_core::bijections::{verify_construction, ConstructionId};
use rlah_core::distributions::oracle_g;
use rlah_core::exec::{self, Execution};
use rlah_core::identities::{sweep_with, SweepSpec, Verifier};

fn modes() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    #[cfg(feature = "parallel")]
    out.push(("parallel", Execution::Parallel));
    out
}

fn oracle_cells(c: &mut Criterion) {
    let cells: Vec<(u32, u32, u32)> = (0..=2u32)
        .flat_map(|r| (0..=7 - r).flat_map(move |n| (0..=n).map(move |k| (n, k, r))))
        .collect();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, cells.len()), &cells, |b, cells| {
            b.iter(|| exec::map(exec, cells.clone(), |(n, k, r)| oracle_g(n, k, r).unwrap()))
        });
    }
    group.finish();
}

fn identity_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        n: 0..=7,
        m: 0..=3,
        r: 0..=3,
        s: 0..=3,
        ..Default::default()
    };
    let mut group = c.benchmark_group("identities");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                let v = Verifier::new(spec.depth());
                black_box(sweep_with(&v, &spec, exec).all_passed())
            })
        });
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut tuples = Vec::new();
    for id in ConstructionId::ALL {
        for (r, s) in [
            (0, 0),
            (1, 0),
            (0, 1),
            (1, 1),
            (2, 1),
            (1, 2),
            (2, 0),
            (0, 2),
        ] {
            if id.applies(r, s) {
                for k in 0..=4 {
                    tuples.push((id, 4, k, r, s));
                }
            }
        }
    }
    let mut group = c.benchmark_group("constructions");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec::map(exec, tuples.clone(), |(id, n, k, r, s)| {
                    verify_construction(id, n, k, r, s).unwrap().passed
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_cells, identity_sweep, constructions);
criterion_main!(benches);
