//! The same workloads on a one-thread rayon pool and on the default pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kkv_core::kkv::{euler_pk_table, kkv_r_table, quasimodularity_audit};
use kkv_core::vertex::{divisibility_audit, Partition};
use rayon::ThreadPoolBuilder;

fn workloads() -> Vec<(&'static str, Box<dyn Fn() + Sync>)> {
    let mu = Partition::new(vec![2, 1]).expect("valid partition");
    vec![
        ("r_table_12x12", Box::new(|| drop(kkv_r_table(12, 12)))),
        ("euler_pk_6x6x4", Box::new(|| drop(euler_pk_table(6, 6, 4).expect("table")))),
        ("qmod_audit_2x3", Box::new(|| drop(quasimodularity_audit(2, 3).expect("audit")))),
        ("vertex_audit_21_e4", Box::new(move || drop(divisibility_audit(&mu, 4).expect("audit")))),
    ]
}

fn bench(c: &mut Criterion) {
    let pools = [
        ("1-thread", ThreadPoolBuilder::new().num_threads(1).build().expect("pool")),
        ("default", ThreadPoolBuilder::new().build().expect("pool")),
    ];
    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (name, work) in workloads() {
        for (label, pool) in &pools {
            group.bench_with_input(BenchmarkId::new(name, label), &(), |b, _| b.iter(|| pool.install(&work)));
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
