use criterion::{criterion_group, criterion_main, Criterion};

use qsprob_core::distribution::Distribution;
use qsprob_core::numerics::WideScalar;
use qsprob_core::pivot_models::{Model, ModelConfig};
use qsprob_core::recurrences::{average_table, DistributionTable, SelectionCostMode};

fn bench_convolution(c: &mut Criterion) {
    let ramp = |len: usize| {
        Distribution::from_weights(
            0,
            (1..=len).map(|k| WideScalar::from_u64(k as u64)).collect(),
        )
    };
    let g = ramp(2000);
    let h = ramp(3000);
    c.bench_function("convolve-2000x3000", |b| b.iter(|| g.convolve(&h)));
}

fn bench_table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("distribution-table");
    group.sample_size(10);
    for model in [Model::Simple, Model::RecursiveMomInsertion] {
        group.bench_function(format!("model{}-to-60", model.id()), |b| {
            b.iter(|| DistributionTable::build(ModelConfig::with_defaults(model), 60))
        });
    }
    group.finish();
}

fn bench_average_recurrence(c: &mut Criterion) {
    c.bench_function("averages-model5-to-10000", |b| {
        b.iter(|| {
            average_table(
                &ModelConfig::with_defaults(Model::RecursiveMomInsertion),
                10_000,
                SelectionCostMode::FixedShift,
            )
        })
    });
}

criterion_group!(
    benches,
    bench_convolution,
    bench_table_build,
    bench_average_recurrence
);
criterion_main!(benches);
