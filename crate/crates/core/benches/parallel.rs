use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rdperm::experiments::{record_growth, ExperimentConfig, ExperimentKind};
use rdperm::measures::{elementary_projection_with, DesignedPath, Growth, ProjectionMode};
use rdperm::{AlphaSpec, Execution, OmegaPoint};

fn replicates(c: &mut Criterion) {
    let omega = OmegaPoint::alpha_p(AlphaSpec::squares(), 0.5).unwrap();
    let config = ExperimentConfig::new(ExperimentKind::RecordGrowth, omega, vec![100, 1_000, 10_000], 32, 1);
    let mut group = c.benchmark_group("record_growth_32x10k");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(name, |b| b.iter(|| black_box(record_growth(&config, exec).unwrap())));
    }
    group.finish();
}

fn projection(c: &mut Criterion) {
    let rho = DesignedPath::new(Vec::new(), Growth::Sqrt).unwrap().word(2_000);
    let mode = ProjectionMode::MonteCarlo { samples: 20_000, seed: 5 };
    let mut group = c.benchmark_group("elementary_projection_mc");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(name, |b| b.iter(|| black_box(elementary_projection_with(&rho, 3, mode, exec).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, replicates, projection);
criterion_main!(benches);
