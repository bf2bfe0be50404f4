use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::hint::black_box;

use wavecp::changepoint::simulate_null;
use wavecp::cwt::{self, SampledWavelet};
use wavecp::{dwt, Execution, FilterId, MonteCarloConfig};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn noise(n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("null_distribution");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mc = MonteCarloConfig::new(20_000, 42).with_execution(exec);
        group.bench_function(name, |b| b.iter(|| simulate_null(black_box(61), &mc)));
    }
    group.finish();
}

fn scalogram(c: &mut Criterion) {
    let x = noise(2048);
    let w = SampledWavelet::morlet(cwt::MORLET_OMEGA0, 1.0 / 32.0).unwrap();
    let scales = cwt::dyadic_scales(6, 4);
    let mut group = c.benchmark_group("cwt");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| cwt::cwt_transform_with(black_box(&x), &scales, &w, exec).unwrap())
        });
    }
    group.finish();
}

fn pyramid(c: &mut Criterion) {
    let f = FilterId::LA8.pair().unwrap();
    let mut group = c.benchmark_group("dwt_la8_j4");
    for k in [10, 13, 16] {
        let n = 1usize << k;
        let x = noise(n);
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| dwt(black_box(x), &f, 4).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, scalogram, pyramid);
criterion_main!(benches);
