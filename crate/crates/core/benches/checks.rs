//! Sequential vs parallel execution of the main sampled workloads.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use heisenberg_ext::classification::{catalog_report, CatalogChoices};
use heisenberg_ext::repr::checks::run_suite;
use heisenberg_ext::repr::quadrature::norm_sq;
use heisenberg_ext::repr::{QuadConfig, SampleCheckConfig, TestFunction};
use heisenberg_ext::{DilationParams, Exec, RealMatrix};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn pointwise_suite(c: &mut Criterion) {
    let params = DilationParams::from_rows([1.0, 0.0], &[[0.5, 0.0], [0.0, 0.6]], &[[1.0, 0.0], [0.0, 0.5]]);
    let cfg = SampleCheckConfig {
        pairs: 16,
        ..SampleCheckConfig::default()
    };
    let mut group = c.benchmark_group("pointwise_suite");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_suite(black_box(&params), &cfg, None, exec).unwrap())
        });
    }
    group.finish();
}

fn quadrature_norm(c: &mut Criterion) {
    let w = RealMatrix::from_rows(&[[1.0, 0.2, 0.0], [0.2, 1.5, -0.1], [0.0, -0.1, 0.8]]).unwrap();
    let f = TestFunction::gaussian(vec![0.3, -0.4, 0.1], w, vec![0.5, 0.0, -1.0]).unwrap();
    let quad = QuadConfig::default();
    let mut group = c.benchmark_group("quadrature_norm");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| norm_sq(black_box(&f), &quad, exec).unwrap())
        });
    }
    group.finish();
}

fn catalog_separation(c: &mut Criterion) {
    let choices = CatalogChoices::default();
    let mut group = c.benchmark_group("catalog_separation");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| catalog_report(black_box(&choices), exec).unwrap())
        });
    }
    group.finish();
}

fn main() {
    let mut criterion = Criterion::default().configure_from_args().sample_size(10);
    pointwise_suite(&mut criterion);
    quadrature_norm(&mut criterion);
    catalog_separation(&mut criterion);
    criterion.final_summary();
}
