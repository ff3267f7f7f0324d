use std::time::Duration;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subordination::admissibility::{minimize_profile, ProfileTarget};
use subordination::conditions::{region_scan, MKPair, ScanFixed, TheoremId};
use subordination::domain::TargetDomain;
use subordination::grid::GridSpec;
use subordination::par::Exec;
use subordination::series::{OperatorParams, PowerSeries, DEFAULT_ORDER};
use subordination::verifier::{implication_test_with, subordination_check_with, FamilySpec};

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("region_scan");
    let t = TheoremId::new(ProfileTarget::Sine, 3, TargetDomain::Lemniscate).unwrap();
    let fixed = ScanFixed {
        beta3: Some(0.05),
        mk: Some(MKPair::default()),
    };
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| region_scan(&t, (0.0, 20.0), (0.0, 5.0), (400, 400), fixed, exec).unwrap())
        });
    }
    g.finish();
}

fn profile(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimize_profile");
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| minimize_profile(black_box(ProfileTarget::Sine), 100_000, exec))
        });
    }
    g.finish();
}

fn subordination(c: &mut Criterion) {
    let mut g = c.benchmark_group("subordination_check");
    let grid = GridSpec::default();
    let q = TargetDomain::Sine.taylor(DEFAULT_ORDER).scale(0.9);
    let p = &q + &PowerSeries::constant(Complex64::new(0.1, 0.0), DEFAULT_ORDER);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| subordination_check_with(&p, &TargetDomain::Sine, &grid, exec).unwrap())
        });
    }
    g.finish();
}

fn implication(c: &mut Criterion) {
    let mut g = c.benchmark_group("implication_test");
    let grid = GridSpec::new(0.99, 16, 128).unwrap();
    let t = TheoremId::new(ProfileTarget::Petal, 2, TargetDomain::Exponential).unwrap();
    let params = OperatorParams::second_order(6.0, 1.0).unwrap();
    let family = FamilySpec::builtin();
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| implication_test_with(&t, &params, None, &family, &grid, exec).unwrap())
        });
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let points: Vec<Complex64> = (0..20_000)
        .map(|_| {
            Complex64::new(
                1.0 + 3.0 * (2.0 * rng.gen::<f64>() - 1.0),
                3.0 * (2.0 * rng.gen::<f64>() - 1.0),
            )
        })
        .collect();
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map_slice(&points, |&w| {
                    TargetDomain::ALL_FIXED
                        .iter()
                        .filter(|d| d.contains(w).is_inside_or_boundary())
                        .count()
                })
            })
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(3));
    targets = scan, profile, subordination, implication, membership
}
criterion_main!(benches);
