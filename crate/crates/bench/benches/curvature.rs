use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hingecurv::{compute_report, fixtures, DualScheme, DualTessellation, Hinges};

fn hinge_angles(c: &mut Criterion) {
    let mesh = fixtures::gen_icosphere(1.0, 3).unwrap();
    c.bench_function("hinge_angles/icosphere3", |b| b.iter(|| Hinges::extract(&mesh).unwrap()));
}

fn dual_cells(c: &mut Criterion) {
    let mesh = fixtures::gen_icosphere(1.0, 3).unwrap();
    let mut group = c.benchmark_group("dual");
    for scheme in DualScheme::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(scheme), &scheme, |b, &s| {
            b.iter(|| DualTessellation::build(&mesh, s))
        });
    }
    group.finish();
}

fn full_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("report");
    group.sample_size(20);
    for sub in [1usize, 2, 3] {
        let mesh = fixtures::gen_icosphere(1.0, sub).unwrap();
        group.bench_with_input(BenchmarkId::new("serial", sub), &mesh, |b, m| {
            b.iter(|| compute_report(m, DualScheme::Mixed, false).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", sub), &mesh, |b, m| {
            b.iter(|| compute_report(m, DualScheme::Mixed, true).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, hinge_angles, dual_cells, full_report);
criterion_main!(benches);
