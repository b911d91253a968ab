use std::hint::black_box;

use biharm::catalog::{all_entries, check_entries};
use biharm::expr::Tape;
use biharm::subgeom::DEFAULT_STEP;
use biharm::{bitension_residual, check_immersion, classify_two_curvature, parse, point_geometry, Bindings, CheckOptions};
use biharm_bench::{center, critical_sphere, hyperbolic_product};
use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::Rational64;

fn expressions(c: &mut Criterion) {
    let e = parse("sqrt(1 + u^2) * sinh(v) / (2 + cos(u*v)) - log(3 + tanh(u))").unwrap();
    let bindings = Bindings::new().with("u", 0.3).with("v", -0.7);
    let tape = Tape::compile(&e, &["u".into(), "v".into()]).unwrap();
    c.bench_function("expr/tree-eval", |b| b.iter(|| e.evaluate(black_box(&bindings)).unwrap()));
    c.bench_function("expr/tape-eval", |b| b.iter(|| tape.eval(black_box(&[0.3, -0.7])).unwrap()));
    c.bench_function("expr/differentiate", |b| b.iter(|| black_box(&e).differentiate("u")));
}

fn pointwise(c: &mut Criterion) {
    for (name, im) in [("s3", critical_sphere()), ("h1xh2", hyperbolic_product())] {
        let u = center(&im);
        c.bench_function(&format!("point-geometry/{name}"), |b| b.iter(|| point_geometry(&im, black_box(&u)).unwrap()));
        c.bench_function(&format!("bitension/{name}"), |b| {
            b.iter(|| bitension_residual(&im, black_box(&u), DEFAULT_STEP).unwrap())
        });
    }
}

fn reports(c: &mut Criterion) {
    let mut group = c.benchmark_group("report");
    group.sample_size(10);
    let im = critical_sphere();
    group.bench_function("check-s3-25-samples", |b| b.iter(|| check_immersion(&im, &CheckOptions::default()).unwrap()));
    let entries = all_entries();
    group.bench_function("catalog-check-all", |b| b.iter(|| check_entries(&entries, &CheckOptions::default())));
    group.finish();
}

fn classification(c: &mut Criterion) {
    c.bench_function("classify/grid", |b| {
        b.iter(|| {
            for n in 2..=6i64 {
                for p in 1..n {
                    black_box(classify_two_curvature(n, p, Rational64::new(3, 2)).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, expressions, pointwise, reports, classification);
criterion_main!(benches);
