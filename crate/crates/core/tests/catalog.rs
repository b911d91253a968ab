use std::f64::consts::FRAC_1_SQRT_2;

use biharm::ambient::QuadricKind;
use biharm::catalog::{
    all_entries, build_pseudo_hyperbolic, build_pseudo_sphere, check_entries, check_entry,
    compose_minimal, example_table, find, offset_normal, offset_normal_scale, BuilderParams,
    Target,
};
use biharm::subgeom::{normal_connection, point_geometry, DEFAULT_STEP};
use biharm::{check_immersion, sample_points, CheckOptions, Error, Verdict};
use nalgebra::DMatrix;

#[test]
fn every_entry_matches_its_expected_verdict() {
    let entries = all_entries();
    let checks = check_entries(&entries, &CheckOptions::default());
    let mut failures = Vec::new();
    for (e, c) in entries.iter().zip(checks) {
        match c {
            Ok(c) if c.passed() => {}
            Ok(c) => failures.push(format!(
                "{}: expected {}, got {} (normal {:.3e}, tangential {:.3e}, |H| {:.3e})",
                e.name, c.expected, c.report.verdict, c.report.max_normal, c.report.max_tangential, c.report.max_h_norm
            )),
            Err(err) => failures.push(format!("{}: {err}", e.name)),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn proper_entries_have_constant_h_inner() {
    for e in all_entries().into_iter().filter(|e| e.expected == Verdict::ProperBiharmonic) {
        let c = check_entry(&e, &CheckOptions::default()).unwrap();
        assert!(c.report.h_inner_spread < 1e-6, "{}: spread {}", e.name, c.report.h_inner_spread);
        assert!(c.report.min_h_norm >= 0.1, "{}", e.name);
    }
}

#[test]
fn builder_output_lies_on_the_quadric() {
    for e in all_entries() {
        let biharm::AmbientSpace::Quadric(q) = e.immersion.ambient() else {
            panic!("{} is not in a quadric", e.name)
        };
        for u in sample_points(e.immersion.domain(), 25, 0, 0.0) {
            let x = e.immersion.position(&u).unwrap();
            assert!(q.residual(x.as_slice()).abs() < 1e-10, "{}", e.name);
        }
    }
}

#[test]
fn small_sphere_away_from_critical_radius_is_not_biharmonic() {
    let e = find("s3-0p8-in-s4").unwrap();
    let r = check_entry(&e, &CheckOptions::default()).unwrap().report;
    assert!(r.verdict.satisfies(Verdict::NotBiharmonic));
    // H = -(f) N with f = b/a; the residual is f(|A|^2 - m) in the unit normal.
    let (a, m) = (0.8f64, 3.0);
    let f = (1.0 - a * a).sqrt() / a;
    let oracle = f * (m * (1.0 - a * a) / (a * a) - m).abs();
    assert!((oracle - 0.984375).abs() < 1e-12);
    for s in &r.samples {
        assert!((s.normal_norm_raw - oracle).abs() / oracle < 1e-3, "{}", s.normal_norm_raw);
    }
}

#[test]
fn flat_hypersurfaces_are_not_biharmonic() {
    for s in 0..=3 {
        for r in [0.5, 1.0, 2.0] {
            let sphere = build_pseudo_sphere(3, s, r).unwrap();
            let v = check_immersion(&sphere, &CheckOptions::default()).unwrap().verdict;
            assert!(v.satisfies(Verdict::NotBiharmonic), "S^3_{s}({r})");
            let hyp = build_pseudo_hyperbolic(3, s, r).unwrap();
            let v = check_immersion(&hyp, &CheckOptions::default()).unwrap().verdict;
            assert!(v.satisfies(Verdict::NotBiharmonic), "H^3_{s}({r})");
        }
    }
}

#[test]
fn offset_normal_is_parallel_with_umbilic_shape_operator() {
    for e in all_entries() {
        let BuilderParams::Composition { info, .. } = &e.params else { continue };
        let Some(sign) = info.offset_sign else { continue };
        let a = info.radii[0];
        let b = (1.0 - a * a).sqrt();
        let c = offset_normal_scale(a, b);
        assert!((c - 1.0).abs() < 1e-15);
        let eta = offset_normal(info.kind, a, sign * b);
        let im = &e.immersion;
        for u in sample_points(im.domain(), 10, 0, 4.0 * DEFAULT_STEP) {
            let pg = point_geometry(im, &u).unwrap();
            let v = eta(&pg);
            let norm = pg.inner(&v, &v);
            let want = if info.kind == QuadricKind::Hyperbolic { -1.0 } else { 1.0 };
            assert!((norm - want).abs() < 1e-12, "{}: <η,η> = {norm}", e.name);
            assert!(pg.normal_part(&v).metric_distance(&v) < 1e-12, "{}", e.name);
            let nabla = normal_connection(im, &u, &eta, DEFAULT_STEP).unwrap();
            for d in nabla {
                assert!(d.norm() < 1e-6, "{}: |∇⊥η| = {}", e.name, d.norm());
            }
            let m = pg.dim();
            let a_eta = pg.shape_operator(&v);
            let err = (a_eta + DMatrix::identity(m, m) / c).norm();
            assert!(err < 1e-6, "{}: A_η error {err}", e.name);
        }
    }
}

#[test]
fn compositions_reject_non_minimal_factors() {
    // Circle of the hyperbolic plane at constant x_0; not a geodesic.
    let r = 0.5f64;
    let x0 = (0.5 + r * r).sqrt();
    let circle = biharm::Immersion::parse(
        &["u"],
        biharm::AmbientSpace::hyperbolic(2, 0, FRAC_1_SQRT_2).unwrap(),
        &[&format!("{x0}"), &format!("{r}*cos(u)"), &format!("{r}*sin(u)")],
        &[(0.2, 2.8)],
    )
    .unwrap();
    assert!(matches!(
        compose_minimal(&circle, &Target::Offset { sign: 1.0 }),
        Err(Error::NotMinimalInput { .. })
    ));
}

#[test]
fn example_table_size() {
    assert_eq!(example_table().len(), 17);
}
