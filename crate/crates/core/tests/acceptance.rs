//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p biharm-core --test acceptance -- --nocapture`.

mod common;

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use biharm::ambient::QuadricKind;
use biharm::biharmonic::HypersurfaceTerms;
use biharm::catalog::{
    all_entries, build_product_hypersurface, build_pseudo_hyperbolic, build_pseudo_sphere,
    build_small_hypersurface, check_entries, check_entry, example_rows, find, offset_normal,
    offset_normal_scale, BuilderParams, CatalogEntry,
};
use biharm::subgeom::{codazzi_defect, metric_signature, normal_connection, DEFAULT_STEP};
use biharm::{
    bitension_residual, check_immersion, classify_two_curvature, parse, point_geometry, sample_points,
    AmbientSpace, Bindings, CheckOptions, Immersion, Signature, Verdict,
};
use nalgebra::{DMatrix, DVector};
use num_rational::Rational64;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

/// Criteria that cannot hold as stated, with the reason. Each is still
/// evaluated and must fail in exactly the predicted way.
const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[(
    5,
    "a product of two geodesics has equal factor dimensions m1 = m2 = 1; its mean curvature is \
     (m1 H1 + m2 H2)/(m1 + m2) with H1 = -H2, so it is minimal, not proper biharmonic",
)];

/// Step for the residual reparametrization comparison.
const INVARIANCE_STEP: f64 = 2e-3;

struct Outcome {
    pass: bool,
    detail: String,
    /// Only for known-unattainable criteria: whether the failure is exactly
    /// the predicted one.
    failure_as_predicted: bool,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Self {
        let pass = failures.is_empty();
        let detail = if pass { summary } else { format!("{summary}; {}", failures.join("; ")) };
        Outcome { pass, detail, failure_as_predicted: false }
    }
}

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn quadric_fixtures() -> Vec<(String, Immersion)> {
    let mut out: Vec<(String, Immersion)> = all_entries().into_iter().map(|e| (e.name, e.immersion)).collect();
    out.push(("wobble-s3".into(), common::wobble_s3()));
    out.push(("twisted-curve-s3".into(), common::twisted_curve_s3()));
    for (name, im) in common::hypersurfaces() {
        if matches!(im.ambient(), AmbientSpace::Quadric(_)) {
            out.push((name.into(), im));
        }
    }
    out
}

fn all_fixtures() -> Vec<(String, Immersion)> {
    let mut out: Vec<(String, Immersion)> = all_entries().into_iter().map(|e| (e.name, e.immersion)).collect();
    out.extend(common::hypersurfaces().into_iter().map(|(n, im)| (n.to_string(), im)));
    out.push(("twisted-curve-s3".into(), common::twisted_curve_s3()));
    out
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut worst_residual: f64 = 0.0;
    let mut least_h = f64::INFINITY;
    for row in example_rows() {
        if row.curvature == 0 && !row.entries.is_empty() {
            failures.push(format!("{} lists proper entries", row.ambient));
        }
        let checks = check_entries(&row.entries, &opts());
        for (e, c) in row.entries.iter().zip(checks) {
            count += 1;
            match c {
                Ok(c) => {
                    let r = &c.report;
                    worst_residual = worst_residual.max(r.max_residual());
                    least_h = least_h.min(r.min_h_norm);
                    if r.samples.len() != 25
                        || r.verdict != Verdict::ProperBiharmonic
                        || r.max_residual() >= 1e-6
                        || r.min_h_norm < 0.1
                    {
                        failures.push(format!("{}: {} residual {:.2e} |H| {:.3}", e.name, r.verdict, r.max_residual(), r.min_h_norm));
                    }
                }
                Err(err) => failures.push(format!("{}: {err}", e.name)),
            }
        }
    }
    // Round hypersurfaces of the flat spaces are never proper biharmonic.
    for s in 0..=3 {
        for im in [build_pseudo_sphere(3, s, 1.0).unwrap(), build_pseudo_hyperbolic(3, s, 1.0).unwrap()] {
            let v = check_immersion(&im, &opts()).unwrap().verdict;
            if v == Verdict::ProperBiharmonic {
                failures.push(format!("round hypersurface of R^4_{s} is proper"));
            }
        }
    }
    if count != 17 {
        failures.push(format!("expected 17 entries, found {count}"));
    }
    Outcome::new(
        failures,
        format!("{count} entries proper, max residual {worst_residual:.2e}, min |H| {least_h:.3}; R^4_s empty"),
    )
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut verdicts = Vec::new();
    for a in [0.6f64, 0.8] {
        let im = build_small_hypersurface(QuadricKind::Sphere, 3, 0, a).unwrap();
        let r = check_immersion(&im, &opts()).unwrap();
        verdicts.push(r.verdict.as_str());
        if !r.verdict.satisfies(Verdict::NotBiharmonic) {
            failures.push(format!("a = {a}: {}", r.verdict));
        }
        let m = 3.0;
        let f = (1.0 - a * a).sqrt() / a;
        let a_sq = m * (1.0 - a * a) / (a * a);
        let oracle = f * (a_sq - m).abs();
        for s in &r.samples {
            let rel = (s.normal_norm_raw - oracle).abs() / oracle;
            worst = worst.max(rel);
            if rel >= 1e-3 {
                failures.push(format!("a = {a}: residual {} vs oracle {oracle}", s.normal_norm_raw));
                break;
            }
        }
    }
    Outcome::new(
        failures,
        format!("verdicts {verdicts:?} (biconservative refines not-biharmonic), oracle rel err {worst:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for p in [1, 2] {
        let im = build_product_hypersurface(QuadricKind::Sphere, p, 0, p, 0, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        let r = check_immersion(&im, &opts()).unwrap();
        worst = worst.max(r.max_h_norm);
        if r.verdict != Verdict::Minimal || r.max_h_norm >= 1e-10 {
            failures.push(format!("p = {p}: {} |H| {:.2e}", r.verdict, r.max_h_norm));
        }
    }
    Outcome::new(failures, format!("S^p x S^p minimal for p = 1, 2, max |H| {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=6i64 {
        for p in 1..n {
            for c in [Rational64::from(1), Rational64::from(-1), Rational64::new(3, 2)] {
                count += 1;
                match classify_two_curvature(n, p, c) {
                    Ok(r) if r.c1 == c * 2 && r.c2 == c * 2 && r.admissible == (n != 2 * p) => {}
                    Ok(r) => failures.push(format!("({n}, {p}, {c}): C1 {} C2 {} admissible {}", r.c1, r.c2, r.admissible)),
                    Err(e) => failures.push(format!("({n}, {p}, {c}): {e}")),
                }
            }
        }
    }
    Outcome::new(failures, format!("{count} grid cases give C1 = C2 = 2C, admissible iff n != 2p"))
}

fn offset_field_facts(e: &CatalogEntry) -> Result<String, String> {
    let BuilderParams::Composition { info, .. } = &e.params else { return Err("not a composition".into()) };
    let sign = info.offset_sign.ok_or("not an offset composition")?;
    let a = info.radii[0];
    let b = (1.0 - a * a).sqrt();
    let c = offset_normal_scale(a, b);
    if (c - 1.0).abs() > 1e-15 {
        return Err(format!("c = {c}"));
    }
    let eta = offset_normal(info.kind, a, sign * b);
    let im = &e.immersion;
    let mut worst: f64 = 0.0;
    for u in sample_points(im.domain(), 10, 0, 4.0 * DEFAULT_STEP) {
        let pg = point_geometry(im, &u).map_err(|e| e.to_string())?;
        for d in normal_connection(im, &u, &eta, DEFAULT_STEP).map_err(|e| e.to_string())? {
            worst = worst.max(d.norm());
        }
        let m = pg.dim();
        worst = worst.max((pg.shape_operator(&eta(&pg)) + DMatrix::identity(m, m) / c).norm());
    }
    if worst < 1e-6 {
        Ok(format!("{}: ∇⊥η and A_η + I/c below {worst:.1e}", e.name))
    } else {
        Err(format!("{}: offset field error {worst:.2e}", e.name))
    }
}

fn criterion_5() -> Outcome {
    let stated = ["geodesic-via-h2-in-h3i1", "great-circle-via-s2-in-s3", "geodesic-product-in-h4i1"];
    let mut failures = Vec::new();
    let mut minimal_product = false;
    for name in stated {
        let e = find(name).unwrap();
        let r = check_entry(&e, &opts()).unwrap().report;
        if r.verdict != Verdict::ProperBiharmonic || r.max_residual() >= 1e-6 {
            if name == "geodesic-product-in-h4i1" && r.verdict == Verdict::Minimal && r.max_h_norm < 1e-10 {
                minimal_product = true;
            }
            failures.push(format!("{name}: {} (max |H| {:.1e})", r.verdict, r.max_h_norm));
        }
    }
    // The product construction with m1 != m2 and the negative offset.
    let mut supporting = Vec::new();
    for name in ["line-times-plane-in-h5i1", "circle-times-great-sphere-in-s5", "geodesic-via-h2-in-h3i1-negative-offset"] {
        let r = check_entry(&find(name).unwrap(), &opts()).unwrap().report;
        if r.verdict == Verdict::ProperBiharmonic && r.max_residual() < 1e-6 {
            supporting.push(name);
        } else {
            failures.push(format!("{name}: {}", r.verdict));
            minimal_product = false;
        }
    }
    let mut facts = Vec::new();
    for e in all_entries() {
        if matches!(&e.params, BuilderParams::Composition { info, .. } if info.offset_sign.is_some()) {
            match offset_field_facts(&e) {
                Ok(s) => facts.push(s),
                Err(s) => {
                    failures.push(s);
                    minimal_product = false;
                }
            }
        }
    }
    let predicted = failures.len() == 1 && minimal_product;
    let mut out = Outcome::new(
        failures,
        format!(
            "offset compositions proper; products with unequal factor dimensions proper ({}); offset field parallel with A_η = -I/c, c = 1 ({} fixtures)",
            supporting.join(", "),
            facts.len()
        ),
    );
    out.failure_as_predicted = predicted;
    out
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let ads = check_entry(&find("h2-in-h3-anti-de-sitter").unwrap(), &opts()).unwrap().report;
    if ads.verdict != Verdict::ProperBiharmonic || ads.max_residual() >= 1e-6 {
        failures.push(format!("H^2(1/√2) in H^3_1: {}", ads.verdict));
    }
    let eq = check_entry(&find("equator-s2-in-s3i1").unwrap(), &opts()).unwrap().report;
    if eq.verdict != Verdict::Minimal {
        failures.push(format!("equatorial S^2 in S^3_1: {}", eq.verdict));
    }
    let mut runner = TestRunner::deterministic();
    let input = (1usize..=5).prop_flat_map(|m| {
        (
            -3.0f64..3.0,
            -3.0f64..3.0,
            proptest::collection::vec(-2.0f64..2.0, m * m),
            proptest::collection::vec(-2.0f64..2.0, m),
            -2.0f64..2.0,
        )
    });
    for _ in 0..100 {
        let (f, lap, a, g, c) = input.new_tree(&mut runner).unwrap().current();
        let m = g.len();
        let a = DMatrix::from_vec(m, m, a);
        let a = (&a + a.transpose()) * 0.5;
        let g = DVector::from_vec(g);
        let plus = HypersurfaceTerms::space_form(1.0, f, lap, &a, &g, c);
        let minus = HypersurfaceTerms::space_form(-1.0, f, lap, &a, &g, c);
        let flipped = minus.shape_term.to_bits() == (-plus.shape_term).to_bits() && minus.f_grad_f == -&plus.f_grad_f;
        let kept = minus.laplacian.to_bits() == plus.laplacian.to_bits()
            && minus.curvature_term.to_bits() == plus.curvature_term.to_bits()
            && minus.shape_grad == plus.shape_grad
            && minus.ricci_tangential == plus.ricci_tangential;
        if !(flipped && kept) {
            failures.push(format!("sign flip broken at f = {f}, C = {c}"));
            break;
        }
    }
    Outcome::new(
        failures,
        format!(
            "AdS surface proper (residual {:.1e}), de Sitter equator minimal, sign flip exact on 100 inputs",
            ads.max_residual()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();

    // Symbolic versus finite-difference derivatives.
    let mut worst_fd: f64 = 0.0;
    for text in ["exp(u*v)", "log(1+u^2)", "tanh(u)", "sinh(u)*cos(v)", "sqrt(2+sin(u*v))"] {
        let e = parse(text).unwrap();
        for u in sample_points(&[(-1.0, 1.0), (-1.0, 1.0)], 100, 0, 0.0) {
            for var in ["u", "v"] {
                let at = |du: f64, dv: f64| e.evaluate(&Bindings::new().with("u", u[0] + du).with("v", u[1] + dv)).unwrap();
                let h = 1e-5;
                let fd = if var == "u" { (at(h, 0.0) - at(-h, 0.0)) / (2.0 * h) } else { (at(0.0, h) - at(0.0, -h)) / (2.0 * h) };
                let exact = e.differentiate(var).evaluate(&Bindings::new().with("u", u[0]).with("v", u[1])).unwrap();
                if exact.abs() > 1e-8 {
                    worst_fd = worst_fd.max((exact - fd).abs() / exact.abs());
                }
            }
        }
    }
    if worst_fd >= 1e-6 {
        failures.push(format!("FD corpus rel err {worst_fd:.2e}"));
    }

    // Codazzi in space forms and the tension identity.
    let mut worst_codazzi: f64 = 0.0;
    let mut worst_tension: f64 = 0.0;
    for (name, im) in quadric_fixtures() {
        for u in sample_points(im.domain(), 5, 0, 4.0 * DEFAULT_STEP) {
            worst_codazzi = worst_codazzi.max(codazzi_defect(&im, &u, DEFAULT_STEP).unwrap());
            let pg = point_geometry(&im, &u).unwrap();
            let mh = &pg.mean_curvature * pg.dim() as f64;
            let gap = (pg.tension_from_metric_derivatives() - &mh).norm() / pg.scale();
            worst_tension = worst_tension.max(gap);
            if gap >= 1e-9 {
                failures.push(format!("{name}: tension gap {gap:.2e}"));
            }
        }
    }
    if worst_codazzi >= 1e-5 {
        failures.push(format!("Codazzi defect {worst_codazzi:.2e}"));
    }

    // Sylvester: congruence preserves the signature.
    let mut runner = TestRunner::deterministic();
    let input = (2usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(proptest::prop_oneof![-3.0f64..-0.2, 0.2f64..3.0], n),
            proptest::collection::vec(-0.4f64..0.4, n * n),
        )
    });
    let mut congruences = 0;
    while congruences < 200 {
        let (d, p) = input.new_tree(&mut runner).unwrap().current();
        let n = d.len();
        let p = DMatrix::identity(n, n) + DMatrix::from_vec(n, n, p);
        if p.clone().determinant().abs() < 0.1 {
            continue;
        }
        congruences += 1;
        let g = p.transpose() * DMatrix::from_diagonal(&DVector::from_vec(d.clone())) * &p;
        let g = (&g + g.transpose()) * 0.5;
        let neg = d.iter().filter(|x| **x < 0.0).count();
        if metric_signature(&g) != Ok(Signature::new(neg, n - neg)) {
            failures.push(format!("signature of congruent metric changed: {d:?}"));
            break;
        }
    }

    // Reparametrization invariance. With a uniform scale |s| and the step
    // divided by |s| the stencils coincide in the original coordinates, so
    // residuals agree up to the rounding floor of nested differences, about
    // eps / h^2. That floor is near 1e-8 at the default step, so residuals
    // are compared at INVARIANCE_STEP, close to the noise/truncation balance
    // eps^(1/6). An anisotropic rescaling changes the effective step per
    // axis; only the verdict is compared there.
    let gap = |a: &biharm::biharmonic::Bitension, b: &biharm::biharmonic::Bitension| {
        (a.normal_norm() - b.normal_norm())
            .abs()
            .max((a.tangential_norm() - b.tangential_norm()).abs())
            .max((a.h_inner - b.h_inner).abs())
            .max((a.h_norm - b.h_norm).abs())
    };
    let mut worst_matched: f64 = 0.0;
    let mut worst_default_step: f64 = 0.0;
    let mut worst_anisotropic: f64 = 0.0;
    let mut reparam_checked = 0;
    for (name, im) in all_fixtures() {
        let k = im.dim();
        let shift: Vec<f64> = (0..k).map(|i| 0.3 - 0.2 * i as f64).collect();
        let uniform: Vec<f64> = (0..k).map(|i| if i % 2 == 0 { 1.6 } else { -1.6 }).collect();
        let anisotropic: Vec<f64> = (0..k).map(|i| if i % 2 == 0 { 1.7 } else { -0.6 }).collect();
        let matched = im.reparametrize_affine(&uniform, &shift).unwrap();
        let skewed = im.reparametrize_affine(&anisotropic, &shift).unwrap();
        for u in sample_points(im.domain(), 3, 0, 4.0 * INVARIANCE_STEP) {
            let w = |scale: &[f64]| -> Vec<f64> { (0..k).map(|i| (u[i] - shift[i]) / scale[i]).collect() };
            let res = |im: &Immersion, v: &[f64], h: f64| bitension_residual(im, v, h).unwrap();
            let a = res(&im, &u, INVARIANCE_STEP);
            worst_matched = worst_matched.max(gap(&a, &res(&matched, &w(&uniform), INVARIANCE_STEP / 1.6)));
            let a = res(&im, &u, DEFAULT_STEP);
            worst_default_step = worst_default_step.max(gap(&a, &res(&matched, &w(&uniform), DEFAULT_STEP / 1.6)));
            worst_anisotropic = worst_anisotropic.max(gap(&a, &res(&skewed, &w(&anisotropic), DEFAULT_STEP)));
        }
        let v = check_immersion(&im, &opts()).unwrap().verdict;
        for re in [&matched, &skewed] {
            let w = check_immersion(re, &opts()).unwrap().verdict;
            if v != w {
                failures.push(format!("{name}: verdict {v} becomes {w}"));
            }
        }
        reparam_checked += 1;
    }
    if worst_matched >= 1e-8 {
        failures.push(format!("reparametrization changes residuals by {worst_matched:.2e}"));
    }
    Outcome::new(
        failures,
        format!(
            "FD rel err {worst_fd:.1e}, Codazzi {worst_codazzi:.1e}, tension gap {worst_tension:.1e}, {congruences} congruences, \
             reparametrization gap {worst_matched:.1e} at h = {INVARIANCE_STEP} \
             ({worst_default_step:.1e} at the default step, {worst_anisotropic:.1e} anisotropic, verdicts unchanged) on {reparam_checked} fixtures"
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (name, im) in all_fixtures() {
        let r = check_immersion(&im, &opts()).unwrap();
        if im.dim() == 4 || r.max_pseudo_umbilical >= 1e-8 || r.max_tangential >= 1e-6 {
            continue;
        }
        checked += 1;
        worst = worst.max(r.h_inner_spread);
        if r.h_inner_spread >= 1e-6 {
            failures.push(format!("{name}: <H,H> spread {:.2e}", r.h_inner_spread));
        }
    }
    if checked == 0 {
        failures.push("no pseudo-umbilical fixture".into());
    }
    Outcome::new(failures, format!("{checked} pseudo-umbilical biconservative fixtures, max <H,H> spread {worst:.1e}"))
}

type Criterion = (u8, &'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (1, "catalog reproduction", criterion_1),
        (2, "sharpness of the critical radius", criterion_2),
        (3, "equal-split degeneration", criterion_3),
        (4, "classification algebra", criterion_4),
        (5, "construction theorems", criterion_5),
        (6, "space-like and Lorentzian suite", criterion_6),
        (7, "numerical kernel", criterion_7),
        (8, "pseudo-umbilical constant mean curvature", criterion_8),
    ];
    let known: HashMap<u8, &str> = KNOWN_UNATTAINABLE.iter().copied().collect();
    let mut unexpected = Vec::new();
    for (k, title, run) in criteria {
        let out = run();
        println!("{} criterion {k} ({title}): {}", if out.pass { "PASS" } else { "FAIL" }, out.detail);
        match (out.pass, known.get(&k)) {
            (true, None) => {}
            (false, Some(reason)) if out.failure_as_predicted => println!("     known unattainable: {reason}"),
            (false, Some(_)) => unexpected.push(format!("criterion {k} fails differently than predicted")),
            (true, Some(_)) => unexpected.push(format!("criterion {k} passes but is listed as unattainable")),
            (false, None) => unexpected.push(format!("criterion {k} fails")),
        }
    }
    assert!(unexpected.is_empty(), "{}", unexpected.join("\n"));
}
