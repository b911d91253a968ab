//! Named fixtures: proper biharmonic hypersurfaces of the 4-dimensional
//! space forms, boundary cases and compositions of minimal immersions.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;
use serde::Serialize;

use super::builders::{
    build_product_hypersurface, build_small_hypersurface, compose_minimal, product_verdict,
    small_hypersurface_verdict, CompositionInfo, Target,
};
use super::charts::{pseudo_sphere_patch, Namer};
use crate::ambient::{AmbientSpace, QuadricKind};
use crate::biharmonic::{check_immersion, BiharmonicReport, CheckOptions, Verdict};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::subgeom::Immersion;

/// Parameters a fixture was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum BuilderParams {
    SmallHypersurface {
        kind: QuadricKind,
        n: usize,
        s: usize,
        a: f64,
    },
    Product {
        kind: QuadricKind,
        p: usize,
        t: usize,
        q: usize,
        l: usize,
        a: f64,
        b: f64,
    },
    Equator {
        n: usize,
        s: usize,
    },
    Composition {
        construction: String,
        info: CompositionInfo,
    },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Stable kebab-case name.
    pub name: String,
    /// Human-readable statement such as `S^3(1/√2) ⊂ S^4(1)`.
    pub description: String,
    pub params: BuilderParams,
    pub immersion: Immersion,
    pub expected: Verdict,
    /// The geometric result the fixture illustrates.
    pub citation: String,
}

impl CatalogEntry {
    pub fn ambient(&self) -> String {
        self.immersion.ambient().descriptor()
    }
}

/// One ambient space of the 4-dimensional table with its proper
/// biharmonic hypersurfaces.
#[derive(Debug, Clone)]
pub struct ExampleRow {
    pub ambient: String,
    pub curvature: i8,
    pub index: usize,
    pub entries: Vec<CatalogEntry>,
}

const SMALL_CITATION: &str =
    "hypersurface with one principal curvature: S^n_s(1/√2) in S^{n+1}_s(1), H^n_{s-1}(1/√2) in H^{n+1}_s(1)";
const PRODUCT_CITATION: &str =
    "hypersurface with two principal curvatures: product of 1/√2-factors of dimensions p ≠ n - p in the unit quadric";

fn letter(kind: QuadricKind) -> char {
    match kind {
        QuadricKind::Sphere => 's',
        QuadricKind::Hyperbolic => 'h',
    }
}

fn slug(kind: QuadricKind, n: usize, s: usize) -> String {
    if s == 0 {
        format!("{}{n}", letter(kind))
    } else {
        format!("{}{n}i{s}", letter(kind))
    }
}

fn math(kind: QuadricKind, n: usize, s: usize) -> String {
    let l = letter(kind).to_ascii_uppercase();
    if s == 0 {
        format!("{l}^{n}")
    } else {
        format!("{l}^{n}_{s}")
    }
}

fn radius_slug(a: f64) -> String {
    if (a - FRAC_1_SQRT_2).abs() < 1e-15 {
        "1over-sqrt2".into()
    } else {
        format!("{a}").replace('.', "p")
    }
}

fn radius_math(a: f64) -> String {
    if (a - FRAC_1_SQRT_2).abs() < 1e-15 {
        "1/√2".into()
    } else {
        format!("{a}")
    }
}

/// Index of the factor `H^n_{s-1}(a)` or `S^n_s(a)` inside `N^{n+1}_s(1)`.
fn small_index(kind: QuadricKind, s: usize) -> usize {
    match kind {
        QuadricKind::Sphere => s,
        QuadricKind::Hyperbolic => s - 1,
    }
}

fn ambient_index(kind: QuadricKind, t: usize, l: usize) -> usize {
    match kind {
        QuadricKind::Sphere => t + l,
        QuadricKind::Hyperbolic => t + l + 1,
    }
}

/// `N^n_{s'}(a) ⊂ N^{n+1}_s(1)`.
pub fn small_entry(kind: QuadricKind, n: usize, s: usize, a: f64) -> Result<CatalogEntry> {
    let immersion = build_small_hypersurface(kind, n, s, a)?;
    let sub = small_index(kind, s);
    Ok(CatalogEntry {
        name: format!("{}-{}-in-{}", slug(kind, n, sub), radius_slug(a), slug(kind, n + 1, s)),
        description: format!("{}({}) ⊂ {}(1)", math(kind, n, sub), radius_math(a), math(kind, n + 1, s)),
        params: BuilderParams::SmallHypersurface { kind, n, s, a },
        immersion,
        expected: small_hypersurface_verdict(a),
        citation: SMALL_CITATION.into(),
    })
}

/// `N^p_t(a) × N^q_l(b)` in the unit quadric.
pub fn product_entry(kind: QuadricKind, p: usize, t: usize, q: usize, l: usize, a: f64, b: f64) -> Result<CatalogEntry> {
    let immersion = build_product_hypersurface(kind, p, t, q, l, a, b)?;
    let s = ambient_index(kind, t, l);
    let radii = if a == b {
        radius_slug(a)
    } else {
        format!("{}-{}", radius_slug(a), radius_slug(b))
    };
    Ok(CatalogEntry {
        name: format!("{}x{}-{radii}-in-{}", slug(kind, p, t), slug(kind, q, l), slug(kind, p + q + 1, s)),
        description: format!(
            "{}({}) × {}({}) ⊂ {}(1)",
            math(kind, p, t),
            radius_math(a),
            math(kind, q, l),
            radius_math(b),
            math(kind, p + q + 1, s)
        ),
        params: BuilderParams::Product { kind, p, t, q, l, a, b },
        immersion,
        expected: product_verdict(p, q, a, b),
        citation: PRODUCT_CITATION.into(),
    })
}

/// The rows of the table of proper biharmonic hypersurfaces of the
/// 4-dimensional space forms `R^4_s`, `S^4_s(1)`, `H^4_s(1)`.
///
/// Two product lines of the source table are listed twice with identical
/// indices; each appears once here and no other family is substituted.
pub fn example_rows() -> Vec<ExampleRow> {
    use QuadricKind::{Hyperbolic as H, Sphere as S};
    let a = FRAC_1_SQRT_2;
    let small = |kind, s| small_entry(kind, 3, s, a).expect("table entries are valid");
    let product = |kind, t, l| product_entry(kind, 1, t, 2, l, a, a).expect("table entries are valid");
    let row = |curvature: i8, index: usize, entries: Vec<CatalogEntry>| ExampleRow {
        ambient: match curvature {
            0 => AmbientSpace::flat(4, index),
            1 => AmbientSpace::sphere(4, index, 1.0),
            _ => AmbientSpace::hyperbolic(4, index, 1.0),
        }
        .expect("valid ambient")
        .descriptor(),
        curvature,
        index,
        entries,
    };
    vec![
        row(0, 0, vec![]),
        row(1, 0, vec![small(S, 0), product(S, 0, 0)]),
        row(-1, 0, vec![]),
        row(0, 1, vec![]),
        row(1, 1, vec![small(S, 1), product(S, 0, 1), product(S, 1, 0)]),
        row(-1, 1, vec![small(H, 1), product(H, 0, 0)]),
        row(0, 2, vec![]),
        row(1, 2, vec![small(S, 2), product(S, 1, 1)]),
        row(-1, 2, vec![small(H, 2), product(H, 0, 1), product(H, 1, 0)]),
        row(0, 3, vec![]),
        row(1, 3, vec![small(S, 3), product(S, 1, 2)]),
        row(-1, 3, vec![small(H, 3), product(H, 0, 2), product(H, 1, 1)]),
    ]
}

/// All entries of [`example_rows`].
pub fn example_table() -> Vec<CatalogEntry> {
    example_rows().into_iter().flat_map(|r| r.entries).collect()
}

fn equator_entry() -> Result<CatalogEntry> {
    let p = pseudo_sphere_patch(2, 0, 1.0, &mut Namer::default())?;
    let comps = [Expr::constant(0.0)].into_iter().chain(p.space).collect();
    let immersion = Immersion::new(p.params, AmbientSpace::sphere(3, 1, 1.0)?, comps, p.domain)?;
    Ok(CatalogEntry {
        name: "equator-s2-in-s3i1".into(),
        description: "S^2(1) ⊂ S^3_1(1), x_0 = 0".into(),
        params: BuilderParams::Equator { n: 2, s: 1 },
        immersion,
        expected: Verdict::Minimal,
        citation: "totally geodesic space-like sphere of de Sitter space".into(),
    })
}

fn parsed(params: &[&str], ambient: AmbientSpace, comps: &[String], domain: &[(f64, f64)]) -> Result<Immersion> {
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    Immersion::parse(params, ambient, &refs, domain)
}

struct Composed {
    name: &'static str,
    description: &'static str,
    citation: &'static str,
    factor: Immersion,
    target: Target,
    expected: Verdict,
}

fn composition_entries() -> Result<Vec<CatalogEntry>> {
    let a = FRAC_1_SQRT_2;
    let half = a / std::f64::consts::SQRT_2;
    let rapidity = [(-0.8, 0.8)];
    let angle = [(0.4, 2.7)];
    let hyperbolic_geodesic =
        parsed(&["u"], AmbientSpace::hyperbolic(2, 0, a)?, &[format!("{a}*cosh(u)"), format!("{a}*sinh(u)"), "0".into()], &rapidity)?;
    let great_circle =
        parsed(&["u"], AmbientSpace::sphere(2, 0, a)?, &[format!("{a}*cos(u)"), format!("{a}*sin(u)"), "0".into()], &angle)?;
    let timelike_geodesic =
        parsed(&["u"], AmbientSpace::sphere(2, 1, a)?, &[format!("{a}*sinh(u)"), format!("{a}*cosh(u)"), "0".into()], &rapidity)?;
    let clifford = parsed(
        &["u", "v"],
        AmbientSpace::sphere(3, 0, a)?,
        &[format!("{half}*cos(u)"), format!("{half}*sin(u)"), format!("{half}*cos(v)"), format!("{half}*sin(v)")],
        &[(0.4, 2.7), (0.4, 2.7)],
    )?;
    let hyperbolic_line = parsed(&["w"], AmbientSpace::hyperbolic(1, 0, a)?, &[format!("{a}*cosh(w)"), format!("{a}*sinh(w)")], &rapidity)?;
    let hyperbolic_plane = parsed(
        &["v", "t"],
        AmbientSpace::hyperbolic(3, 0, a)?,
        &[format!("{a}*cosh(v)"), format!("{a}*sinh(v)*cos(t)"), format!("{a}*sinh(v)*sin(t)"), "0".into()],
        &[(0.2, 0.8), (0.4, 2.7)],
    )?;
    let circle = parsed(&["w"], AmbientSpace::sphere(1, 0, a)?, &[format!("{a}*cos(w)"), format!("{a}*sin(w)")], &angle)?;
    let great_sphere = parsed(
        &["v", "t"],
        AmbientSpace::sphere(3, 0, a)?,
        &[format!("{a}*sin(v)*cos(t)"), format!("{a}*sin(v)*sin(t)"), format!("{a}*cos(v)"), "0".into()],
        &[(0.4, 2.7), (0.4, 2.7)],
    )?;
    let product = "product of minimal immersions of dimensions m1 ≠ m2 into N^p(1/√2) and N^q(1/√2) is proper biharmonic in N^{p+q+1}(1)";

    let offset = "minimal immersion into N^n(1/√2) followed by the inclusion at height ±1/√2 into N^{n+1}(1)";
    let specs = vec![
        Composed {
            name: "geodesic-via-h2-in-h3i1",
            description: "geodesic of H^2(1/√2) ⊂ H^3_1(1)",
            citation: "minimal submanifold of H^n(1/√2) is proper biharmonic in anti-de Sitter space H^{n+1}_1(1)",
            factor: hyperbolic_geodesic.clone(),
            target: Target::Offset { sign: 1.0 },
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "geodesic-via-h2-in-h3i1-negative-offset",
            description: "geodesic of H^2(1/√2) ⊂ H^3_1(1), offset −1/√2",
            citation: "minimal submanifold of H^n(1/√2) is proper biharmonic in anti-de Sitter space H^{n+1}_1(1)",
            factor: hyperbolic_geodesic.clone(),
            target: Target::Offset { sign: -1.0 },
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "great-circle-via-s2-in-s3",
            description: "great circle of S^2(1/√2) ⊂ S^3(1)",
            citation: offset,
            factor: great_circle,
            target: Target::Offset { sign: 1.0 },
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "timelike-geodesic-via-s2i1-in-s3i1",
            description: "time-like geodesic of S^2_1(1/√2) ⊂ S^3_1(1)",
            citation: "minimal submanifold of de Sitter space S^n_1(1/√2) is proper biharmonic in S^{n+1}_1(1)",
            factor: timelike_geodesic,
            target: Target::Offset { sign: 1.0 },
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "clifford-torus-via-s3-in-s4",
            description: "Clifford torus of S^3(1/√2) ⊂ S^4(1)",
            citation: offset,
            factor: clifford,
            target: Target::Offset { sign: 1.0 },
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "geodesic-product-in-h4i1",
            description: "H^1(1/√2) × (geodesic of H^2(1/√2)) ⊂ H^4_1(1)",
            citation: "product of minimal immersions of equal dimension m1 = m2: the mean curvatures cancel and the product is minimal",
            factor: hyperbolic_line.clone(),
            target: Target::Product(Box::new(hyperbolic_geodesic)),
            expected: Verdict::Minimal,
        },
        Composed {
            name: "line-times-plane-in-h5i1",
            description: "H^1(1/√2) × (totally geodesic H^2 of H^3(1/√2)) ⊂ H^5_1(1)",
            citation: product,
            factor: hyperbolic_line,
            target: Target::Product(Box::new(hyperbolic_plane)),
            expected: Verdict::ProperBiharmonic,
        },
        Composed {
            name: "circle-times-great-sphere-in-s5",
            description: "S^1(1/√2) × (great S^2 of S^3(1/√2)) ⊂ S^5(1)",
            citation: product,
            factor: circle,
            target: Target::Product(Box::new(great_sphere)),
            expected: Verdict::ProperBiharmonic,
        },
    ];
    specs
        .into_iter()
        .map(|c| {
            let immersion = compose_minimal(&c.factor, &c.target)?;
            let kind = match c.factor.ambient() {
                AmbientSpace::Quadric(q) => q.kind,
                _ => unreachable!("factors lie in quadrics"),
            };
            let (radii, offset_sign) = match &c.target {
                Target::Offset { sign } => (vec![a], Some(*sign)),
                Target::Product(_) => (vec![a, a], None),
            };
            Ok(CatalogEntry {
                name: c.name.into(),
                description: c.description.into(),
                params: BuilderParams::Composition {
                    construction: c.description.into(),
                    info: CompositionInfo { kind, radii, offset_sign },
                },
                immersion,
                expected: c.expected,
                citation: c.citation.into(),
            })
        })
        .collect()
}

fn extra_entries() -> Result<Vec<CatalogEntry>> {
    use QuadricKind::Sphere as S;
    let a = FRAC_1_SQRT_2;
    let mut anti_de_sitter = small_entry(QuadricKind::Hyperbolic, 2, 1, a)?;
    anti_de_sitter.name = "h2-in-h3-anti-de-sitter".into();
    anti_de_sitter.citation = "space-like proper biharmonic surface H^2(1/√2) of anti-de Sitter space H^3_1(1)".into();
    let mut clifford = product_entry(S, 1, 0, 1, 0, a, a)?;
    clifford.name = "clifford-s1xs1-in-s3".into();
    clifford.citation = "equal split p = n - p: the product is minimal".into();
    let mut s2xs2 = product_entry(S, 2, 0, 2, 0, a, a)?;
    s2xs2.name = "s2xs2-in-s5".into();
    s2xs2.citation = clifford.citation.clone();
    let mut out = vec![
        anti_de_sitter,
        small_entry(S, 3, 0, 0.8)?,
        small_entry(S, 3, 0, 0.6)?,
        product_entry(S, 1, 0, 2, 0, 0.6, 0.8)?,
        clifford,
        s2xs2,
        equator_entry()?,
    ];
    for e in &mut out[1..4] {
        e.citation = "radius other than 1/√2: not biharmonic".into();
    }
    out.extend(composition_entries()?);
    Ok(out)
}

/// Every named fixture: the 4-dimensional table followed by the extras.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut out = example_table();
    out.extend(extra_entries().expect("catalog fixtures are valid"));
    out
}

/// Looks up an entry by name.
pub fn find(name: &str) -> Result<CatalogEntry> {
    all_entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Engine verdict of one entry against its expectation.
#[derive(Debug, Clone, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub expected: Verdict,
    pub report: BiharmonicReport,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.report.verdict.satisfies(self.expected)
    }
}

/// Runs the engine on `entry`.
pub fn check_entry(entry: &CatalogEntry, opts: &CheckOptions) -> Result<EntryCheck> {
    Ok(EntryCheck {
        name: entry.name.clone(),
        expected: entry.expected,
        report: check_immersion(&entry.immersion, opts)?,
    })
}

/// Runs the engine on every entry concurrently, preserving order.
pub fn check_entries(entries: &[CatalogEntry], opts: &CheckOptions) -> Vec<Result<EntryCheck>> {
    entries.par_iter().map(|e| check_entry(e, opts)).collect()
}
