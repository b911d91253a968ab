//! Hypersurfaces of space forms and compositions of minimal immersions.
//!
//! Coordinates are ordered time-like block first. A product places the
//! time-like coordinates of factor 1, then factor 2, then the space-like
//! coordinates of factor 1, then factor 2. The constant offset coordinate
//! `b` is the last (space-like) coordinate in the sphere case and the first
//! (time-like) one in the hyperbolic case.

use nalgebra::DVector;
use serde::Serialize;

use super::charts::{pseudo_hyperbolic_patch, pseudo_sphere_patch, Namer, Patch};
use crate::ambient::{AmbientSpace, Quadric, QuadricKind};
use crate::biharmonic::{sample_points, Verdict};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::subgeom::{point_geometry, Immersion, PointGeometry};

/// Mean-curvature bound below which a factor counts as minimal.
pub const MINIMAL_INPUT_TOL: f64 = 1e-8;

const RADIUS_TOL: f64 = 1e-12;

fn patch(kind: QuadricKind, n: usize, s: usize, r: f64, namer: &mut Namer) -> Result<Patch> {
    match kind {
        QuadricKind::Sphere => pseudo_sphere_patch(n, s, r, namer),
        QuadricKind::Hyperbolic => pseudo_hyperbolic_patch(n, s, r, namer),
    }
}

fn unit_quadric(kind: QuadricKind, dim: usize, index: usize) -> Result<AmbientSpace> {
    match kind {
        QuadricKind::Sphere => AmbientSpace::sphere(dim, index, 1.0),
        QuadricKind::Hyperbolic => AmbientSpace::hyperbolic(dim, index, 1.0),
    }
}

fn complement(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidRadius(format!("need 0 < a < 1, got {a}")));
    }
    Ok((1.0 - a * a).sqrt())
}

/// Whether `a` is `1/√2` up to rounding.
pub fn is_critical_radius(a: f64) -> bool {
    (a * a - 0.5).abs() < RADIUS_TOL
}

/// `S^n_s(a) × {b} ⊂ S^{n+1}_s(1)` or `{b} × H^n_{s-1}(a) ⊂ H^{n+1}_s(1)`,
/// with `b = √(1 − a²)`.
pub fn build_small_hypersurface(kind: QuadricKind, n: usize, s: usize, a: f64) -> Result<Immersion> {
    let b = Expr::constant(complement(a)?);
    let ambient = unit_quadric(kind, n + 1, s)?;
    let (p, comps) = match kind {
        QuadricKind::Sphere => {
            let p = patch(kind, n, s, a, &mut Namer::default())?;
            let comps = p.time.iter().chain(&p.space).cloned().chain([b]).collect();
            (p, comps)
        }
        QuadricKind::Hyperbolic => {
            if s == 0 {
                return Err(Error::UnsupportedSignature { dim: n + 1, index: s });
            }
            let p = patch(kind, n, s - 1, a, &mut Namer::default())?;
            let comps = [b].into_iter().chain(p.time.iter().cloned()).chain(p.space.iter().cloned()).collect();
            (p, comps)
        }
    };
    Immersion::new(p.params, ambient, comps, p.domain)
}

/// Expected verdict of a small hypersurface of radius `a`.
pub fn small_hypersurface_verdict(a: f64) -> Verdict {
    if is_critical_radius(a) {
        Verdict::ProperBiharmonic
    } else {
        Verdict::NotBiharmonic
    }
}

/// `N^p_t(a) × N^q_l(b)` in `S^{p+q+1}_{t+l}(1)` (spheres) or
/// `H^{p+q+1}_{t+l+1}(1)` (hyperbolic factors), with `a² + b² = 1`.
pub fn build_product_hypersurface(
    kind: QuadricKind,
    p: usize,
    t: usize,
    q: usize,
    l: usize,
    a: f64,
    b: f64,
) -> Result<Immersion> {
    if !(a > 0.0 && b > 0.0 && (a * a + b * b - 1.0).abs() < RADIUS_TOL) {
        return Err(Error::InvalidRadius(format!("need a, b > 0 and a^2 + b^2 = 1, got a = {a}, b = {b}")));
    }
    let mut namer = Namer::default();
    let f1 = patch(kind, p, t, a, &mut namer)?;
    let f2 = patch(kind, q, l, b, &mut namer)?;
    let index = match kind {
        QuadricKind::Sphere => t + l,
        QuadricKind::Hyperbolic => t + l + 1,
    };
    let ambient = unit_quadric(kind, p + q + 1, index)?;
    let comps = f1.time.iter().chain(&f2.time).chain(&f1.space).chain(&f2.space).cloned().collect();
    let params = f1.params.into_iter().chain(f2.params).collect();
    let domain = f1.domain.into_iter().chain(f2.domain).collect();
    Immersion::new(params, ambient, comps, domain)
}

/// Expected verdict of a product hypersurface.
pub fn product_verdict(p: usize, q: usize, a: f64, b: f64) -> Verdict {
    if is_critical_radius(a) && is_critical_radius(b) {
        if p == q {
            Verdict::Minimal
        } else {
            Verdict::ProperBiharmonic
        }
    } else {
        Verdict::NotBiharmonic
    }
}

/// How a minimal immersion into a small quadric is extended.
#[derive(Debug, Clone)]
pub enum Target {
    /// Append the constant coordinate `sign · √(1 − a²)`.
    Offset { sign: f64 },
    /// Pair with a second minimal immersion, `Φ(x, y) = (φ₁(x), φ₂(y))`.
    Product(Box<Immersion>),
}

/// Parameters of a composition, recorded for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionInfo {
    pub kind: QuadricKind,
    pub radii: Vec<f64>,
    pub offset_sign: Option<f64>,
}

fn factor_quadric(im: &Immersion) -> Result<Quadric> {
    match im.ambient() {
        AmbientSpace::Quadric(q) if q.radius < 1.0 => Ok(q.clone()),
        other => Err(Error::InvalidImmersion(format!(
            "factor must lie in a quadric of radius below 1, got {}",
            other.descriptor()
        ))),
    }
}

/// Largest `|H|` of `im` over its sample points.
pub fn max_mean_curvature(im: &Immersion) -> Result<f64> {
    let policy = im.sampling();
    let mut max = 0.0f64;
    for u in sample_points(im.domain(), policy.count.max(1), policy.seed, 0.0) {
        max = max.max(point_geometry(im, &u)?.h_norm());
    }
    Ok(max)
}

fn ensure_minimal(im: &Immersion) -> Result<()> {
    let max_h = max_mean_curvature(im)?;
    if max_h < MINIMAL_INPUT_TOL {
        Ok(())
    } else {
        Err(Error::NotMinimalInput { max_h })
    }
}

/// Splits components into the time-like and space-like blocks of the
/// factor's flat embedding space.
fn blocks(im: &Immersion, q: &Quadric) -> (Vec<Expr>, Vec<Expr>) {
    let k = q.embedding_index();
    let c = im.components();
    (c[..k].to_vec(), c[k..].to_vec())
}

fn fresh_params(im: &Immersion, taken: &[String]) -> (Vec<String>, Vec<Expr>) {
    let mut comps = im.components().to_vec();
    let mut names = Vec::new();
    for p in im.params() {
        let mut name = p.clone();
        while taken.contains(&name) || names.contains(&name) || (name != *p && im.params().contains(&name)) {
            name.push('_');
        }
        if name != *p {
            let v = Expr::var(name.clone());
            comps = comps.iter().map(|e| e.substitute(p, &v)).collect();
        }
        names.push(name);
    }
    (names, comps)
}

/// Composes a minimal immersion of a small quadric with its inclusion into
/// the unit quadric one dimension up.
pub fn compose_minimal(factor: &Immersion, target: &Target) -> Result<Immersion> {
    let q1 = factor_quadric(factor)?;
    ensure_minimal(factor)?;
    match target {
        Target::Offset { sign } => {
            if *sign != 1.0 && *sign != -1.0 {
                return Err(Error::InvalidRange(format!("offset sign must be ±1, got {sign}")));
            }
            let b = Expr::constant(sign * complement(q1.radius)?);
            let c = factor.components().iter().cloned();
            let (ambient, comps): (_, Vec<Expr>) = match q1.kind {
                QuadricKind::Sphere => (AmbientSpace::sphere(q1.dim + 1, q1.index, 1.0)?, c.chain([b]).collect()),
                QuadricKind::Hyperbolic => {
                    (AmbientSpace::hyperbolic(q1.dim + 1, q1.index + 1, 1.0)?, [b].into_iter().chain(c).collect())
                }
            };
            Immersion::new(factor.params().to_vec(), ambient, comps, factor.domain().to_vec())
                .map(|im| im.with_sampling(factor.sampling()))
        }
        Target::Product(other) => {
            let q2 = factor_quadric(other)?;
            if q1.kind != q2.kind {
                return Err(Error::InvalidImmersion("factors must be of the same kind".into()));
            }
            let (a, b) = (q1.radius, q2.radius);
            if (a * a + b * b - 1.0).abs() > RADIUS_TOL {
                return Err(Error::InvalidRadius(format!("need a^2 + b^2 = 1, got a = {a}, b = {b}")));
            }
            ensure_minimal(other)?;
            let (t1, s1) = blocks(factor, &q1);
            let (params2, comps2) = fresh_params(other, factor.params());
            let k2 = q2.embedding_index();
            let embedding_index = q1.embedding_index() + k2;
            let ambient = match q1.kind {
                QuadricKind::Sphere => AmbientSpace::sphere(q1.dim + q2.dim + 1, embedding_index, 1.0)?,
                QuadricKind::Hyperbolic => AmbientSpace::hyperbolic(q1.dim + q2.dim + 1, embedding_index - 1, 1.0)?,
            };
            let comps = t1.into_iter().chain(comps2[..k2].iter().cloned()).chain(s1).chain(comps2[k2..].iter().cloned()).collect();
            let params = factor.params().iter().cloned().chain(params2).collect();
            let domain = factor.domain().iter().chain(other.domain()).copied().collect();
            Immersion::new(params, ambient, comps, domain)
        }
    }
}

/// The unit normal field `η = ξ/c` of the small quadric inside the unit
/// one, with `ξ = x − (1/b²) <x, o> o` for the offset vector `o`,
/// `c² = a² + a⁴/b²`. In coordinates `ξ = (x, −a²/b)` for spheres and
/// `(−a²/b, x)` for hyperbolic spaces. It is time-like in the hyperbolic
/// case and space-like for spheres.
pub fn offset_normal(kind: QuadricKind, a: f64, b: f64) -> impl Fn(&PointGeometry) -> DVector<f64> {
    let c = (a * a + a.powi(4) / (b * b)).sqrt();
    let last = -a * a / b;
    move |pg: &PointGeometry| {
        let x = &pg.position;
        let n = x.len();
        match kind {
            QuadricKind::Sphere => DVector::from_fn(n, |i, _| if i + 1 == n { last } else { x[i] }) / c,
            QuadricKind::Hyperbolic => DVector::from_fn(n, |i, _| if i == 0 { last } else { x[i] }) / c,
        }
    }
}

/// `c = √(a² + a⁴/b²)`.
pub fn offset_normal_scale(a: f64, b: f64) -> f64 {
    (a * a + a.powi(4) / (b * b)).sqrt()
}
