//! Local charts of pseudo-spheres and pseudo-hyperbolic spaces.
//!
//! `S^n_s(r) ⊂ R^{n+1}_s` is covered by
//! `x_T = r sinh(t) ω_T`, `x_S = r cosh(t) ω_S` with `ω_T ∈ S^{s-1}` and
//! `ω_S ∈ S^{n-s}`; `H^n_s(r) ⊂ R^{n+1}_{s+1}` by `x_T = r cosh(t) ω_T`,
//! `x_S = r sinh(t) ω_S` with `ω_T ∈ S^s` and `ω_S ∈ S^{n-s-1}`. The unit
//! spheres use hyperspherical angles. When one of the blocks is a single
//! point the rapidity `t` is dropped. Every `0 <= s <= n` with `n >= 1` is
//! covered.

use crate::ambient::AmbientSpace;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::subgeom::Immersion;

/// Domain of a rapidity parameter.
pub const RAPIDITY_RANGE: (f64, f64) = (0.2, 0.8);
/// Domain of an angle parameter, away from the coordinate singularities.
pub const ANGLE_RANGE: (f64, f64) = (0.4, 2.7);

/// Time-like and space-like coordinate blocks of a chart.
#[derive(Debug, Clone)]
pub struct Patch {
    pub time: Vec<Expr>,
    pub space: Vec<Expr>,
    pub params: Vec<String>,
    pub domain: Vec<(f64, f64)>,
}

/// Hands out parameter names `u1, u2, ...`.
#[derive(Debug, Default)]
pub struct Namer(usize);

impl Namer {
    pub fn starting_at(n: usize) -> Self {
        Namer(n)
    }

    fn next(&mut self) -> String {
        self.0 += 1;
        format!("u{}", self.0)
    }
}

fn hypersphere(angles: &[Expr]) -> Vec<Expr> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut prod = Expr::constant(1.0);
    for a in angles {
        out.push(prod.clone().mul(a.clone().cos()));
        prod = prod.mul(a.clone().sin());
    }
    out.push(prod);
    out
}

struct Builder<'a> {
    namer: &'a mut Namer,
    params: Vec<String>,
    domain: Vec<(f64, f64)>,
}

impl Builder<'_> {
    fn param(&mut self, range: (f64, f64)) -> Expr {
        let name = self.namer.next();
        self.params.push(name.clone());
        self.domain.push(range);
        Expr::var(name)
    }

    fn sphere(&mut self, k: usize) -> Vec<Expr> {
        let angles: Vec<Expr> = (0..k).map(|_| self.param(ANGLE_RANGE)).collect();
        hypersphere(&angles)
    }
}

fn validate(n: usize, s: usize, r: f64) -> Result<()> {
    if n == 0 || s > n {
        return Err(Error::UnsupportedSignature { dim: n, index: s });
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidRadius(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

fn scaled(block: Vec<Expr>, factor: &Expr) -> Vec<Expr> {
    block.into_iter().map(|e| factor.clone().mul(e)).collect()
}

/// Chart of `S^n_s(r)`.
pub fn pseudo_sphere_patch(n: usize, s: usize, r: f64, namer: &mut Namer) -> Result<Patch> {
    validate(n, s, r)?;
    let mut b = Builder {
        namer,
        params: Vec::new(),
        domain: Vec::new(),
    };
    let radius = Expr::constant(r);
    let (time, space) = if s == 0 {
        (Vec::new(), scaled(b.sphere(n), &radius))
    } else {
        let t = b.param(RAPIDITY_RANGE);
        let wt = b.sphere(s - 1);
        let ws = b.sphere(n - s);
        (
            scaled(wt, &radius.clone().mul(t.clone().sinh())),
            scaled(ws, &radius.mul(t.cosh())),
        )
    };
    Ok(Patch {
        time,
        space,
        params: b.params,
        domain: b.domain,
    })
}

/// Chart of `H^n_s(r)`.
pub fn pseudo_hyperbolic_patch(n: usize, s: usize, r: f64, namer: &mut Namer) -> Result<Patch> {
    validate(n, s, r)?;
    let mut b = Builder {
        namer,
        params: Vec::new(),
        domain: Vec::new(),
    };
    let radius = Expr::constant(r);
    let (time, space) = if s == n {
        (scaled(b.sphere(n), &radius), Vec::new())
    } else {
        let t = b.param(RAPIDITY_RANGE);
        let wt = b.sphere(s);
        let ws = b.sphere(n - s - 1);
        (
            scaled(wt, &radius.clone().mul(t.clone().cosh())),
            scaled(ws, &radius.mul(t.sinh())),
        )
    };
    Ok(Patch {
        time,
        space,
        params: b.params,
        domain: b.domain,
    })
}

/// `S^n_s(r)` as a hypersurface of `R^{n+1}_s`.
pub fn build_pseudo_sphere(n: usize, s: usize, r: f64) -> Result<Immersion> {
    let p = pseudo_sphere_patch(n, s, r, &mut Namer::default())?;
    let comps = p.time.into_iter().chain(p.space).collect();
    Immersion::new(p.params, AmbientSpace::flat(n + 1, s)?, comps, p.domain)
}

/// `H^n_s(r)` as a hypersurface of `R^{n+1}_{s+1}`.
pub fn build_pseudo_hyperbolic(n: usize, s: usize, r: f64) -> Result<Immersion> {
    let p = pseudo_hyperbolic_patch(n, s, r, &mut Namer::default())?;
    let comps = p.time.into_iter().chain(p.space).collect();
    Immersion::new(p.params, AmbientSpace::flat(n + 1, s + 1)?, comps, p.domain)
}
