//! Ambient pseudo-Riemannian spaces.
//!
//! Space forms are modelled extrinsically: the pseudo-Euclidean space
//! `R^n_s` directly, and the pseudo-sphere `S^n_s(r)` and pseudo-hyperbolic
//! space `H^n_s(r)` as quadrics in `R^{n+1}_s` and `R^{n+1}_{s+1}`. Time-like
//! axes always come first. A general ambient is a coordinate chart carrying
//! a metric matrix of expressions, whose first and second derivatives are
//! taken symbolically.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Expr, Tape};

/// Relative tolerance for `|det h| / prod(row norms)` below which a metric
/// counts as degenerate.
pub const NONDEGENERACY_TOL: f64 = 1e-10;

/// Metric signature: `neg` time-like and `pos` space-like directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub neg: usize,
    pub pos: usize,
}

impl Signature {
    pub fn new(neg: usize, pos: usize) -> Self {
        Signature { neg, pos }
    }

    pub fn dim(&self) -> usize {
        self.neg + self.pos
    }

    /// Sign of the `i`-th basis direction, time-like first.
    pub fn epsilon(&self, i: usize) -> f64 {
        if i < self.neg {
            -1.0
        } else {
            1.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadricKind {
    Sphere,
    Hyperbolic,
}

/// `S^n_s(r)` or `H^n_s(r)` embedded as a quadric in flat space.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadric {
    pub kind: QuadricKind,
    pub dim: usize,
    pub index: usize,
    pub radius: f64,
}

impl Quadric {
    pub fn new(kind: QuadricKind, dim: usize, index: usize, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidRadius(format!("radius must be positive, got {radius}")));
        }
        if index > dim {
            return Err(Error::InvalidRange(format!("index {index} exceeds dimension {dim}")));
        }
        Ok(Quadric {
            kind,
            dim,
            index,
            radius,
        })
    }

    pub fn curvature(&self) -> f64 {
        let c = 1.0 / (self.radius * self.radius);
        match self.kind {
            QuadricKind::Sphere => c,
            QuadricKind::Hyperbolic => -c,
        }
    }

    /// Index of the flat space `R^{n+1}_k` the quadric lives in.
    pub fn embedding_index(&self) -> usize {
        match self.kind {
            QuadricKind::Sphere => self.index,
            QuadricKind::Hyperbolic => self.index + 1,
        }
    }

    /// `<x,x> = r^2` for spheres, `-r^2` for hyperbolic spaces.
    pub fn level(&self) -> f64 {
        let r2 = self.radius * self.radius;
        match self.kind {
            QuadricKind::Sphere => r2,
            QuadricKind::Hyperbolic => -r2,
        }
    }

    /// `<x,x> - level`; zero exactly on the quadric.
    pub fn residual(&self, x: &[f64]) -> f64 {
        flat_inner(x, x, self.embedding_index()) - self.level()
    }
}

/// A coordinate chart with a metric given by expressions in the chart
/// coordinates.
#[derive(Debug, Clone)]
pub struct Chart {
    coords: Vec<String>,
    metric: Vec<Vec<Expr>>,
    h: Vec<Tape>,
    dh: Vec<Tape>,
    ddh: Vec<Tape>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.metric == other.metric
    }
}

/// Index of the upper-triangular pair `(a, b)` with `a <= b`.
fn sym(a: usize, b: usize, n: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a * n - a * (a + 1) / 2 + b
}

fn sym_len(n: usize) -> usize {
    n * (n + 1) / 2
}

impl Chart {
    /// Builds a chart; `metric` must be square and symmetric.
    pub fn new(coords: Vec<String>, metric: Vec<Vec<Expr>>) -> Result<Chart> {
        let n = coords.len();
        if metric.len() != n || metric.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: metric.len(),
            });
        }
        for a in 0..n {
            for b in 0..a {
                if metric[a][b] != metric[b][a] {
                    return Err(Error::InvalidImmersion(format!(
                        "chart metric is not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        let mut h = Vec::with_capacity(sym_len(n));
        let mut dh = Vec::with_capacity(sym_len(n) * n);
        let mut ddh = Vec::with_capacity(sym_len(n) * sym_len(n));
        for a in 0..n {
            for b in a..n {
                let e = &metric[a][b];
                h.push(Tape::compile(e, &coords)?);
                let firsts: Vec<Expr> = coords.iter().map(|c| e.differentiate(c)).collect();
                for d in &firsts {
                    dh.push(Tape::compile(d, &coords)?);
                }
                for (g, d) in firsts.iter().enumerate() {
                    for c in &coords[g..] {
                        ddh.push(Tape::compile(&d.differentiate(c), &coords)?);
                    }
                }
            }
        }
        Ok(Chart {
            coords,
            metric,
            h,
            dh,
            ddh,
        })
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn metric_exprs(&self) -> &[Vec<Expr>] {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn metric(&self, y: &[f64]) -> Result<DMatrix<f64>> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut stack = Vec::new();
        for a in 0..n {
            for b in a..n {
                let v = self.h[sym(a, b, n)].eval_with(y, &mut stack)?;
                m[(a, b)] = v;
                m[(b, a)] = v;
            }
        }
        Ok(m)
    }

    /// Full first- and second-order metric data at `y`.
    pub fn point(&self, y: &[f64]) -> Result<ChartPoint> {
        let n = self.dim();
        if y.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: y.len(),
            });
        }
        let h = self.metric(y)?;
        check_nondegenerate(&h, y)?;
        let h_inv = h.clone().try_inverse().ok_or_else(|| Error::DegenerateMetric { at: y.to_vec() })?;
        let mut stack = Vec::new();
        let mut dh = vec![DMatrix::zeros(n, n); n];
        let mut ddh = vec![DMatrix::zeros(n, n); n * n];
        let s = sym_len(n);
        for a in 0..n {
            for b in a..n {
                let k = sym(a, b, n);
                for (g, dg) in dh.iter_mut().enumerate() {
                    let v = self.dh[k * n + g].eval_with(y, &mut stack)?;
                    dg[(a, b)] = v;
                    dg[(b, a)] = v;
                }
                for g in 0..n {
                    for d in g..n {
                        let v = self.ddh[k * s + sym(g, d, n)].eval_with(y, &mut stack)?;
                        for (p, q) in [(g, d), (d, g)] {
                            ddh[p * n + q][(a, b)] = v;
                            ddh[p * n + q][(b, a)] = v;
                        }
                    }
                }
            }
        }
        Ok(ChartPoint::assemble(h, h_inv, dh, ddh))
    }
}

fn check_nondegenerate(h: &DMatrix<f64>, at: &[f64]) -> Result<()> {
    let rows: f64 = h.row_iter().map(|r| r.norm()).product();
    let det = h.determinant();
    if rows == 0.0 || !(det.abs() / rows > NONDEGENERACY_TOL) {
        return Err(Error::DegenerateMetric { at: at.to_vec() });
    }
    Ok(())
}

/// Metric, Christoffel symbols and curvature of a chart at one point.
#[derive(Debug, Clone)]
pub struct ChartPoint {
    pub h: DMatrix<f64>,
    pub h_inv: DMatrix<f64>,
    /// `dh[c] = ∂_c h`.
    pub dh: Vec<DMatrix<f64>>,
    /// `gamma[c][(a, b)] = Γ^c_{ab}`.
    pub gamma: Vec<DMatrix<f64>>,
    /// `riemann[r * n^3 + s * n^2 + m * n + v] = R^r_{s m v}`, so that
    /// `R(X,Y)Z^r = R^r_{s m v} Z^s X^m Y^v`.
    riemann: Vec<f64>,
}

impl ChartPoint {
    fn assemble(
        h: DMatrix<f64>,
        h_inv: DMatrix<f64>,
        dh: Vec<DMatrix<f64>>,
        ddh: Vec<DMatrix<f64>>,
    ) -> ChartPoint {
        let n = h.nrows();
        // lowered[c][(a,b)] = ½(∂_a h_cb + ∂_b h_ca − ∂_c h_ab)
        let lowered = |dh: &[DMatrix<f64>]| -> Vec<DMatrix<f64>> {
            (0..n)
                .map(|c| {
                    DMatrix::from_fn(n, n, |a, b| {
                        0.5 * (dh[a][(c, b)] + dh[b][(c, a)] - dh[c][(a, b)])
                    })
                })
                .collect()
        };
        let raise = |low: &[DMatrix<f64>], inv: &DMatrix<f64>| -> Vec<DMatrix<f64>> {
            (0..n)
                .map(|c| {
                    let mut m = DMatrix::zeros(n, n);
                    for (d, l) in low.iter().enumerate() {
                        m += l * inv[(c, d)];
                    }
                    m
                })
                .collect()
        };
        let low = lowered(&dh);
        let gamma = raise(&low, &h_inv);

        // ∂_m Γ^c_{ab} = ∂_m h^{cd} low_d + h^{cd} ∂_m low_d
        let dgamma: Vec<Vec<DMatrix<f64>>> = (0..n)
            .map(|m| {
                let dinv = -(&h_inv * &dh[m] * &h_inv);
                let dlow: Vec<DMatrix<f64>> = {
                    let slice: Vec<DMatrix<f64>> = (0..n).map(|a| ddh[m * n + a].clone()).collect();
                    lowered(&slice)
                };
                let a = raise(&low, &dinv);
                let b = raise(&dlow, &h_inv);
                a.into_iter().zip(b).map(|(x, y)| x + y).collect()
            })
            .collect();

        let mut riemann = vec![0.0; n * n * n * n];
        for r in 0..n {
            for s in 0..n {
                for m in 0..n {
                    for v in 0..n {
                        let mut val = dgamma[m][r][(v, s)] - dgamma[v][r][(m, s)];
                        for l in 0..n {
                            val += gamma[r][(m, l)] * gamma[l][(v, s)]
                                - gamma[r][(v, l)] * gamma[l][(m, s)];
                        }
                        riemann[((r * n + s) * n + m) * n + v] = val;
                    }
                }
            }
        }
        ChartPoint {
            h,
            h_inv,
            dh,
            gamma,
            riemann,
        }
    }

    pub fn dim(&self) -> usize {
        self.h.nrows()
    }

    /// `Γ(X, Y)^c = Γ^c_{ab} X^a Y^b`.
    pub fn christoffel_contract(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |c, _| x.dot(&(&self.gamma[c] * y)))
    }

    pub fn riemann_component(&self, r: usize, s: usize, m: usize, v: usize) -> f64 {
        let n = self.dim();
        self.riemann[((r * n + s) * n + m) * n + v]
    }

    /// `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z`.
    pub fn riemann(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> DVector<f64> {
        let n = self.dim();
        DVector::from_fn(n, |r, _| {
            let mut acc = 0.0;
            for s in 0..n {
                for m in 0..n {
                    for v in 0..n {
                        acc += self.riemann_component(r, s, m, v) * z[s] * x[m] * y[v];
                    }
                }
            }
            acc
        })
    }

    /// Ricci tensor `Ric_{sv} = R^m_{s m v}`.
    pub fn ricci_tensor(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |s, v| {
            (0..n).map(|m| self.riemann_component(m, s, m, v)).sum()
        })
    }
}

/// The ambient space of an immersion.
#[derive(Debug, Clone, PartialEq)]
pub enum AmbientSpace {
    Flat { dim: usize, index: usize },
    Quadric(Quadric),
    Chart(Chart),
}

impl AmbientSpace {
    pub fn flat(dim: usize, index: usize) -> Result<Self> {
        if index > dim {
            return Err(Error::InvalidRange(format!("index {index} exceeds dimension {dim}")));
        }
        Ok(AmbientSpace::Flat { dim, index })
    }

    pub fn sphere(dim: usize, index: usize, radius: f64) -> Result<Self> {
        Quadric::new(QuadricKind::Sphere, dim, index, radius).map(AmbientSpace::Quadric)
    }

    pub fn hyperbolic(dim: usize, index: usize, radius: f64) -> Result<Self> {
        Quadric::new(QuadricKind::Hyperbolic, dim, index, radius).map(AmbientSpace::Quadric)
    }

    /// The space form `N^n_s(C)`: flat for `C = 0`, otherwise a unit-scaled quadric.
    pub fn space_form(dim: usize, index: usize, curvature: f64) -> Result<Self> {
        if curvature == 0.0 {
            AmbientSpace::flat(dim, index)
        } else if curvature > 0.0 {
            AmbientSpace::sphere(dim, index, 1.0 / curvature.sqrt())
        } else {
            AmbientSpace::hyperbolic(dim, index, 1.0 / (-curvature).sqrt())
        }
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        match self {
            AmbientSpace::Flat { dim, .. } => *dim,
            AmbientSpace::Quadric(q) => q.dim,
            AmbientSpace::Chart(c) => c.dim(),
        }
    }

    /// Number of coordinates of a point (embedding dimension for quadrics).
    pub fn coord_dim(&self) -> usize {
        match self {
            AmbientSpace::Quadric(q) => q.dim + 1,
            _ => self.dim(),
        }
    }

    /// Constant sectional curvature, if the ambient is a space form.
    pub fn curvature(&self) -> Option<f64> {
        match self {
            AmbientSpace::Flat { .. } => Some(0.0),
            AmbientSpace::Quadric(q) => Some(q.curvature()),
            AmbientSpace::Chart(_) => None,
        }
    }

    /// Index of the flat coordinate space (flat and quadric ambients).
    pub fn flat_index(&self) -> Option<usize> {
        match self {
            AmbientSpace::Flat { index, .. } => Some(*index),
            AmbientSpace::Quadric(q) => Some(q.embedding_index()),
            AmbientSpace::Chart(_) => None,
        }
    }

    /// Short human-readable name such as `S^4_1(1)` or `R^3_1`.
    pub fn descriptor(&self) -> String {
        let idx = |s: usize| if s == 0 { String::new() } else { format!("_{s}") };
        match self {
            AmbientSpace::Flat { dim, index } => format!("R^{dim}{}", idx(*index)),
            AmbientSpace::Quadric(q) => {
                let letter = match q.kind {
                    QuadricKind::Sphere => 'S',
                    QuadricKind::Hyperbolic => 'H',
                };
                format!("{letter}^{}{}({})", q.dim, idx(q.index), fmt_radius(q.radius))
            }
            AmbientSpace::Chart(c) => format!("chart[{}]", c.coords().join(",")),
        }
    }

    /// Metric matrix in point coordinates at `at`.
    pub fn metric_at(&self, at: &[f64]) -> Result<DMatrix<f64>> {
        match self {
            AmbientSpace::Chart(c) => {
                let h = c.metric(at)?;
                check_nondegenerate(&h, at)?;
                Ok(h)
            }
            _ => {
                let k = self.flat_index().unwrap_or(0);
                let n = self.coord_dim();
                Ok(DMatrix::from_fn(n, n, |i, j| {
                    if i != j {
                        0.0
                    } else if i < k {
                        -1.0
                    } else {
                        1.0
                    }
                }))
            }
        }
    }

    /// Signed inner product; `at` is required for charts.
    pub fn inner(&self, a: &[f64], b: &[f64], at: Option<&[f64]>) -> Result<f64> {
        let n = self.coord_dim();
        for v in [a, b] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        match self {
            AmbientSpace::Chart(c) => {
                let y = at.ok_or(Error::DimensionMismatch {
                    expected: n,
                    found: 0,
                })?;
                let h = c.metric(y)?;
                let (a, b) = (DVector::from_column_slice(a), DVector::from_column_slice(b));
                Ok(a.dot(&(h * b)))
            }
            _ => Ok(flat_inner(a, b, self.flat_index().unwrap_or(0))),
        }
    }

    /// Christoffel data at `y` (charts only).
    pub fn chart_point(&self, y: &[f64]) -> Result<Option<ChartPoint>> {
        match self {
            AmbientSpace::Chart(c) => c.point(y).map(Some),
            _ => Ok(None),
        }
    }

    /// Curvature vector `R(X,Y)Z` at `at`. For quadrics the arguments must
    /// be tangent to the quadric.
    pub fn riemann(
        &self,
        at: &[f64],
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        match self {
            AmbientSpace::Chart(c) => Ok(c.point(at)?.riemann(x, y, z)),
            _ => {
                let c = self.curvature().unwrap_or(0.0);
                spaceform_curvature(c, x, y, z, self, at)
            }
        }
    }

    /// Ricci form `Ric(ξ,ξ)` and Ricci operator `Ric(ξ)` with
    /// `<Ric(Z), W> = Ric(Z, W)`.
    pub fn ricci_operator(&self, at: &[f64], xi: &DVector<f64>) -> Result<(f64, DVector<f64>)> {
        match self {
            AmbientSpace::Chart(c) => {
                let p = c.point(at)?;
                let ric = p.ricci_tensor();
                let lowered = &ric * xi;
                Ok((xi.dot(&lowered), &p.h_inv * lowered))
            }
            _ => {
                let c = self.curvature().unwrap_or(0.0);
                let k = (self.dim() as f64 - 1.0) * c;
                let xx = self.inner(xi.as_slice(), xi.as_slice(), Some(at))?;
                Ok((k * xx, xi * k))
            }
        }
    }
}

/// `R(X,Y)Z = C(<Y,Z>X − <X,Z>Y)`, the curvature of a space form of
/// sectional curvature `C`.
pub fn spaceform_curvature(
    c: f64,
    x: &DVector<f64>,
    y: &DVector<f64>,
    z: &DVector<f64>,
    amb: &AmbientSpace,
    at: &[f64],
) -> Result<DVector<f64>> {
    if c == 0.0 {
        return Ok(DVector::zeros(x.len()));
    }
    let yz = amb.inner(y.as_slice(), z.as_slice(), Some(at))?;
    let xz = amb.inner(x.as_slice(), z.as_slice(), Some(at))?;
    Ok((x * yz - y * xz) * c)
}

/// `<x,y> = −Σ_{i<s} x_i y_i + Σ_{k≥s} x_k y_k`.
pub fn flat_inner(a: &[f64], b: &[f64], index: usize) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .fold(0.0, |acc, (i, (x, y))| if i < index { acc - x * y } else { acc + x * y })
}

fn fmt_radius(r: f64) -> String {
    if (r - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15 {
        "1/√2".into()
    } else {
        format!("{r}")
    }
}
