use nalgebra::{DMatrix, DVector};

use super::frame::{pivoted_frame, OrthonormalFrame, PIVOT_TOL};
use super::immersion::Immersion;
use crate::ambient::{AmbientSpace, ChartPoint, Signature};
use crate::error::{Error, Result};

/// Absolute tolerance on `|<x,x> - level|` relative to `max(1, r^2)`.
pub const QUADRIC_TOL: f64 = 1e-8;

/// First- and second-order invariants of an immersion at one parameter point.
///
/// Vectors are in ambient coordinates. In quadric mode the position direction
/// is projected out of the normal space, so `second_fundamental` and
/// `mean_curvature` are those of the submanifold inside the space form.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub u: Vec<f64>,
    pub position: DVector<f64>,
    /// Columns `∂_i φ`.
    pub jacobian: DMatrix<f64>,
    /// `hessian[i * m + j] = ∂_i ∂_j φ`.
    pub hessian: Vec<DVector<f64>>,
    pub metric: DMatrix<f64>,
    pub metric_inv: DMatrix<f64>,
    pub signature: Signature,
    pub tangent_frame: OrthonormalFrame,
    pub ambient_metric: DMatrix<f64>,
    pub chart: Option<ChartPoint>,
    /// `<x,x>` in quadric mode.
    pub quadric_level: Option<f64>,
    /// Projector onto the normal space of the submanifold in the ambient.
    pub normal_projector: DMatrix<f64>,
    /// `second_fundamental[i * m + j] = B(∂_i, ∂_j)`.
    pub second_fundamental: Vec<DVector<f64>>,
    pub mean_curvature: DVector<f64>,
    /// `<H, H>`.
    pub h_inner: f64,
    /// `induced_christoffel[k][(i, j)] = Γ^k_{ij}` of the induced metric.
    pub induced_christoffel: Vec<DMatrix<f64>>,
    pub codim: usize,
    /// Intrinsic ambient dimension.
    pub ambient_dim: usize,
    /// Sectional curvature of a space-form ambient.
    pub curvature: Option<f64>,
}

/// Computes all pointwise invariants of `im` at `u`.
pub fn point_geometry(im: &Immersion, u: &[f64]) -> Result<PointGeometry> {
    let amb = im.ambient();
    let jet = im.jet(u)?;
    let x = jet.position;
    let jac = jet.jacobian;
    let m = im.dim();
    let n = x.len();

    let quadric_level = match amb {
        AmbientSpace::Quadric(q) => {
            let residual = q.residual(x.as_slice());
            if residual.abs() > QUADRIC_TOL * q.level().abs().max(1.0) {
                return Err(Error::OffQuadric {
                    at: u.to_vec(),
                    residual,
                });
            }
            Some(q.level())
        }
        _ => None,
    };
    let chart = amb.chart_point(x.as_slice())?;
    let ambient_metric = match &chart {
        Some(c) => c.h.clone(),
        None => amb.metric_at(x.as_slice())?,
    };

    let sv = jac.singular_values();
    let smax = sv.max();
    if smax == 0.0 || sv.min() <= PIVOT_TOL * smax {
        return Err(Error::RankDeficientJacobian { at: u.to_vec() });
    }

    let g_jac = &ambient_metric * &jac;
    let metric = jac.transpose() * &g_jac;
    let metric = (&metric + metric.transpose()) * 0.5;
    let degenerate = || Error::DegenerateInducedMetric { at: u.to_vec() };
    let frame = pivoted_frame(&metric, m, PIVOT_TOL * smax * smax).ok_or_else(degenerate)?;
    let metric_inv = metric.clone().try_inverse().ok_or_else(degenerate)?;
    let signature = frame.signature();
    let tangent_frame = OrthonormalFrame::from_frame(&jac, &frame);

    let mut normal_projector = DMatrix::identity(n, n) - &jac * &metric_inv * g_jac.transpose();
    if let Some(level) = quadric_level {
        normal_projector -= &x * (&ambient_metric * &x).transpose() / level;
    }

    let christoffel = |a: &DVector<f64>, b: &DVector<f64>| match &chart {
        Some(c) => c.christoffel_contract(a, b),
        None => DVector::zeros(n),
    };
    let mut second_fundamental = vec![DVector::zeros(n); m * m];
    let mut induced_christoffel = vec![DMatrix::zeros(m, m); m];
    let mut mean_curvature = DVector::zeros(n);
    for i in 0..m {
        for j in i..m {
            let cov = &jet.hessian[i * m + j]
                + christoffel(&jac.column(i).into_owned(), &jac.column(j).into_owned());
            let b = &normal_projector * &cov;
            let tan = &metric_inv * (g_jac.transpose() * &cov);
            for k in 0..m {
                induced_christoffel[k][(i, j)] = tan[k];
                induced_christoffel[k][(j, i)] = tan[k];
            }
            let w = if i == j { metric_inv[(i, i)] } else { 2.0 * metric_inv[(i, j)] };
            mean_curvature += &b * w;
            second_fundamental[j * m + i] = b.clone();
            second_fundamental[i * m + j] = b;
        }
    }
    mean_curvature /= m as f64;
    let h_inner = mean_curvature.dot(&(&ambient_metric * &mean_curvature));
    let codim = n - m - usize::from(quadric_level.is_some());

    Ok(PointGeometry {
        u: u.to_vec(),
        position: x,
        jacobian: jac,
        hessian: jet.hessian,
        metric,
        metric_inv,
        signature,
        tangent_frame,
        ambient_metric,
        chart,
        quadric_level,
        normal_projector,
        second_fundamental,
        mean_curvature,
        h_inner,
        induced_christoffel,
        codim,
        ambient_dim: amb.dim(),
        curvature: amb.curvature(),
    })
}

impl PointGeometry {
    pub fn dim(&self) -> usize {
        self.jacobian.ncols()
    }

    pub fn b(&self, i: usize, j: usize) -> &DVector<f64> {
        &self.second_fundamental[i * self.dim() + j]
    }

    pub fn tangent(&self, i: usize) -> DVector<f64> {
        self.jacobian.column(i).into_owned()
    }

    pub fn inner(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        a.dot(&(&self.ambient_metric * b))
    }

    /// Coefficients `c` with `P_T v = Σ c_k ∂_k φ`.
    pub fn tangent_coords(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.metric_inv * (self.jacobian.transpose() * (&self.ambient_metric * v))
    }

    pub fn tangent_part(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.jacobian * self.tangent_coords(v)
    }

    pub fn normal_part(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.normal_projector * v
    }

    /// Projection onto the tangent space of the space form (identity unless
    /// in quadric mode).
    pub fn ambient_tangent_part(&self, v: &DVector<f64>) -> DVector<f64> {
        match self.quadric_level {
            Some(level) => v - &self.position * (self.inner(v, &self.position) / level),
            None => v.clone(),
        }
    }

    /// Ambient Christoffel correction `Γ(X, Y)` (zero in flat coordinates).
    pub fn ambient_christoffel(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        match &self.chart {
            Some(c) => c.christoffel_contract(x, y),
            None => DVector::zeros(x.len()),
        }
    }

    /// Shape operator `(A_η)^k_i = g^{kj} <B_ij, η>` in the coordinate basis.
    pub fn shape_operator(&self, eta: &DVector<f64>) -> DMatrix<f64> {
        let m = self.dim();
        let lowered = DMatrix::from_fn(m, m, |i, j| self.inner(self.b(i, j), eta));
        &self.metric_inv * lowered
    }

    /// Ambient curvature `R(X,Y)Z` at the image point.
    pub fn riemann(&self, x: &DVector<f64>, y: &DVector<f64>, z: &DVector<f64>) -> DVector<f64> {
        match (&self.chart, self.curvature) {
            (Some(c), _) => c.riemann(x, y, z),
            (None, Some(c)) if c != 0.0 => (x * self.inner(y, z) - y * self.inner(x, z)) * c,
            _ => DVector::zeros(x.len()),
        }
    }

    /// `(Ric(ξ,ξ), Ric(ξ))` of the ambient at the image point.
    pub fn ricci(&self, xi: &DVector<f64>) -> (f64, DVector<f64>) {
        match (&self.chart, self.curvature) {
            (Some(c), _) => {
                let lowered = c.ricci_tensor() * xi;
                (xi.dot(&lowered), &c.h_inv * lowered)
            }
            (None, Some(c)) => {
                let k = (self.ambient_dim as f64 - 1.0) * c;
                (k * self.inner(xi, xi), xi * k)
            }
            (None, None) => (0.0, DVector::zeros(xi.len())),
        }
    }

    /// Signed trace `g^{ij} R(∂_i, V) ∂_j`.
    pub fn curvature_trace(&self, v: &DVector<f64>) -> DVector<f64> {
        let m = self.dim();
        let mut out = DVector::zeros(v.len());
        for i in 0..m {
            for j in 0..m {
                let w = self.metric_inv[(i, j)];
                if w != 0.0 {
                    out += self.riemann(&self.tangent(i), v, &self.tangent(j)) * w;
                }
            }
        }
        out
    }

    /// Euclidean coordinate norm of `H`.
    pub fn h_norm(&self) -> f64 {
        self.mean_curvature.norm()
    }

    /// `|g^{ik} g^{jl} <B_ij, B_kl>|`.
    pub fn b_norm_sq(&self) -> f64 {
        let m = self.dim();
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let w = self.metric_inv[(i, k)] * self.metric_inv[(j, l)];
                        if w != 0.0 {
                            acc += w * self.inner(self.b(i, j), self.b(k, l));
                        }
                    }
                }
            }
        }
        acc.abs()
    }

    /// Magnitude scale for noise floors: `max(1, |x|, |B_ij|)` in max-norm.
    pub fn scale(&self) -> f64 {
        self.second_fundamental
            .iter()
            .map(|b| b.amax())
            .fold(self.position.amax().max(1.0), f64::max)
    }

    /// Orthonormal frame of the normal space.
    pub fn normal_frame(&self) -> Result<OrthonormalFrame> {
        let p = &self.normal_projector;
        let gram = p.transpose() * &self.ambient_metric * p;
        let gram = (&gram + gram.transpose()) * 0.5;
        let tol = PIVOT_TOL * gram.amax().max(f64::MIN_POSITIVE);
        let frame = pivoted_frame(&gram, self.codim, tol)
            .ok_or_else(|| Error::DegenerateNormalBundle { at: self.u.clone() })?;
        Ok(OrthonormalFrame::from_frame(p, &frame))
    }

    /// Tension `Σ ε_a B(e_a, e_a)` over the orthonormal tangent frame.
    pub fn tension_from_frame(&self) -> DVector<f64> {
        let f = &self.tangent_frame;
        let n = self.position.len();
        let mut out = DVector::zeros(n);
        let m = self.dim();
        for (a, e) in f.vectors.iter().enumerate() {
            let c = self.tangent_coords(e);
            let mut acc = DVector::zeros(n);
            for i in 0..m {
                for j in 0..m {
                    acc += self.b(i, j) * (c[i] * c[j]);
                }
            }
            out += acc * f.eps[a];
        }
        out
    }

    /// Tension `g^{ij}(∇^N_i ∂_j φ - Γ^k_{ij} ∂_k φ)` with `Γ` taken from the
    /// derivatives of the induced metric, without any normal projection.
    pub fn tension_from_metric_derivatives(&self) -> DVector<f64> {
        let m = self.dim();
        let n = self.position.len();
        let jac = &self.jacobian;
        let gm = &self.ambient_metric;
        // dg[k][(i, j)] = ∂_k g_ij
        let dg: Vec<DMatrix<f64>> = (0..m)
            .map(|k| {
                DMatrix::from_fn(m, m, |i, j| {
                    let mut v = self.hessian[k * m + i].dot(&(gm * jac.column(j)))
                        + jac.column(i).dot(&(gm * &self.hessian[k * m + j]));
                    if let Some(c) = &self.chart {
                        let dir = jac.column(k);
                        for (a, dh) in c.dh.iter().enumerate() {
                            v += dir[a] * jac.column(i).dot(&(dh * jac.column(j)));
                        }
                    }
                    v
                })
            })
            .collect();
        let mut out = DVector::zeros(n);
        for i in 0..m {
            for j in 0..m {
                let w = self.metric_inv[(i, j)];
                if w == 0.0 {
                    continue;
                }
                let mut cov = &self.hessian[i * m + j]
                    + self.ambient_christoffel(&self.tangent(i), &self.tangent(j));
                if let Some(level) = self.quadric_level {
                    cov += &self.position * (self.metric[(i, j)] / level);
                }
                for k in 0..m {
                    let mut gamma = 0.0;
                    for l in 0..m {
                        gamma += 0.5
                            * self.metric_inv[(k, l)]
                            * (dg[i][(l, j)] + dg[j][(l, i)] - dg[l][(i, j)]);
                    }
                    cov -= jac.column(k) * gamma;
                }
                out += cov * w;
            }
        }
        out
    }
}
