use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::subgeom::{
    gradient, mean_curvature_jet, noise_floor, point_geometry, stencil_fits, Immersion,
    MeanCurvatureJet, PointGeometry,
};
use crate::Error;

/// Bitension residual at one point, split into normal and tangential parts.
#[derive(Debug, Clone)]
pub struct Bitension {
    /// `Δ⊥H + g^{ij} B(A_H ∂_i, ∂_j) + (curvature trace)⊥`.
    pub normal: DVector<f64>,
    /// `g^{ij} A_{∇⊥_i H} ∂_j + (m/4) grad<H,H> + (curvature trace)⊤`.
    pub tangential: DVector<f64>,
    pub h_norm: f64,
    pub h_inner: f64,
    /// `max(1, |H|^2, |B|^2)`.
    pub normalizer: f64,
}

impl Bitension {
    pub fn normal_norm(&self) -> f64 {
        self.normal.norm() / self.normalizer
    }

    pub fn tangential_norm(&self) -> f64 {
        self.tangential.norm() / self.normalizer
    }
}

/// Assembles the bitension residual from a mean-curvature jet.
pub fn bitension_from_jet(jet: &MeanCurvatureJet) -> Bitension {
    let pg = &jet.geometry;
    let m = pg.dim();
    let n = pg.position.len();
    let h = &pg.mean_curvature;
    let a_h = pg.shape_operator(h);

    let mut shape_trace = DVector::zeros(n);
    let mut weingarten = DVector::zeros(n);
    let a_w: Vec<DMatrix<f64>> = jet.w.iter().map(|w| pg.shape_operator(w)).collect();
    for i in 0..m {
        for j in 0..m {
            let gij = pg.metric_inv[(i, j)];
            if gij == 0.0 {
                continue;
            }
            for k in 0..m {
                shape_trace += pg.b(k, j) * (a_h[(k, i)] * gij);
            }
            weingarten += &pg.jacobian * a_w[i].column(j) * gij;
        }
    }

    let d_hh = DVector::from_fn(m, |l, _| 2.0 * pg.inner(&jet.w[l], h));
    let grad_hh = &pg.jacobian * (&pg.metric_inv * d_hh);

    let (curv_normal, curv_tangential) = match (&pg.chart, pg.curvature) {
        (None, Some(c)) => (h * (-(m as f64) * c), DVector::zeros(n)),
        _ => {
            let t = pg.curvature_trace(h);
            (pg.normal_part(&t), pg.tangent_part(&t))
        }
    };

    let normal = &jet.laplacian + shape_trace + curv_normal;
    let tangential = weingarten + grad_hh * (m as f64 / 4.0) + curv_tangential;
    Bitension {
        normal,
        tangential,
        h_norm: pg.h_norm(),
        h_inner: pg.h_inner,
        normalizer: normalizer(pg),
    }
}

/// `max(1, |H|^2, |B|^2)` with `|H|` the coordinate norm.
pub fn normalizer(pg: &PointGeometry) -> f64 {
    1f64.max(pg.h_norm().powi(2)).max(pg.b_norm_sq())
}

/// Normal and tangential bitension residuals at `u`.
pub fn bitension_residual(im: &Immersion, u: &[f64], step: f64) -> Result<Bitension> {
    Ok(bitension_from_jet(&mean_curvature_jet(im, u, step)?))
}

/// `τ₂ = g^{ij}(∇_i ∇_j τ - Γ^k_{ij} ∇_k τ) - g^{ij} R(∂_i, τ) ∂_j` with
/// `τ = mH`, using the pull-back connection directly and no normal/tangential
/// split.
pub fn bitension_direct(im: &Immersion, u: &[f64], step: f64) -> Result<DVector<f64>> {
    if !stencil_fits(im.domain(), u, 2.0 * step) {
        return Err(Error::StencilOutsideDomain { at: u.to_vec() });
    }
    let pg = point_geometry(im, u)?;
    let m = pg.dim();
    let n = pg.position.len();
    let mf = m as f64;
    let floor = noise_floor(pg.scale());
    let covariant = |p: &PointGeometry, i: usize, dv: &DVector<f64>, v: &DVector<f64>| {
        p.ambient_tangent_part(&(dv + p.ambient_christoffel(&p.tangent(i), v)))
    };
    let tau = |v: &[f64]| Ok(point_geometry(im, v)?.mean_curvature * mf);
    let w_at = |v: &[f64]| -> Result<DVector<f64>> {
        let p = point_geometry(im, v)?;
        let t = &p.mean_curvature * mf;
        let d = gradient(&tau, v, step, floor)?;
        let mut out = DVector::zeros(m * n);
        for j in 0..m {
            out.rows_mut(j * n, n).copy_from(&covariant(&p, j, &d[j], &t));
        }
        Ok(out)
    };
    let w0 = w_at(u)?;
    let w: Vec<DVector<f64>> = (0..m).map(|j| w0.rows(j * n, n).into_owned()).collect();
    let dw = gradient(&w_at, u, step, floor)?;
    let mut out = DVector::zeros(n);
    for i in 0..m {
        for j in 0..m {
            let gij = pg.metric_inv[(i, j)];
            if gij == 0.0 {
                continue;
            }
            let mut second = covariant(&pg, i, &dw[i].rows(j * n, n).into_owned(), &w[j]);
            for (k, wk) in w.iter().enumerate() {
                second -= wk * pg.induced_christoffel[k][(i, j)];
            }
            out += second * gij;
        }
    }
    out -= pg.curvature_trace(&(&pg.mean_curvature * mf));
    Ok(out)
}

/// Frobenius norm of `A_H - <H,H> I` in the coordinate basis, divided by
/// `max(1, |<H,H>|)`.
pub fn pseudo_umbilical_residual(pg: &PointGeometry) -> f64 {
    let m = pg.dim();
    let a = pg.shape_operator(&pg.mean_curvature) - DMatrix::identity(m, m) * pg.h_inner;
    a.norm() / pg.h_inner.abs().max(1.0)
}
