use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::subgeom::{gradient, noise_floor, point_geometry, stencil_fits, Immersion, PointGeometry};

/// Unit normal of a hypersurface from the cofactors of its tangent vectors
/// (and the position, in quadric mode). Smooth in `u`; `orientation = ±1`
/// selects `±ξ`. Returns `(ξ, <ξ,ξ>)`.
pub fn unit_normal(pg: &PointGeometry, orientation: f64) -> Result<(DVector<f64>, f64)> {
    if pg.codim != 1 {
        return Err(Error::NotAHypersurface { codim: pg.codim });
    }
    let n = pg.position.len();
    let mut cols: Vec<DVector<f64>> = (0..pg.dim()).map(|i| pg.tangent(i)).collect();
    if pg.quadric_level.is_some() {
        cols.push(pg.position.clone());
    }
    let c = DMatrix::from_columns(&cols);
    let cof = DVector::from_fn(n, |a, _| {
        let minor = c.clone().remove_row(a).determinant();
        if a % 2 == 0 {
            minor
        } else {
            -minor
        }
    });
    let raised = pg
        .ambient_metric
        .clone()
        .lu()
        .solve(&cof)
        .ok_or_else(|| Error::DegenerateMetric { at: pg.position.as_slice().to_vec() })?;
    let nn = pg.inner(&raised, &raised);
    if !(nn.abs() > 1e-12 * raised.norm_squared() * pg.ambient_metric.amax()) {
        return Err(Error::DegenerateNormalBundle { at: pg.u.clone() });
    }
    Ok((raised * (orientation / nn.abs().sqrt()), nn.signum()))
}

/// The terms of the hypersurface biharmonic system
///
/// ```text
/// Δf − ε f(|A|² − Ric(ξ,ξ)) = 0
/// A(grad f) + ε (m/2) f grad f − f Ric(ξ)⊤ = 0
/// ```
///
/// kept separately so the dependence on `ε = <ξ,ξ>` can be inspected.
/// Vectors are coefficients in the coordinate tangent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfaceTerms {
    pub laplacian: f64,
    /// `−ε f |A|²`.
    pub shape_term: f64,
    /// `ε f Ric(ξ,ξ)`.
    pub curvature_term: f64,
    /// `A(grad f)`.
    pub shape_grad: DVector<f64>,
    /// `ε (m/2) f grad f`.
    pub f_grad_f: DVector<f64>,
    /// `−f Ric(ξ)⊤`.
    pub ricci_tangential: DVector<f64>,
}

impl HypersurfaceTerms {
    pub fn new(
        eps: f64,
        f: f64,
        laplacian: f64,
        a: &DMatrix<f64>,
        grad_f: &DVector<f64>,
        ric_xi_xi: f64,
        ric_tangential: &DVector<f64>,
    ) -> Self {
        let m = a.nrows() as f64;
        let a_sq = (a * a).trace();
        HypersurfaceTerms {
            laplacian,
            shape_term: -(eps * f) * a_sq,
            curvature_term: (eps * f) * ric_xi_xi,
            shape_grad: a * grad_f,
            f_grad_f: grad_f * ((eps * f) * (m / 2.0)),
            ricci_tangential: ric_tangential * -f,
        }
    }

    /// Terms for an ambient space form of curvature `c`, where
    /// `Ric(ξ,ξ) = m c ε` and `Ric(ξ)` is normal.
    pub fn space_form(
        eps: f64,
        f: f64,
        laplacian: f64,
        a: &DMatrix<f64>,
        grad_f: &DVector<f64>,
        c: f64,
    ) -> Self {
        let m = a.nrows();
        let ric = (m as f64 * c) * eps;
        HypersurfaceTerms::new(eps, f, laplacian, a, grad_f, ric, &DVector::zeros(m))
    }

    pub fn scalar(&self) -> f64 {
        self.laplacian + self.shape_term + self.curvature_term
    }

    pub fn vector(&self) -> DVector<f64> {
        &self.shape_grad + &self.f_grad_f + &self.ricci_tangential
    }
}

/// Hypersurface residuals at one point.
#[derive(Debug, Clone)]
pub struct HypersurfaceResidual {
    pub scalar: f64,
    /// Tangential equation as an ambient vector.
    pub vector: DVector<f64>,
    /// `H = f ξ`.
    pub f: f64,
    pub eps: f64,
    pub xi: DVector<f64>,
    /// `|A_ξ|² = tr(A_ξ²)`.
    pub a_norm_sq: f64,
    pub terms: HypersurfaceTerms,
}

/// Hypersurface residuals with normal `+ξ`.
pub fn hypersurface_residual(im: &Immersion, u: &[f64], step: f64) -> Result<HypersurfaceResidual> {
    hypersurface_residual_oriented(im, u, step, 1.0)
}

/// Hypersurface residuals with the normal `orientation · ξ`.
pub fn hypersurface_residual_oriented(
    im: &Immersion,
    u: &[f64],
    step: f64,
    orientation: f64,
) -> Result<HypersurfaceResidual> {
    let pg = point_geometry(im, u)?;
    let (xi, eps) = unit_normal(&pg, orientation)?;
    if !stencil_fits(im.domain(), u, 2.0 * step) {
        return Err(Error::StencilOutsideDomain { at: u.to_vec() });
    }
    let m = pg.dim();
    let floor = noise_floor(pg.scale());
    let f_at = |v: &[f64]| -> Result<DVector<f64>> {
        let p = point_geometry(im, v)?;
        let (x, e) = unit_normal(&p, orientation)?;
        Ok(DVector::from_element(1, e * p.inner(&p.mean_curvature, &x)))
    };
    let df_at = |v: &[f64]| -> Result<DVector<f64>> {
        let g = gradient(&f_at, v, step, floor)?;
        Ok(DVector::from_fn(m, |i, _| g[i][0]))
    };
    let f = f_at(u)?[0];
    let df = df_at(u)?;
    let ddf = gradient(&df_at, u, step, floor)?;
    let mut laplacian = 0.0;
    for i in 0..m {
        for j in 0..m {
            let gij = pg.metric_inv[(i, j)];
            if gij == 0.0 {
                continue;
            }
            let mut hess = ddf[i][j];
            for k in 0..m {
                hess -= pg.induced_christoffel[k][(i, j)] * df[k];
            }
            laplacian += gij * hess;
        }
    }
    let a = pg.shape_operator(&xi);
    let grad = &pg.metric_inv * &df;
    let terms = match (&pg.chart, pg.curvature) {
        (None, Some(c)) => HypersurfaceTerms::space_form(eps, f, laplacian, &a, &grad, c),
        _ => {
            let (ric_xx, ric) = pg.ricci(&xi);
            HypersurfaceTerms::new(eps, f, laplacian, &a, &grad, ric_xx, &pg.tangent_coords(&ric))
        }
    };
    Ok(HypersurfaceResidual {
        scalar: terms.scalar(),
        vector: &pg.jacobian * terms.vector(),
        f,
        eps,
        xi,
        a_norm_sq: (&a * &a).trace(),
        terms,
    })
}

/// Residuals of a space-like hypersurface with time-like normal.
pub fn spacelike_residual(im: &Immersion, u: &[f64], step: f64) -> Result<HypersurfaceResidual> {
    let pg = point_geometry(im, u)?;
    if pg.signature.neg != 0 {
        return Err(Error::NotSpacelike {
            reason: format!("induced signature has {} time-like directions", pg.signature.neg),
        });
    }
    let (_, eps) = unit_normal(&pg, 1.0)?;
    if eps > 0.0 {
        return Err(Error::NotSpacelike {
            reason: "unit normal is space-like".into(),
        });
    }
    hypersurface_residual(im, u, step)
}
