//! Normal connection, normal Laplacian and the Codazzi defect by finite
//! differences of pointwise-exact fields.

use nalgebra::DVector;

use super::fd::{gradient, noise_floor, stencil_fits};
use super::immersion::Immersion;
use super::point::{point_geometry, PointGeometry};
use crate::error::{Error, Result};

fn stack(vs: &[DVector<f64>]) -> DVector<f64> {
    let n: usize = vs.iter().map(|v| v.len()).sum();
    let mut out = DVector::zeros(n);
    let mut at = 0;
    for v in vs {
        out.rows_mut(at, v.len()).copy_from(v);
        at += v.len();
    }
    out
}

fn unstack(v: &DVector<f64>, n: usize) -> Vec<DVector<f64>> {
    (0..v.len() / n).map(|k| v.rows(k * n, n).into_owned()).collect()
}

fn require_stencil(im: &Immersion, u: &[f64], reach: f64) -> Result<()> {
    if u.len() == im.dim() && !stencil_fits(im.domain(), u, reach) {
        return Err(Error::StencilOutsideDomain { at: u.to_vec() });
    }
    Ok(())
}

/// `∇⊥_i V = P_N(∂_i V + Γ(∂_i φ, V))`.
fn covariant(pg: &PointGeometry, i: usize, dv: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
    pg.normal_part(&(dv + pg.ambient_christoffel(&pg.tangent(i), v)))
}

/// `result[i][f] = ∇⊥_i V_f` for the normal fields `V_f` returned by `fields`.
pub fn normal_derivatives<F>(
    im: &Immersion,
    u: &[f64],
    fields: &F,
    step: f64,
) -> Result<(PointGeometry, Vec<Vec<DVector<f64>>>)>
where
    F: Fn(&PointGeometry) -> Vec<DVector<f64>> + ?Sized,
{
    require_stencil(im, u, step)?;
    let pg = point_geometry(im, u)?;
    let n = pg.position.len();
    let values = fields(&pg);
    let floor = noise_floor(pg.scale());
    let stacked = |v: &[f64]| Ok(stack(&fields(&point_geometry(im, v)?)));
    let grads = gradient(&stacked, u, step, floor)?;
    let out = grads
        .iter()
        .enumerate()
        .map(|(i, g)| {
            unstack(g, n)
                .iter()
                .zip(&values)
                .map(|(dv, v)| covariant(&pg, i, dv, v))
                .collect()
        })
        .collect();
    Ok((pg, out))
}

/// `∇⊥_i η` for each coordinate direction `i`.
pub fn normal_connection<F>(im: &Immersion, u: &[f64], field: &F, step: f64) -> Result<Vec<DVector<f64>>>
where
    F: Fn(&PointGeometry) -> DVector<f64> + ?Sized,
{
    let (_, d) = normal_derivatives(im, u, &|pg: &PointGeometry| vec![field(pg)], step)?;
    Ok(d.into_iter().map(|mut v| v.remove(0)).collect())
}

/// First and second normal derivatives of the mean curvature at one point.
#[derive(Debug, Clone)]
pub struct MeanCurvatureJet {
    pub geometry: PointGeometry,
    /// `w[j] = ∇⊥_j H`.
    pub w: Vec<DVector<f64>>,
    /// `Δ⊥H = -g^{ij}(∇⊥_i ∇⊥_j H - Γ^k_{ij} ∇⊥_k H)`.
    pub laplacian: DVector<f64>,
}

/// Computes `∇⊥H` and `Δ⊥H` at `u` by nested finite differences.
pub fn mean_curvature_jet(im: &Immersion, u: &[f64], step: f64) -> Result<MeanCurvatureJet> {
    require_stencil(im, u, 2.0 * step)?;
    let pg = point_geometry(im, u)?;
    let m = pg.dim();
    let n = pg.position.len();
    let floor = noise_floor(pg.scale());
    let h_field = |v: &[f64]| Ok(point_geometry(im, v)?.mean_curvature);
    let w_at = |v: &[f64]| -> Result<DVector<f64>> {
        let p = point_geometry(im, v)?;
        let dh = gradient(&h_field, v, step, floor)?;
        let w: Vec<DVector<f64>> =
            (0..m).map(|j| covariant(&p, j, &dh[j], &p.mean_curvature)).collect();
        Ok(stack(&w))
    };
    let w = unstack(&w_at(u)?, n);
    let dw = gradient(&w_at, u, step, floor)?;
    let mut laplacian = DVector::zeros(n);
    for i in 0..m {
        let dwi = unstack(&dw[i], n);
        for j in 0..m {
            let gij = pg.metric_inv[(i, j)];
            if gij == 0.0 {
                continue;
            }
            let mut second = covariant(&pg, i, &dwi[j], &w[j]);
            for (k, wk) in w.iter().enumerate() {
                second -= wk * pg.induced_christoffel[k][(i, j)];
            }
            laplacian -= second * gij;
        }
    }
    Ok(MeanCurvatureJet {
        geometry: pg,
        w,
        laplacian,
    })
}

/// The normal Laplacian `Δ⊥H` at `u`.
pub fn normal_laplacian(im: &Immersion, u: &[f64], step: f64) -> Result<DVector<f64>> {
    mean_curvature_jet(im, u, step).map(|j| j.laplacian)
}

/// Max-norm of `(∇_i B)(j,k) - (∇_j B)(i,k) - (R(∂_i,∂_j)∂_k)⊥` over all
/// index triples, divided by `PointGeometry::scale`.
pub fn codazzi_defect(im: &Immersion, u: &[f64], step: f64) -> Result<f64> {
    let (pg, d) = normal_derivatives(im, u, &|pg: &PointGeometry| pg.second_fundamental.clone(), step)?;
    let m = pg.dim();
    let nabla_b = |i: usize, j: usize, k: usize| {
        let mut v = d[i][j * m + k].clone();
        for l in 0..m {
            v -= pg.b(l, k) * pg.induced_christoffel[l][(i, j)];
            v -= pg.b(j, l) * pg.induced_christoffel[l][(i, k)];
        }
        v
    };
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let curv = pg.normal_part(&pg.riemann(&pg.tangent(i), &pg.tangent(j), &pg.tangent(k)));
                let defect = nabla_b(i, j, k) - nabla_b(j, i, k) - curv;
                worst = worst.max(defect.amax());
            }
        }
    }
    Ok(worst / pg.scale())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::AmbientSpace;
    use crate::subgeom::fd::DEFAULT_STEP;

    #[test]
    fn constant_normal_along_a_plane_is_parallel() {
        let im = Immersion::parse(
            &["u", "v"],
            AmbientSpace::flat(3, 0).unwrap(),
            &["u", "v", "0"],
            &[(-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap();
        let eta = |_: &PointGeometry| DVector::from_vec(vec![0.0, 0.0, 1.0]);
        let d = normal_connection(&im, &[0.1, 0.2], &eta, DEFAULT_STEP).unwrap();
        assert!(d.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn graph_of_paraboloid_normal_laplacian_is_normal() {
        let im = Immersion::parse(
            &["u", "v"],
            AmbientSpace::flat(3, 0).unwrap(),
            &["u", "v", "(u^2 + v^2)/2"],
            &[(-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap();
        let jet = mean_curvature_jet(&im, &[0.2, -0.1], DEFAULT_STEP).unwrap();
        let t = jet.geometry.tangent_part(&jet.laplacian);
        assert!(t.amax() < 1e-8 * jet.laplacian.amax().max(1.0));
    }

    #[test]
    fn stencil_must_fit() {
        let im = Immersion::parse(
            &["u"],
            AmbientSpace::flat(2, 0).unwrap(),
            &["u", "u^2"],
            &[(0.0, 1.0)],
        )
        .unwrap();
        assert!(matches!(
            normal_laplacian(&im, &[0.0005], DEFAULT_STEP),
            Err(Error::StencilOutsideDomain { .. })
        ));
    }
}
