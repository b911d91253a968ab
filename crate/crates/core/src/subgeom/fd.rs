//! Central differences with one Richardson extrapolation step.

use nalgebra::DVector;

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;

/// Stencil values whose max-norm is within this many ulps of the field scale
/// are treated as exact zeros.
pub const NOISE_FLOOR_ULPS: f64 = 64.0;

pub fn noise_floor(scale: f64) -> f64 {
    NOISE_FLOOR_ULPS * f64::EPSILON * scale
}

/// `∂_dir f(u)` as `(4 D(h/2) - D(h)) / 3` with `D(h)` the central quotient.
///
/// If every stencil value has max-norm at most `floor` the derivative is
/// exactly zero.
pub fn richardson<F>(f: &F, u: &[f64], dir: usize, h: f64, floor: f64) -> Result<DVector<f64>>
where
    F: Fn(&[f64]) -> Result<DVector<f64>> + ?Sized,
{
    let at = |t: f64| {
        let mut v = u.to_vec();
        v[dir] += t;
        f(&v)
    };
    let (p1, m1) = (at(h)?, at(-h)?);
    let (p2, m2) = (at(0.5 * h)?, at(-0.5 * h)?);
    if [&p1, &m1, &p2, &m2].iter().all(|v| v.amax() <= floor) {
        return Ok(DVector::zeros(p1.len()));
    }
    let d1 = (p1 - m1) / (2.0 * h);
    let d2 = (p2 - m2) / h;
    Ok((d2 * 4.0 - d1) / 3.0)
}

/// `[∂_0 f(u), ..., ∂_{m-1} f(u)]`.
pub fn gradient<F>(f: &F, u: &[f64], h: f64, floor: f64) -> Result<Vec<DVector<f64>>>
where
    F: Fn(&[f64]) -> Result<DVector<f64>> + ?Sized,
{
    (0..u.len()).map(|i| richardson(f, u, i, h, floor)).collect()
}

/// Whether all stencil points within `reach` of `u` lie in the box.
pub fn stencil_fits(domain: &[(f64, f64)], u: &[f64], reach: f64) -> bool {
    u.iter()
        .zip(domain)
        .all(|(x, (lo, hi))| *lo <= x - reach && x + reach <= *hi)
}

/// Moves `u` so that a stencil of radius `reach` fits, shifting offending
/// coordinates to `4 * reach` from the boundary. Returns the point used and a
/// warning if it moved.
pub fn fit_stencil(
    domain: &[(f64, f64)],
    u: &[f64],
    reach: f64,
) -> Result<(Vec<f64>, Option<String>)> {
    if stencil_fits(domain, u, reach) {
        return Ok((u.to_vec(), None));
    }
    let margin = 4.0 * reach;
    let mut out = u.to_vec();
    for (x, &(lo, hi)) in out.iter_mut().zip(domain) {
        if hi - lo < 2.0 * margin {
            return Err(Error::StencilOutsideDomain { at: u.to_vec() });
        }
        if *x - reach < lo {
            *x = lo + margin;
        } else if *x + reach > hi {
            *x = hi - margin;
        }
    }
    let warning = format!("stencil left the domain at u = {u:?}; evaluated at {out:?}");
    Ok((out, Some(warning)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(v: f64) -> DVector<f64> {
        DVector::from_element(1, v)
    }

    #[test]
    fn richardson_is_fourth_order() {
        let f = |u: &[f64]| Ok(scalar(u[0].sin() * u[1].exp()));
        let u = [0.7, 0.2];
        let exact = 0.7f64.cos() * 0.2f64.exp();
        let e1 = (richardson(&f, &u, 0, 1e-2, 0.0).unwrap()[0] - exact).abs();
        let e2 = (richardson(&f, &u, 0, 5e-3, 0.0).unwrap()[0] - exact).abs();
        assert!(e1 < 1e-9);
        assert!(e2 < e1 / 10.0, "{e1} {e2}");
    }

    #[test]
    fn noise_below_floor_is_zero() {
        let f = |u: &[f64]| Ok(scalar(1e-17 * (u[0] * 1e6).sin()));
        assert_eq!(richardson(&f, &[0.3], 0, 1e-3, noise_floor(1.0)).unwrap()[0], 0.0);
    }

    #[test]
    fn stencil_shifting() {
        let dom = [(0.0, 1.0), (0.0, 1.0)];
        let (u, w) = fit_stencil(&dom, &[0.5, 0.5], 1e-3).unwrap();
        assert_eq!((u, w), (vec![0.5, 0.5], None));
        let (u, w) = fit_stencil(&dom, &[0.0, 0.9995], 1e-3).unwrap();
        assert_eq!(u, vec![4e-3, 1.0 - 4e-3]);
        assert!(w.is_some());
        assert!(matches!(
            fit_stencil(&[(0.0, 1e-3)], &[0.0], 1e-3),
            Err(Error::StencilOutsideDomain { .. })
        ));
    }
}
