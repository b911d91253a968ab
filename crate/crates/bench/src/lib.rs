//! Fixtures shared by the benchmarks.

use std::f64::consts::FRAC_1_SQRT_2;

use biharm::catalog::{build_product_hypersurface, build_small_hypersurface};
use biharm::{Immersion, QuadricKind};

/// `S^3(1/√2) ⊂ S^4(1)`.
pub fn critical_sphere() -> Immersion {
    build_small_hypersurface(QuadricKind::Sphere, 3, 0, FRAC_1_SQRT_2).expect("valid radius")
}

/// `H^1(1/√2) × H^2(1/√2) ⊂ H^4_1(1)`.
pub fn hyperbolic_product() -> Immersion {
    build_product_hypersurface(QuadricKind::Hyperbolic, 1, 0, 2, 0, FRAC_1_SQRT_2, FRAC_1_SQRT_2)
        .expect("valid radii")
}

/// Midpoint of the domain box.
pub fn center(im: &Immersion) -> Vec<f64> {
    im.domain().iter().map(|(a, b)| 0.5 * (a + b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_evaluate() {
        for im in [critical_sphere(), hyperbolic_product()] {
            assert!(biharm::point_geometry(&im, &center(&im)).is_ok());
        }
    }
}
