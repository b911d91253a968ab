//! Submanifold invariants of immersions: induced metric, frames, second
//! fundamental form, mean curvature, shape operators, normal connection and
//! normal Laplacian.
//!
//! Signed traces are contractions with `g^{ij}` in parameter coordinates.
//! Orders one and two of the immersion are symbolic; the outer derivatives
//! inside `∇⊥` and `Δ⊥` are central differences with one Richardson step.

mod connection;
mod fd;
mod frame;
mod immersion;
mod point;

pub use connection::{
    codazzi_defect, mean_curvature_jet, normal_connection, normal_derivatives, normal_laplacian,
    MeanCurvatureJet,
};
pub use fd::{
    fit_stencil, gradient, noise_floor, richardson, stencil_fits, DEFAULT_STEP, NOISE_FLOOR_ULPS,
};
pub use frame::{metric_signature, pivoted_frame, Frame, OrthonormalFrame, PIVOT_TOL};
pub use immersion::{Immersion, Jet, SamplePolicy, DEFAULT_SAMPLES};
pub use point::{point_geometry, PointGeometry, QUADRIC_TOL};

use crate::error::Result;

/// Orthonormal tangent and normal frames at a point.
pub fn orthonormal_frames(pg: &PointGeometry) -> Result<(OrthonormalFrame, OrthonormalFrame)> {
    Ok((pg.tangent_frame.clone(), pg.normal_frame()?))
}
