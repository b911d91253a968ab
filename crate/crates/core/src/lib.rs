//! Biharmonicity of pseudo-Riemannian submanifolds given as parametrized
//! immersions.
//!
//! The [`expr`] module parses and differentiates component expressions,
//! [`ambient`] models flat spaces, quadric space forms and metric charts,
//! [`subgeom`] computes pointwise submanifold invariants, [`biharmonic`]
//! assembles bitension residuals and verdicts, and [`catalog`] builds the
//! classified families as checkable fixtures.

// Index loops mirror tensor notation; negated comparisons reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod ambient;
pub mod biharmonic;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod subgeom;

pub use ambient::{AmbientSpace, Chart, Quadric, QuadricKind, Signature};
pub use biharmonic::{
    bitension_residual, check_immersion, classify_two_curvature, classify_verdict,
    hypersurface_residual, pseudo_umbilical_residual, spacelike_residual, BiharmonicReport,
    sample_points, CheckOptions, ClassificationResult, Verdict,
};
pub use catalog::CatalogEntry;
pub use error::{Error, Result};
pub use expr::{parse, Bindings, Expr, ExprError};
pub use subgeom::{point_geometry, Immersion, PointGeometry};
