use thiserror::Error;

use crate::expr::ExprError;

/// Errors raised by the geometry engine, the catalog and the classifier.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient metric is degenerate at {at:?}")]
    DegenerateMetric { at: Vec<f64> },
    #[error("induced metric is degenerate at u = {at:?}")]
    DegenerateInducedMetric { at: Vec<f64> },
    #[error("jacobian is rank deficient at u = {at:?}")]
    RankDeficientJacobian { at: Vec<f64> },
    #[error("immersion leaves the quadric at u = {at:?} (residual {residual:e})")]
    OffQuadric { at: Vec<f64>, residual: f64 },
    #[error("normal bundle is degenerate at u = {at:?}")]
    DegenerateNormalBundle { at: Vec<f64> },
    #[error("finite-difference stencil does not fit in the domain box around u = {at:?}")]
    StencilOutsideDomain { at: Vec<f64> },
    #[error("not a hypersurface: codimension is {codim}")]
    NotAHypersurface { codim: usize },
    #[error("hypersurface is not space-like: {reason}")]
    NotSpacelike { reason: String },
    #[error("no valid sample points")]
    NoValidSamples,
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("invalid radius: {0}")]
    InvalidRadius(String),
    #[error("no chart implemented for dimension {dim} with index {index}")]
    UnsupportedSignature { dim: usize, index: usize },
    #[error("factor immersion is not minimal (max |H| = {max_h:e})")]
    NotMinimalInput { max_h: f64 },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid immersion: {0}")]
    InvalidImmersion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
