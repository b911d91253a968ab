//! Bitension residuals, hypersurface specializations, verdicts and the
//! two-principal-curvature classification.
//!
//! The general residual is the normal/tangential split of
//! `τ₂ = −Δτ − trace R(dφ, τ)dφ` with `τ = mH`:
//!
//! ```text
//! normal:      Δ⊥H + trace B(A_H ·, ·) + (trace R(dφ, H)dφ)⊥
//! tangential:  trace A_{∇⊥H}(·) + (m/4) grad<H,H> + (trace R(dφ, H)dφ)⊤
//! ```
//!
//! with `τ₂⊥ = −m · normal` and `τ₂⊤ = −2m · tangential`. For hypersurfaces
//! with unit normal `ξ`, `<ξ,ξ> = ε` and `H = fξ`, the general residual
//! relates to the scalar system of [`HypersurfaceTerms`] by
//! `normal = −scalar · ξ` and `tangential = vector`.

mod classify;
mod hypersurface;
mod report;
mod residual;

pub use classify::{classify_two_curvature, ClassificationResult};
pub use hypersurface::{
    hypersurface_residual, hypersurface_residual_oriented, spacelike_residual, unit_normal,
    HypersurfaceResidual, HypersurfaceTerms,
};
pub use report::{
    check_immersion, classify_verdict, sample_points, BiharmonicReport, CheckOptions,
    SampleRecord, Verdict, DEFAULT_TOL_H, DEFAULT_TOL_RES, REPORT_SCHEMA,
};
pub use residual::{
    bitension_direct, bitension_from_jet, bitension_residual, normalizer,
    pseudo_umbilical_residual, Bitension,
};
