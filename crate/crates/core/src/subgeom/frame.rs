//! Orthonormal frames and signatures for indefinite inner products.

use nalgebra::{DMatrix, DVector};

use crate::ambient::Signature;
use crate::error::{Error, Result};

/// Relative pivot threshold below which a direction counts as null.
pub const PIVOT_TOL: f64 = 1e-10;

/// Result of a pivoted symmetric decomposition of a Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    /// Column `a` holds the coefficients of the `a`-th frame vector in the
    /// input basis.
    pub coeffs: DMatrix<f64>,
    /// `<e_a, e_a> = eps[a] = ±1`.
    pub eps: Vec<f64>,
    /// Input index chosen at each step.
    pub pivots: Vec<usize>,
}

impl Frame {
    pub fn signature(&self) -> Signature {
        let neg = self.eps.iter().filter(|e| **e < 0.0).count();
        Signature::new(neg, self.eps.len() - neg)
    }
}

/// Gram–Schmidt with diagonal pivoting in the inner product given by `gram`,
/// stopping after `rank` frame vectors.
///
/// The input vector of largest `|<v,v>|` is taken at each step. When every
/// remaining candidate is null but two of them pair nontrivially, the pivot is
/// replaced by `v_i ± v_j`. Returns `None` if fewer than `rank` pivots exceed
/// `tol`.
pub fn pivoted_frame(gram: &DMatrix<f64>, rank: usize, tol: f64) -> Option<Frame> {
    let k = gram.nrows();
    let ip = |a: &DVector<f64>, b: &DVector<f64>| a.dot(&(gram * b));
    let mut work: Vec<DVector<f64>> = (0..k)
        .map(|i| {
            let mut v = DVector::zeros(k);
            v[i] = 1.0;
            v
        })
        .collect();
    let mut active: Vec<usize> = (0..k).collect();
    let mut coeffs = DMatrix::zeros(k, rank);
    let mut eps = Vec::with_capacity(rank);
    let mut pivots = Vec::with_capacity(rank);

    for step in 0..rank {
        let mut best: Option<(usize, f64)> = None;
        for (pos, &i) in active.iter().enumerate() {
            let d = ip(&work[i], &work[i]);
            if best.is_none_or(|(_, b)| d.abs() > b.abs()) {
                best = Some((pos, d));
            }
        }
        let (mut pos, mut d) = best?;
        if d.abs() <= tol {
            let mut pair: Option<(usize, usize, f64)> = None;
            for (p, &i) in active.iter().enumerate() {
                for &j in &active[p + 1..] {
                    let o = ip(&work[i], &work[j]);
                    if pair.is_none_or(|(_, _, b)| o.abs() > b.abs()) {
                        pair = Some((p, j, o));
                    }
                }
            }
            let (p, j, o) = pair?;
            if o.abs() <= tol {
                return None;
            }
            let i = active[p];
            let shifted = &work[i] + &work[j] * o.signum();
            work[i] = shifted;
            pos = p;
            d = ip(&work[i], &work[i]);
            if d.abs() <= tol {
                return None;
            }
        }
        let i = active.remove(pos);
        let e = &work[i] / d.abs().sqrt();
        let s = d.signum();
        for &j in &active {
            let c = ip(&work[j], &e) * s;
            work[j] -= &e * c;
        }
        coeffs.set_column(step, &e);
        eps.push(s);
        pivots.push(i);
    }
    Some(Frame {
        coeffs,
        eps,
        pivots,
    })
}

/// Signature `(neg, pos)` of a symmetric nondegenerate matrix.
pub fn metric_signature(g: &DMatrix<f64>) -> Result<Signature> {
    let scale = g.amax();
    let degenerate = || Error::DegenerateInducedMetric { at: Vec::new() };
    if scale == 0.0 {
        return Err(degenerate());
    }
    pivoted_frame(g, g.nrows(), PIVOT_TOL * scale)
        .map(|f| f.signature())
        .ok_or_else(degenerate)
}

/// A frame of ambient vectors with signs `<e_a, e_a> = eps[a]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    pub vectors: Vec<DVector<f64>>,
    pub eps: Vec<f64>,
    pub pivots: Vec<usize>,
}

impl OrthonormalFrame {
    /// Expresses a frame of `basis` columns.
    pub fn from_frame(basis: &DMatrix<f64>, frame: &Frame) -> Self {
        OrthonormalFrame {
            vectors: (0..frame.eps.len()).map(|a| basis * frame.coeffs.column(a)).collect(),
            eps: frame.eps.clone(),
            pivots: frame.pivots.clone(),
        }
    }

    pub fn signature(&self) -> Signature {
        let neg = self.eps.iter().filter(|e| **e < 0.0).count();
        Signature::new(neg, self.eps.len() - neg)
    }
}
