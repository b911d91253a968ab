use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Solution of the two-principal-curvature system
///
/// ```text
/// 1/C₁ + 1/C₂ = 1/C
/// p C₁ + (n − p) C₂ = 2nC
/// p² C₁ + (n − p)² C₂ ≠ n² C
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub n: i64,
    pub p: i64,
    pub c: Rational64,
    pub c1: Rational64,
    pub c2: Rational64,
    pub admissible: bool,
    /// Roots of the equalities rejected by the inequality.
    pub excluded: Vec<(Rational64, Rational64)>,
    pub reason: String,
}

/// Solves the system exactly over the rationals.
///
/// Eliminating `C₂` with the linear equation turns the harmonic one into
/// `p C₁² − C(n + 2p) C₁ + 2n C² = 0`, whose roots are `2C` and `nC/p`. The
/// root `nC/p` gives `C₂ = nC/(n − p)` and makes the inequality an equality,
/// so only `C₁ = C₂ = 2C` can survive, and it does exactly when `n ≠ 2p`.
pub fn classify_two_curvature(n: i64, p: i64, c: Rational64) -> Result<ClassificationResult> {
    if n < 2 || p < 1 || p > n - 1 {
        return Err(Error::InvalidRange(format!(
            "need n >= 2 and 1 <= p <= n - 1, got n = {n}, p = {p}"
        )));
    }
    if c.is_zero() {
        return Err(Error::InvalidRange("C must be nonzero".into()));
    }
    let q = n - p;
    let (nr, pr, qr) = (Rational64::from(n), Rational64::from(p), Rational64::from(q));

    // Quadratic a x² + b x + k = 0 in C₁.
    let a = pr;
    let b = -c * (nr + pr * 2);
    let k = nr * 2 * c * c;
    let disc = b * b - a * k * 4;
    let root = c.abs() * Rational64::from((n - 2 * p).abs());
    debug_assert_eq!(root * root, disc);
    let mut roots = vec![(-b + root) / (a * 2), (-b - root) / (a * 2)];
    roots.dedup();

    let harmonic = |c1: Rational64, c2: Rational64| {
        !c1.is_zero() && !c2.is_zero() && c1.recip() + c2.recip() == c.recip()
    };
    let mut solutions = Vec::new();
    for c1 in roots {
        let c2 = (nr * 2 * c - pr * c1) / qr;
        if harmonic(c1, c2) && pr * c1 + qr * c2 == nr * 2 * c {
            solutions.push((c1, c2));
        }
    }
    let inequality = |(c1, c2): (Rational64, Rational64)| pr * pr * c1 + qr * qr * c2 != nr * nr * c;
    let (admitted, excluded): (Vec<_>, Vec<_>) = solutions.iter().copied().partition(|s| inequality(*s));

    let (c1, c2, admissible, reason) = match admitted.as_slice() {
        [(c1, c2)] => (*c1, *c2, true, format!("unique solution C1 = C2 = {c1}")),
        [] => {
            let equal = solutions
                .iter()
                .copied()
                .find(|(x, y)| x == y)
                .expect("C1 = C2 = 2C always solves the equalities");
            let reason = if n == 2 * p {
                format!("inadmissible: n = 2p (p^2 C1 + q^2 C2 = {} = n^2 C)", nr * nr * c)
            } else {
                "inadmissible: every root violates the inequality".to_string()
            };
            (equal.0, equal.1, false, reason)
        }
        _ => unreachable!("at most one root passes the inequality"),
    };
    Ok(ClassificationResult {
        n,
        p,
        c,
        c1,
        c2,
        admissible,
        excluded,
        reason,
    })
}
