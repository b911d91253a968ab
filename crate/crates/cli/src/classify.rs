//! Text form of the two-principal-curvature classification.

use biharm::ClassificationResult;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

fn script(n: i64, digits: &[char; 10]) -> String {
    n.to_string()
        .chars()
        .map(|c| c.to_digit(10).map_or(c, |d| digits[d as usize]))
        .collect()
}

fn sup(n: i64) -> String {
    script(n, &['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'])
}

fn sub(n: i64) -> String {
    script(n, &['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'])
}

/// `1/√q` for a positive rational `q`.
fn inverse_root(q: Rational64) -> String {
    if q == Rational64::from(1) {
        "1".into()
    } else if q.is_integer() {
        format!("1/√{q}")
    } else {
        format!("1/√({q})")
    }
}

/// The model hypersurface with Riemannian factors realizing the solution.
pub fn model(r: &ClassificationResult) -> String {
    let (n, p, q) = (r.n, r.p, r.n - r.p);
    let factor = inverse_root(r.c.abs() * 2);
    let ambient = inverse_root(r.c.abs());
    if r.c.is_positive() {
        format!("S{}({factor})×S{}({factor}) ⊂ S{}({ambient})", sup(p), sup(q), sup(n + 1))
    } else {
        format!("H{}({factor})×H{}({factor}) ⊂ H{}{}({ambient})", sup(p), sup(q), sup(n + 1), sub(1))
    }
}

pub fn render(r: &ClassificationResult) -> String {
    debug_assert!(!r.c.is_zero());
    let head = if r.c1 == r.c2 { format!("C1=C2={}", r.c1) } else { format!("C1={}, C2={}", r.c1, r.c2) };
    if r.admissible {
        format!("{head}, admissible, model: {}", model(r))
    } else {
        format!("{head}, inadmissible: n=2p")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use biharm::classify_two_curvature;

    fn line(n: i64, p: i64, c: Rational64) -> String {
        render(&classify_two_curvature(n, p, c).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(line(3, 1, 1.into()), "C1=C2=2, admissible, model: S¹(1/√2)×S²(1/√2) ⊂ S⁴(1)");
        assert_eq!(line(2, 1, 1.into()), "C1=C2=2, inadmissible: n=2p");
        assert_eq!(line(3, 1, (-1).into()), "C1=C2=-2, admissible, model: H¹(1/√2)×H²(1/√2) ⊂ H⁴₁(1)");
        assert_eq!(
            line(5, 2, Rational64::new(3, 2)),
            "C1=C2=3, admissible, model: S²(1/√3)×S³(1/√3) ⊂ S⁶(1/√(3/2))"
        );
        assert_eq!(sup(12), "¹²");
    }
}
