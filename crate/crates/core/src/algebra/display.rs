//! Text forms matching the parser grammar.

use super::fq::{Fq, FqElem};
use super::poly::Poly;

/// `c` times the monomial `mono` (which may be empty for the constant term).
pub(crate) fn term(coef: &str, mono: &str) -> String {
    match (coef, mono) {
        (c, "") => c.to_string(),
        ("1", m) => m.to_string(),
        (c, m) => format!("{c}*{m}"),
    }
}

fn power(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// Highest degree first, e.g. `T^2 + 2*T + 1`; the zero polynomial prints as `0`.
pub fn fmt_poly(fq: &Fq, f: &Poly<FqElem>, var: &str) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.0 == 0 {
            continue;
        }
        terms.push(term(&fq.format(*c), &power(var, i)));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Wraps a sum in parentheses when it is used as a factor.
pub(crate) fn paren(s: String) -> String {
    if s.contains(' ') || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::PolyRing;

    #[test]
    fn prints_highest_first() {
        let f4 = Fq::new(2, 2).unwrap();
        let f = f4.poly(vec![FqElem(1), FqElem(2), FqElem(3)]);
        assert_eq!(fmt_poly(&f4, &f, "T"), "(w+1)*T^2 + w*T + 1");
    }
}
