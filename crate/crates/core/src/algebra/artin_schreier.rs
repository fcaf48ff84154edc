//! Artin-Schreier classes `F / {h^2 + h}` in characteristic 2.

use std::collections::BTreeMap;

use super::display::{fmt_poly, paren};
use super::field::{FiniteField, Field, FqAlgebra};
use super::fq::{Fq, FqElem};
use super::poly::{Poly, PolyRing};
use super::primes::{poly_factor, PrimePoly};
use super::ratfunc::{RationalField, RationalFunc};
use crate::error::{Error, Result};

/// Reduced representative of `f` modulo `{h^2 + h : h in F}`.
///
/// `finite_parts[P][j - 1]` is the coefficient `r_j` (degree `< deg P`) of `P^-j`; every
/// even-indexed term is zero and the top term is nonzero. `infinity_part` has only odd-degree
/// monomials and no constant term. `constant_part` is the absolute trace class of the constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AsClass {
    pub constant_part: FqElem,
    pub finite_parts: BTreeMap<PrimePoly, Vec<Poly<FqElem>>>,
    pub infinity_part: Poly<FqElem>,
}

/// Absolute trace `F_q -> F_2`.
fn trace_fq(fq: &Fq, c: &FqElem) -> FqElem {
    fq.absolute_trace(c)
}

/// The representative used for a nonzero constant class: the smallest element of trace 1.
pub fn trace_one_constant(fq: &Fq) -> FqElem {
    fq.all().find(|c| trace_fq(fq, c).0 == 1).unwrap()
}

/// Square root in `F_q[T]/(P)`.
fn sqrt_mod(fq: &Fq, r: &Poly<FqElem>, p: &PrimePoly) -> Poly<FqElem> {
    let bits = fq.config().e as usize * p.degree();
    let mut s = r.clone();
    for _ in 0..bits - 1 {
        s = fq.pmulmod(&s, &s, p.poly());
    }
    s
}

/// `P`-adic digits of `r`, low first, exactly `len` of them.
fn digits(fq: &Fq, r: &Poly<FqElem>, p: &Poly<FqElem>, len: usize) -> Vec<Poly<FqElem>> {
    let mut out = Vec::with_capacity(len);
    let mut cur = r.clone();
    for _ in 0..len {
        let (q, rem) = fq.pdivmod(&cur, p).unwrap();
        out.push(rem);
        cur = q;
    }
    out
}

/// Reduces one principal part; `terms[j - 1]` is the coefficient of `P^-j`.
fn reduce_local(fq: &Fq, p: &PrimePoly, mut terms: Vec<Poly<FqElem>>) -> Vec<Poly<FqElem>> {
    for j in (1..=terms.len()).rev() {
        if j % 2 == 1 || terms[j - 1].is_zero() {
            continue;
        }
        let k = j / 2;
        let r = terms[j - 1].clone();
        let s = sqrt_mod(fq, &r, p);
        let (t, rem) = fq.pdivmod(&fq.pmul(&s, &s), p.poly()).unwrap();
        debug_assert_eq!(rem, r);
        // adding h^2 + h with h = s / P^k
        terms[j - 1] = Poly::zero();
        terms[j - 2] = fq.padd(&terms[j - 2], &t);
        terms[k - 1] = fq.padd(&terms[k - 1], &s);
    }
    while terms.last().is_some_and(|t| t.is_zero()) {
        terms.pop();
    }
    terms
}

/// Reduces the polynomial part; returns (odd part without constant, constant).
fn reduce_poly_part(fq: &Fq, f: &Poly<FqElem>) -> (Poly<FqElem>, FqElem) {
    let mut c: Vec<FqElem> = f.coeffs().to_vec();
    for i in (1..c.len()).rev() {
        if i % 2 == 1 || c[i].0 == 0 {
            continue;
        }
        let s = fq.p_root(&c[i]);
        c[i] = fq.zero();
        c[i / 2] = fq.add(&c[i / 2], &s);
    }
    let constant = c.first().copied().unwrap_or(fq.zero());
    if !c.is_empty() {
        c[0] = fq.zero();
    }
    (fq.poly(c), constant)
}

/// Artin-Schreier normal form of `f`.
pub fn as_reduce(fq: &Fq, f: &RationalFunc) -> Result<AsClass> {
    if fq.p() != 2 {
        return Err(Error::OddCharacteristic);
    }
    let (poly_part, rem) = fq.pdivmod(f.num(), f.den()).unwrap();
    let mut finite_parts = BTreeMap::new();
    if f.den().degree().unwrap() > 0 {
        let (_, fac) = poly_factor(fq, f.den())?;
        for (p, e) in fac {
            let pe = fq.ppow(p.poly(), e as u64);
            let cof = fq.pdiv_exact(f.den(), &pe).unwrap();
            let inv = fq.pinvmod(&fq.prem(&cof, &pe).unwrap(), &pe).unwrap();
            let r = fq.pmulmod(&rem, &inv, &pe);
            let d = digits(fq, &r, p.poly(), e);
            // r / P^e = sum_m d_m P^(m - e), so the coefficient of P^-j is d_(e - j)
            let terms: Vec<Poly<FqElem>> = (1..=e).map(|j| d[e - j].clone()).collect();
            let reduced = reduce_local(fq, &p, terms);
            if !reduced.is_empty() {
                finite_parts.insert(p, reduced);
            }
        }
    }
    let (infinity_part, constant) = reduce_poly_part(fq, &poly_part);
    Ok(AsClass {
        constant_part: trace_fq(fq, &constant),
        finite_parts,
        infinity_part,
    })
}

impl AsClass {
    pub fn is_trivial(&self) -> bool {
        self.constant_part.0 == 0 && self.finite_parts.is_empty() && self.infinity_part.is_zero()
    }

    /// Nonconstant polynomial part: wild ramification at infinity.
    pub fn wild_part(&self) -> bool {
        !self.infinity_part.is_zero()
    }

    /// Exponent `n + 1` of each pole of odd order `n`.
    pub fn conductor_exponents(&self) -> Vec<(PrimePoly, usize)> {
        self.finite_parts
            .iter()
            .map(|(p, t)| (p.clone(), t.len() + 1))
            .collect()
    }

    /// The reduced representative as an element of `F`.
    pub fn to_rational(&self, fq: &Fq) -> RationalFunc {
        let f = RationalField::new(fq);
        let mut acc = f.from_poly(self.infinity_part.clone());
        if self.constant_part.0 == 1 {
            acc = f.add(&acc, &f.from_fq(trace_one_constant(fq)));
        }
        for (p, terms) in &self.finite_parts {
            for (j, r) in terms.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let den = fq.ppow(p.poly(), j as u64 + 1);
                acc = f.add(&acc, &f.frac(r.clone(), den).unwrap());
            }
        }
        acc
    }

    /// Frobenius value at an unramified `P`: `(-1)^Tr(f mod P)`; `None` at a pole.
    pub fn character(&self, fq: &Fq, p: &PrimePoly) -> Option<i8> {
        if self.finite_parts.contains_key(p) {
            return None;
        }
        let f = self.to_rational(fq);
        let field = RationalField::new(fq);
        let v = field.reduce_mod(&f, p.poly())?;
        // absolute trace in F_q[T]/(P) via repeated squaring
        let bits = fq.config().e as usize * p.degree();
        let mut acc = v.clone();
        let mut s = v;
        for _ in 1..bits {
            s = fq.pmulmod(&s, &s, p.poly());
            acc = fq.padd(&acc, &s);
        }
        let tr = acc.coeff(0).copied().unwrap_or(fq.zero());
        Some(if tr.0 == 0 { 1 } else { -1 })
    }

    pub fn display(&self, fq: &Fq) -> String {
        let mut parts = Vec::new();
        if !self.infinity_part.is_zero() {
            parts.push(fmt_poly(fq, &self.infinity_part, "T"));
        }
        if self.constant_part.0 == 1 {
            parts.push(fq.format(trace_one_constant(fq)));
        }
        for (p, terms) in &self.finite_parts {
            for (j, r) in terms.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let base = paren(p.display(fq));
                let den = if j == 0 { base } else { format!("{base}^{}", j + 1) };
                parts.push(format!("{}/{}", paren(fmt_poly(fq, r, "T")), den));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> (Fq, RationalField) {
        let k = Fq::new(2, 1).unwrap();
        let f = RationalField::new(&k);
        (k, f)
    }

    #[test]
    fn inverse_square_reduces_to_inverse() {
        let (k, f) = f2();
        let t = f.t();
        let c = as_reduce(&k, &f.inv(&f.mul(&t, &t)).unwrap()).unwrap();
        assert_eq!(c.to_rational(&k), f.inv(&t).unwrap());
    }

    #[test]
    fn artin_schreier_of_t_is_trivial() {
        let (k, f) = f2();
        let t = f.t();
        let c = as_reduce(&k, &f.add(&f.mul(&t, &t), &t)).unwrap();
        assert!(c.is_trivial());
    }

    #[test]
    fn resolvent_with_unit_coefficients() {
        let (k, f) = f2();
        // (1 + b^2) / b^2 with b = T^4
        let b = f.pow_u64(&f.t(), 4);
        let b2 = f.mul(&b, &b);
        let g = f.div(&f.add(&f.one(), &b2), &b2).unwrap();
        let c = as_reduce(&k, &g).unwrap();
        assert_eq!(c.constant_part, FqElem(1));
        assert!(!c.wild_part());
        let expected = f.add(&f.one(), &f.inv(&f.t()).unwrap());
        assert_eq!(c.to_rational(&k), expected);
    }
}
