//! Square classes `F^* / (F^*)^2` for odd `q`.

use super::display::fmt_poly;
use super::field::{FiniteField, Field, FqAlgebra};
use super::fq::{Fq, FqElem};
use super::poly::{Poly, PolyRing};
use super::primes::{poly_factor, PrimePoly};
use super::ratfunc::{RationalField, RationalFunc};
use crate::error::{Error, Result};

/// `unit * monic_part` modulo squares, with `unit` either 1 or the stored generator of `F_q^*`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KummerClass {
    pub unit: FqElem,
    pub monic_part: Poly<FqElem>,
}

fn canonical_unit(fq: &Fq, u: FqElem) -> FqElem {
    if fq.is_square(&u) {
        fq.one()
    } else {
        fq.generator()
    }
}

/// Normal form of `d != 0` modulo squares.
pub fn kummer_class(fq: &Fq, d: &RationalFunc) -> Result<KummerClass> {
    if fq.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if d.num().is_zero() {
        return Err(Error::InvalidInput("square class of zero".into()));
    }
    // num/den and num*den differ by the square den^2
    let prod = fq.pmul(d.num(), d.den());
    let (lc, fac) = poly_factor(fq, &prod)?;
    let monic_part = fac
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .fold(fq.pone(), |acc, (p, _)| fq.pmul(&acc, p.poly()));
    Ok(KummerClass {
        unit: canonical_unit(fq, lc),
        monic_part,
    })
}

impl KummerClass {
    pub fn trivial(fq: &Fq) -> Self {
        KummerClass {
            unit: fq.one(),
            monic_part: fq.pone(),
        }
    }

    pub fn is_square(&self, fq: &Fq) -> bool {
        fq.is_one(&self.unit) && self.monic_part.degree() == Some(0)
    }

    /// Group law on square classes.
    pub fn mul(&self, fq: &Fq, other: &KummerClass) -> KummerClass {
        let g = fq.pgcd(&self.monic_part, &other.monic_part);
        let a = fq.pdiv_exact(&self.monic_part, &g).unwrap();
        let b = fq.pdiv_exact(&other.monic_part, &g).unwrap();
        KummerClass {
            unit: canonical_unit(fq, fq.mul(&self.unit, &other.unit)),
            monic_part: fq.pmul(&a, &b),
        }
    }

    pub fn to_rational(&self, f: &RationalField) -> RationalFunc {
        f.mul(&f.from_fq(self.unit), &f.from_poly(self.monic_part.clone()))
    }

    /// Monic prime factors of the monic part.
    pub fn primes(&self, fq: &Fq) -> Vec<PrimePoly> {
        poly_factor(fq, &self.monic_part)
            .map(|(_, fac)| fac.into_iter().map(|(p, _)| p).collect())
            .unwrap_or_default()
    }

    /// Value at `P` of the quadratic character of `F(sqrt d)`: `+1` split, `-1` inert.
    /// `None` when `P` divides the monic part (ramified).
    pub fn character(&self, fq: &Fq, p: &PrimePoly) -> Option<i8> {
        let r = fq.prem(&self.monic_part, p.poly()).unwrap();
        if r.is_zero() {
            return None;
        }
        let val = fq.pscale(&r, &self.unit);
        let val = fq.prem(&val, p.poly()).unwrap();
        // Euler criterion in F_q[T]/(P)
        let qd = num_bigint::BigUint::from(fq.order() as u64).pow(p.degree() as u32);
        let e = (qd - 1u32) >> 1;
        let z = fq.ppowmod(&val, &e, p.poly());
        Some(if z == fq.pone() { 1 } else { -1 })
    }

    pub fn display(&self, fq: &Fq) -> String {
        let m = fmt_poly(fq, &self.monic_part, "T");
        if fq.is_one(&self.unit) {
            m
        } else if self.monic_part.degree() == Some(0) {
            fq.format(self.unit)
        } else {
            format!("{}*({})", fq.format(self.unit), m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_squares_and_keeps_units() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        let t1 = f.t_plus(FqElem(1));
        let d = f.mul(&f.mul(&t1, &t1), &t);
        let c = kummer_class(&f3, &d).unwrap();
        assert_eq!(c, KummerClass { unit: FqElem(1), monic_part: f3.px() });
        let m1 = kummer_class(&f3, &f.from_int(-1)).unwrap();
        assert_eq!(m1.unit, FqElem(2));
        assert!(!m1.is_square(&f3));
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(
            kummer_class(&f2, &RationalField::new(&f2).t()),
            Err(Error::EvenCharacteristic)
        );
    }
}
