//! The rational function field `F = F_q(T)`.

use super::display::{fmt_poly, paren};
use super::field::{Field, FqAlgebra};
use super::fq::{Fq, FqElem};
use super::poly::{Poly, PolyRing};
use super::primes::{valuation, PrimePoly};
use crate::error::{Error, Result};

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RationalFunc {
    num: Poly<FqElem>,
    den: Poly<FqElem>,
}

impl RationalFunc {
    pub fn num(&self) -> &Poly<FqElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<FqElem> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

/// A place of `F`: a finite prime or the infinite place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(PrimePoly),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalField {
    fq: Fq,
}

impl RationalField {
    pub fn new(fq: &Fq) -> Self {
        RationalField { fq: fq.clone() }
    }

    /// Normalizes an arbitrary quotient.
    pub fn frac(&self, num: Poly<FqElem>, den: Poly<FqElem>) -> Result<RationalFunc> {
        let Some(l) = den.lc() else {
            return Err(Error::DivisionByZero);
        };
        let k = &self.fq;
        if num.is_zero() {
            return Ok(self.zero());
        }
        if den.degree() == Some(0) {
            let i = k.inv(l).unwrap();
            return Ok(RationalFunc {
                num: k.pscale(&num, &i),
                den: k.pone(),
            });
        }
        let g = k.pgcd(&num, &den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (k.pdiv_exact(&num, &g).unwrap(), k.pdiv_exact(&den, &g).unwrap())
        };
        let l = d.lc().unwrap().clone();
        if !k.is_one(&l) {
            let i = k.inv(&l).unwrap();
            n = k.pscale(&n, &i);
            d = k.pscale(&d, &i);
        }
        Ok(RationalFunc { num: n, den: d })
    }

    pub fn from_poly(&self, f: Poly<FqElem>) -> RationalFunc {
        RationalFunc {
            num: f,
            den: self.fq.pone(),
        }
    }

    /// The element `T`.
    pub fn t(&self) -> RationalFunc {
        self.from_poly(self.fq.px())
    }

    /// `T + c`.
    pub fn t_plus(&self, c: FqElem) -> RationalFunc {
        self.from_poly(self.fq.poly(vec![c, self.fq.one()]))
    }

    /// The polynomial itself when the denominator is 1.
    pub fn as_poly(&self, r: &RationalFunc) -> Option<Poly<FqElem>> {
        r.is_poly().then(|| r.num.clone())
    }

    /// Constant value when `r` lies in `F_q`.
    pub fn as_const(&self, r: &RationalFunc) -> Option<FqElem> {
        match (r.is_poly(), r.num.degree()) {
            (true, None) => Some(FqElem(0)),
            (true, Some(0)) => Some(r.num.coeffs()[0]),
            _ => None,
        }
    }

    /// `v_P(r)` or `v_inf(r) = deg den - deg num`.
    pub fn valuation(&self, r: &RationalFunc, place: &Place) -> Result<i64> {
        if r.num.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        Ok(match place {
            Place::Infinity => r.den.degree().unwrap() as i64 - r.num.degree().unwrap() as i64,
            Place::Finite(p) => {
                valuation(&self.fq, &r.num, p) as i64 - valuation(&self.fq, &r.den, p) as i64
            }
        })
    }

    /// Height: max of numerator and denominator degrees.
    pub fn height(&self, r: &RationalFunc) -> usize {
        r.num.degree().unwrap_or(0).max(r.den.degree().unwrap_or(0))
    }

    pub fn display(&self, r: &RationalFunc) -> String {
        let n = fmt_poly(&self.fq, &r.num, "T");
        if r.is_poly() {
            n
        } else {
            format!("{}/{}", paren(n), paren(fmt_poly(&self.fq, &r.den, "T")))
        }
    }

    /// Reduction modulo `P` into `F_q[T]/(P)` as a polynomial residue, if `v_P(r) >= 0`.
    pub fn reduce_mod(&self, r: &RationalFunc, p: &Poly<FqElem>) -> Option<Poly<FqElem>> {
        let k = &self.fq;
        let n = k.prem(&r.num, p).unwrap();
        if r.is_poly() {
            return Some(n);
        }
        let d = k.prem(&r.den, p).unwrap();
        let di = k.pinvmod(&d, p)?;
        Some(k.pmulmod(&n, &di, p))
    }
}

impl Field for RationalField {
    type Elem = RationalFunc;

    fn zero(&self) -> RationalFunc {
        RationalFunc {
            num: Poly::zero(),
            den: self.fq.pone(),
        }
    }

    fn one(&self) -> RationalFunc {
        RationalFunc {
            num: self.fq.pone(),
            den: self.fq.pone(),
        }
    }

    fn is_zero(&self, a: &RationalFunc) -> bool {
        a.num.is_zero()
    }

    fn add(&self, a: &RationalFunc, b: &RationalFunc) -> RationalFunc {
        let k = &self.fq;
        if a.is_poly() && b.is_poly() {
            return self.from_poly(k.padd(&a.num, &b.num));
        }
        if a.den == b.den {
            return self.frac(k.padd(&a.num, &b.num), a.den.clone()).unwrap();
        }
        let n = k.padd(&k.pmul(&a.num, &b.den), &k.pmul(&b.num, &a.den));
        self.frac(n, k.pmul(&a.den, &b.den)).unwrap()
    }

    fn neg(&self, a: &RationalFunc) -> RationalFunc {
        RationalFunc {
            num: self.fq.pneg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RationalFunc, b: &RationalFunc) -> RationalFunc {
        let k = &self.fq;
        if a.is_poly() && b.is_poly() {
            return self.from_poly(k.pmul(&a.num, &b.num));
        }
        // cross-cancel before multiplying
        let g1 = k.pgcd(&a.num, &b.den);
        let g2 = k.pgcd(&b.num, &a.den);
        let an = k.pdiv_exact(&a.num, &g1).unwrap_or_else(|| a.num.clone());
        let bd = k.pdiv_exact(&b.den, &g1).unwrap_or_else(|| b.den.clone());
        let bn = k.pdiv_exact(&b.num, &g2).unwrap_or_else(|| b.num.clone());
        let ad = k.pdiv_exact(&a.den, &g2).unwrap_or_else(|| a.den.clone());
        let num = k.pmul(&an, &bn);
        if num.is_zero() {
            return self.zero();
        }
        let den = k.pmul(&ad, &bd);
        let l = den.lc().unwrap().clone();
        if k.is_one(&l) {
            RationalFunc { num, den }
        } else {
            let i = k.inv(&l).unwrap();
            RationalFunc {
                num: k.pscale(&num, &i),
                den: k.pscale(&den, &i),
            }
        }
    }

    fn inv(&self, a: &RationalFunc) -> Option<RationalFunc> {
        if a.num.is_zero() {
            return None;
        }
        self.frac(a.den.clone(), a.num.clone()).ok()
    }

    fn characteristic(&self) -> u32 {
        self.fq.p() as u32
    }

    fn from_int(&self, n: i64) -> RationalFunc {
        self.from_poly(self.fq.pconst(self.fq.int(n)))
    }
}

/// `f(T)^q = f(T^q)` for coefficients in `F_q`.
fn subst_pow(fq: &Fq, f: &Poly<FqElem>, q: usize) -> Poly<FqElem> {
    if f.is_zero() {
        return Poly::zero();
    }
    let mut c = vec![fq.zero(); (f.len() - 1) * q + 1];
    for (i, a) in f.coeffs().iter().enumerate() {
        c[i * q] = *a;
    }
    Poly::from_trimmed(c)
}

impl FqAlgebra for RationalField {
    fn fq(&self) -> &Fq {
        &self.fq
    }

    fn from_fq(&self, c: FqElem) -> RationalFunc {
        self.from_poly(self.fq.pconst(c))
    }

    fn frob_q(&self, a: &RationalFunc) -> RationalFunc {
        let q = self.fq.order();
        RationalFunc {
            num: subst_pow(&self.fq, &a.num, q),
            den: subst_pow(&self.fq, &a.den, q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        let inv_t = f.inv(&t).unwrap();
        assert_eq!(f.valuation(&inv_t, &Place::Infinity), Ok(1));
        assert_eq!(f.valuation(&f.pow_u64(&t, 4), &Place::Infinity), Ok(-4));
        let t1 = f.t_plus(FqElem(1));
        let r = f.mul(&f.mul(&t1, &t1), &inv_t);
        let p = PrimePoly::linear(&f3, FqElem(1));
        assert_eq!(f.valuation(&r, &Place::Finite(p)), Ok(2));
        assert_eq!(f.valuation(&f.zero(), &Place::Infinity), Err(Error::ValuationOfZero));
    }

    #[test]
    fn frobenius_is_qth_power() {
        let f4 = Fq::new(2, 2).unwrap();
        let f = RationalField::new(&f4);
        let r = f
            .frac(f4.poly(vec![FqElem(2), FqElem(1)]), f4.poly(vec![FqElem(3), FqElem(0), FqElem(1)]))
            .unwrap();
        assert_eq!(f.frob_q(&r), f.pow_u64(&r, 4));
    }
}
