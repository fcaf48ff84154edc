//! Dense univariate polynomials over any [`Field`].

use super::field::Field;
use crate::error::{Error, Result};

/// Coefficients low to high with a nonzero top coefficient; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Wraps coefficients that are already trimmed.
    pub(crate) fn from_trimmed(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
}

/// Polynomial arithmetic with the field as context. Implemented for every field.
pub trait PolyRing: Field {
    fn poly(&self, mut c: Vec<Self::Elem>) -> Poly<Self::Elem> {
        while c.last().is_some_and(|x| self.is_zero(x)) {
            c.pop();
        }
        Poly::from_trimmed(c)
    }

    fn pconst(&self, c: Self::Elem) -> Poly<Self::Elem> {
        self.poly(vec![c])
    }

    fn pone(&self) -> Poly<Self::Elem> {
        Poly::from_trimmed(vec![self.one()])
    }

    /// The variable `x`.
    fn px(&self) -> Poly<Self::Elem> {
        Poly::from_trimmed(vec![self.zero(), self.one()])
    }

    /// `c x^k`.
    fn pmonomial(&self, c: Self::Elem, k: usize) -> Poly<Self::Elem> {
        if self.is_zero(&c) {
            return Poly::zero();
        }
        let mut v = vec![self.zero(); k + 1];
        v[k] = c;
        Poly::from_trimmed(v)
    }

    fn pcoeff(&self, f: &Poly<Self::Elem>, i: usize) -> Self::Elem {
        f.coeff(i).cloned().unwrap_or_else(|| self.zero())
    }

    fn padd(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        let n = f.len().max(g.len());
        let z = self.zero();
        let c = (0..n)
            .map(|i| self.add(f.coeff(i).unwrap_or(&z), g.coeff(i).unwrap_or(&z)))
            .collect();
        self.poly(c)
    }

    fn pneg(&self, f: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        Poly::from_trimmed(f.coeffs().iter().map(|a| self.neg(a)).collect())
    }

    fn psub(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        let n = f.len().max(g.len());
        let z = self.zero();
        let c = (0..n)
            .map(|i| self.sub(f.coeff(i).unwrap_or(&z), g.coeff(i).unwrap_or(&z)))
            .collect();
        self.poly(c)
    }

    fn pscale(&self, f: &Poly<Self::Elem>, c: &Self::Elem) -> Poly<Self::Elem> {
        if self.is_zero(c) {
            return Poly::zero();
        }
        self.poly(f.coeffs().iter().map(|a| self.mul(a, c)).collect())
    }

    /// `f * x^k`.
    fn pshift(&self, f: &Poly<Self::Elem>, k: usize) -> Poly<Self::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.zero(); k];
        v.extend(f.coeffs().iter().cloned());
        Poly::from_trimmed(v)
    }

    fn pmul(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![self.zero(); f.len() + g.len() - 1];
        for (i, a) in f.coeffs().iter().enumerate() {
            if self.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs().iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(a, b));
            }
        }
        self.poly(out)
    }

    fn ppow(&self, f: &Poly<Self::Elem>, mut e: u64) -> Poly<Self::Elem> {
        let mut base = f.clone();
        let mut acc = self.pone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.pmul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.pmul(&base, &base);
            }
        }
        acc
    }

    fn pdivmod(
        &self,
        f: &Poly<Self::Elem>,
        g: &Poly<Self::Elem>,
    ) -> Result<(Poly<Self::Elem>, Poly<Self::Elem>)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let Some(df) = f.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if df < dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let inv = self.inv(g.lc().unwrap()).ok_or(Error::DivisionByZero)?;
        let monic = self.is_one(g.lc().unwrap());
        let mut r: Vec<Self::Elem> = f.coeffs().to_vec();
        let mut qv = vec![self.zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let top = &r[k + dg];
            if self.is_zero(top) {
                continue;
            }
            let c = if monic { top.clone() } else { self.mul(top, &inv) };
            for (j, b) in g.coeffs().iter().enumerate() {
                if !self.is_zero(b) {
                    r[k + j] = self.sub(&r[k + j], &self.mul(&c, b));
                }
            }
            qv[k] = c;
        }
        r.truncate(dg);
        Ok((self.poly(qv), self.poly(r)))
    }

    fn prem(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Result<Poly<Self::Elem>> {
        self.pdivmod(f, g).map(|(_, r)| r)
    }

    /// Exact quotient; `None` when `g` does not divide `f`.
    fn pdiv_exact(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Option<Poly<Self::Elem>> {
        match self.pdivmod(f, g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    fn pmonic(&self, f: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        match f.lc() {
            None => Poly::zero(),
            Some(l) if self.is_one(l) => f.clone(),
            Some(l) => {
                let i = self.inv(l).unwrap();
                self.pscale(f, &i)
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    fn pgcd(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.prem(&a, &b).unwrap();
            a = b;
            b = r;
        }
        self.pmonic(&a)
    }

    /// `(g, s, t)` with `s f + t h = g` and `g` monic.
    #[allow(clippy::type_complexity)]
    fn pxgcd(
        &self,
        f: &Poly<Self::Elem>,
        h: &Poly<Self::Elem>,
    ) -> (Poly<Self::Elem>, Poly<Self::Elem>, Poly<Self::Elem>) {
        let (mut r0, mut r1) = (f.clone(), h.clone());
        let (mut s0, mut s1) = (self.pone(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.pone());
        while !r1.is_zero() {
            let (q, r) = self.pdivmod(&r0, &r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = self.psub(&s0, &self.pmul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.psub(&t0, &self.pmul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let i = self.inv(&l).unwrap();
                (self.pscale(&r0, &i), self.pscale(&s0, &i), self.pscale(&t0, &i))
            }
        }
    }

    /// Inverse of `f` modulo `m`, if it exists.
    fn pinvmod(&self, f: &Poly<Self::Elem>, m: &Poly<Self::Elem>) -> Option<Poly<Self::Elem>> {
        let (g, s, _) = self.pxgcd(f, m);
        if g.degree() == Some(0) {
            Some(self.prem(&s, m).unwrap())
        } else {
            None
        }
    }

    fn peval(&self, f: &Poly<Self::Elem>, x: &Self::Elem) -> Self::Elem {
        f.coeffs()
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    fn pderiv(&self, f: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        let c = f
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| self.mul(&self.from_int(i as i64), a))
            .collect();
        self.poly(c)
    }

    fn pmulmod(
        &self,
        f: &Poly<Self::Elem>,
        g: &Poly<Self::Elem>,
        m: &Poly<Self::Elem>,
    ) -> Poly<Self::Elem> {
        self.prem(&self.pmul(f, g), m).unwrap()
    }

    /// `f^e mod m` for an exponent given as little-endian bits.
    fn ppowmod_bits(
        &self,
        f: &Poly<Self::Elem>,
        bits: &[bool],
        m: &Poly<Self::Elem>,
    ) -> Poly<Self::Elem> {
        let mut acc = self.prem(&self.pone(), m).unwrap();
        let base = self.prem(f, m).unwrap();
        for &b in bits.iter().rev() {
            acc = self.pmulmod(&acc, &acc, m);
            if b {
                acc = self.pmulmod(&acc, &base, m);
            }
        }
        acc
    }

    fn ppowmod(
        &self,
        f: &Poly<Self::Elem>,
        e: &num_bigint::BigUint,
        m: &Poly<Self::Elem>,
    ) -> Poly<Self::Elem> {
        let bits: Vec<bool> = (0..e.bits()).map(|i| e.bit(i)).collect();
        self.ppowmod_bits(f, &bits, m)
    }

    /// `f(g(x))`.
    fn pcompose(&self, f: &Poly<Self::Elem>, g: &Poly<Self::Elem>) -> Poly<Self::Elem> {
        f.coeffs().iter().rev().fold(Poly::zero(), |acc, c| {
            self.padd(&self.pmul(&acc, g), &self.pconst(c.clone()))
        })
    }

    /// `f(g(x)) mod m`.
    fn pcompose_mod(
        &self,
        f: &Poly<Self::Elem>,
        g: &Poly<Self::Elem>,
        m: &Poly<Self::Elem>,
    ) -> Poly<Self::Elem> {
        f.coeffs().iter().rev().fold(Poly::zero(), |acc, c| {
            self.padd(&self.pmulmod(&acc, g, m), &self.pconst(c.clone()))
        })
    }

    /// Product of a list of polynomials.
    fn pproduct<'a, I>(&self, it: I) -> Poly<Self::Elem>
    where
        I: IntoIterator<Item = &'a Poly<Self::Elem>>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.pone(), |acc, f| self.pmul(&acc, f))
    }

    /// Applies a coefficient map.
    fn pmap<K: Field, M: Fn(&Self::Elem) -> K::Elem>(
        &self,
        target: &K,
        f: &Poly<Self::Elem>,
        m: M,
    ) -> Poly<K::Elem> {
        target.poly(f.coeffs().iter().map(m).collect())
    }
}

impl<F: Field> PolyRing for F {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::{Fq, FqElem};

    fn p(k: &Fq, c: &[u8]) -> Poly<FqElem> {
        k.poly(c.iter().map(|&x| FqElem(x)).collect())
    }

    #[test]
    fn small_identities() {
        let f3 = Fq::new(3, 1).unwrap();
        // (T+1)(T-1) = T^2 - 1
        assert_eq!(f3.pmul(&p(&f3, &[1, 1]), &p(&f3, &[2, 1])), p(&f3, &[2, 0, 1]));
        assert_eq!(f3.pgcd(&p(&f3, &[2, 0, 1]), &p(&f3, &[2, 1])), p(&f3, &[2, 1]));
        let f2 = Fq::new(2, 1).unwrap();
        let (q, r) = f2.pdivmod(&p(&f2, &[0, 0, 0, 1]), &p(&f2, &[1, 1])).unwrap();
        assert_eq!(q, p(&f2, &[1, 1, 1]));
        assert_eq!(r, p(&f2, &[1]));
        assert_eq!(f2.pdivmod(&q, &Poly::zero()), Err(Error::DivisionByZero));
        assert_eq!(Poly::<FqElem>::zero().degree(), None);
    }

    #[test]
    fn xgcd_bezout() {
        let f9 = Fq::new(3, 2).unwrap();
        let f = p(&f9, &[1, 4, 0, 7, 2]);
        let g = p(&f9, &[5, 0, 3, 1]);
        let (d, s, t) = f9.pxgcd(&f, &g);
        assert_eq!(f9.padd(&f9.pmul(&s, &f), &f9.pmul(&t, &g)), d);
        assert_eq!(d, f9.pgcd(&f, &g));
    }
}
