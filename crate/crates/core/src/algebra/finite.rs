//! Explicit extensions `F_q[x]/(m)` of the constant field.

use std::fmt;
use std::sync::Arc;

use super::field::{FiniteField, Field, FqAlgebra};
use super::fq::{Fq, FqElem};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

struct GfInner {
    fq: Fq,
    modulus: Poly<FqElem>,
    n: usize,
    /// Coordinates of `x^(i q) mod m` for `i < n`; the `q`-Frobenius is linear in these.
    frob: Vec<Vec<FqElem>>,
}

/// The field `F_q[x]/(m)` for a monic irreducible `m` of degree `n >= 1`.
/// Elements are coordinate vectors of length exactly `n`.
#[derive(Clone)]
pub struct Gf {
    inner: Arc<GfInner>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.inner.fq.order(), self.inner.n)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.inner.fq == other.inner.fq && self.inner.modulus == other.inner.modulus
    }
}
impl Eq for Gf {}

impl Gf {
    /// Builds the extension, checking that `m` is monic irreducible.
    pub fn new(fq: &Fq, modulus: Poly<FqElem>) -> Result<Gf> {
        modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidInput("extension modulus must have degree >= 1".into()))?;
        if !fq.is_one(modulus.lc().unwrap()) {
            return Err(Error::InvalidInput("extension modulus must be monic".into()));
        }
        if !super::ffactor::is_irreducible(fq, &modulus) {
            return Err(Error::InvalidInput("extension modulus is reducible".into()));
        }
        Ok(Self::new_unchecked(fq, modulus))
    }

    pub(crate) fn new_unchecked(fq: &Fq, modulus: Poly<FqElem>) -> Gf {
        let n = modulus.degree().unwrap();
        let q = fq.order() as u64;
        let xq = fq.ppowmod(&fq.px(), &q.into(), &modulus);
        let mut frob = Vec::with_capacity(n);
        let mut cur = fq.pone();
        for _ in 0..n {
            frob.push(pad(fq, cur.coeffs(), n));
            cur = fq.pmulmod(&cur, &xq, &modulus);
        }
        Gf {
            inner: Arc::new(GfInner {
                fq: fq.clone(),
                modulus,
                n,
                frob,
            }),
        }
    }

    /// `F_{q^n}` from the first irreducible monic of degree `n` in lexicographic order
    /// (low coefficients varying fastest, constant term nonzero).
    pub fn of_degree(fq: &Fq, n: usize) -> Gf {
        assert!(n >= 1);
        if n == 1 {
            return Self::new_unchecked(fq, fq.px());
        }
        let q = fq.order();
        let mut idx: u128 = 1;
        loop {
            let mut c = Vec::with_capacity(n + 1);
            let mut v = idx;
            for _ in 0..n {
                c.push(FqElem((v % q as u128) as u8));
                v /= q as u128;
            }
            c.push(fq.one());
            let m = fq.poly(c);
            if super::ffactor::is_irreducible(fq, &m) {
                return Self::new_unchecked(fq, m);
            }
            idx += 1;
        }
    }

    pub fn modulus(&self) -> &Poly<FqElem> {
        &self.inner.modulus
    }

    /// The class of `x`.
    pub fn gen(&self) -> Vec<FqElem> {
        let mut v = vec![FqElem(0); self.inner.n];
        if self.inner.n == 1 {
            v[0] = self.inner.fq.neg(&self.inner.modulus.coeffs()[0]);
        } else {
            v[1] = FqElem(1);
        }
        v
    }

    /// Reduces an arbitrary polynomial in `x` into the field.
    pub fn reduce(&self, f: &Poly<FqElem>) -> Vec<FqElem> {
        let fq = &self.inner.fq;
        if f.len() <= self.inner.n {
            return pad(fq, f.coeffs(), self.inner.n);
        }
        let r = fq.prem(f, &self.inner.modulus).unwrap();
        pad(fq, r.coeffs(), self.inner.n)
    }

    pub fn as_poly(&self, a: &[FqElem]) -> Poly<FqElem> {
        self.inner.fq.poly(a.to_vec())
    }

    /// Embedding of `F_q` coefficients of `f` into this field.
    pub fn lift_poly(&self, f: &Poly<FqElem>) -> Poly<Vec<FqElem>> {
        self.poly(f.coeffs().iter().map(|c| self.from_fq(*c)).collect())
    }
}

fn pad(fq: &Fq, c: &[FqElem], n: usize) -> Vec<FqElem> {
    let mut v = c.to_vec();
    v.resize(n, fq.zero());
    v
}

impl Field for Gf {
    type Elem = Vec<FqElem>;

    fn zero(&self) -> Vec<FqElem> {
        vec![FqElem(0); self.inner.n]
    }

    fn one(&self) -> Vec<FqElem> {
        let mut v = vec![FqElem(0); self.inner.n];
        v[0] = FqElem(1);
        v
    }

    fn is_zero(&self, a: &Vec<FqElem>) -> bool {
        a.iter().all(|c| c.0 == 0)
    }

    fn add(&self, a: &Vec<FqElem>, b: &Vec<FqElem>) -> Vec<FqElem> {
        let k = &self.inner.fq;
        a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<FqElem>) -> Vec<FqElem> {
        let k = &self.inner.fq;
        a.iter().map(|x| k.neg(x)).collect()
    }

    fn sub(&self, a: &Vec<FqElem>, b: &Vec<FqElem>) -> Vec<FqElem> {
        let k = &self.inner.fq;
        a.iter().zip(b).map(|(x, y)| k.sub(x, y)).collect()
    }

    fn mul(&self, a: &Vec<FqElem>, b: &Vec<FqElem>) -> Vec<FqElem> {
        let k = &self.inner.fq;
        let n = self.inner.n;
        if n == 1 {
            return vec![k.mul(&a[0], &b[0])];
        }
        let mut prod = vec![FqElem(0); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.0 != 0 {
                    prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
                }
            }
        }
        let m = self.inner.modulus.coeffs();
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c.0 == 0 {
                continue;
            }
            for (i, mi) in m.iter().enumerate().take(n) {
                if mi.0 != 0 {
                    let idx = top - n + i;
                    prod[idx] = k.sub(&prod[idx], &k.mul(&c, mi));
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn inv(&self, a: &Vec<FqElem>) -> Option<Vec<FqElem>> {
        if self.is_zero(a) {
            return None;
        }
        let k = &self.inner.fq;
        let ap = k.poly(a.clone());
        let i = k.pinvmod(&ap, &self.inner.modulus)?;
        Some(pad(k, i.coeffs(), self.inner.n))
    }

    fn characteristic(&self) -> u32 {
        self.inner.fq.p() as u32
    }

    fn from_int(&self, n: i64) -> Vec<FqElem> {
        self.from_fq(self.inner.fq.int(n))
    }
}

impl FqAlgebra for Gf {
    fn fq(&self) -> &Fq {
        &self.inner.fq
    }

    fn from_fq(&self, c: FqElem) -> Vec<FqElem> {
        let mut v = vec![FqElem(0); self.inner.n];
        v[0] = c;
        v
    }

    fn frob_q(&self, a: &Vec<FqElem>) -> Vec<FqElem> {
        let k = &self.inner.fq;
        let mut out = vec![FqElem(0); self.inner.n];
        for (ai, row) in a.iter().zip(&self.inner.frob) {
            if ai.0 == 0 {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = k.add(o, &k.mul(ai, r));
            }
        }
        out
    }
}

impl FiniteField for Gf {
    fn degree(&self) -> usize {
        self.inner.n
    }

    fn coords(&self, a: &Vec<FqElem>) -> Vec<FqElem> {
        a.clone()
    }

    fn from_coords(&self, c: &[FqElem]) -> Vec<FqElem> {
        pad(&self.inner.fq, c, self.inner.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_via_extension_matches_table_order() {
        let f3 = Fq::new(3, 1).unwrap();
        let k = Gf::of_degree(&f3, 2);
        let g = k.gen();
        // frobenius is the q-th power map
        assert_eq!(k.frob_q(&g), k.pow_u64(&g, 3));
        for a in k.elements().iter().skip(1) {
            assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
            assert!(k.is_one(&k.pow_u64(a, 8)));
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        let f2 = Fq::new(2, 1).unwrap();
        let m = f2.poly(vec![FqElem(1), FqElem(0), FqElem(1)]);
        assert!(Gf::new(&f2, m).is_err());
    }
}
