use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;

use super::fq::{Fq, FqElem};

/// A field given as a context object; elements carry no reference back to it.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u32;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Image of the integer `n` under `Z -> K`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let p = self.characteristic() as i64;
        let r = n.rem_euclid(p);
        let mut acc = self.zero();
        let one = self.one();
        for _ in 0..r {
            acc = self.add(&acc, &one);
        }
        acc
    }
}

/// Fields containing a distinguished copy of the constant field `F_q`.
pub trait FqAlgebra: Field {
    fn fq(&self) -> &Fq;
    fn from_fq(&self, c: FqElem) -> Self::Elem;

    /// `a^q`, the twist of the skew polynomial ring.
    fn frob_q(&self, a: &Self::Elem) -> Self::Elem {
        self.pow_u64(a, self.fq().order() as u64)
    }

    /// `a^(q^k)`.
    fn frob_q_iter(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frob_q(&x);
        }
        x
    }
}

/// Finite fields: `F_q` itself and its explicit extensions.
pub trait FiniteField: FqAlgebra {
    /// Degree over `F_q`.
    fn degree(&self) -> usize;

    fn order(&self) -> BigUint {
        let q = BigUint::from(self.fq().order() as u64);
        let mut acc = BigUint::one();
        for _ in 0..self.degree() {
            acc *= &q;
        }
        acc
    }

    /// Coordinates over `F_q` in the power basis of the defining modulus.
    fn coords(&self, a: &Self::Elem) -> Vec<FqElem>;
    fn from_coords(&self, c: &[FqElem]) -> Self::Elem;

    /// Enumerates all elements in coordinate-lexicographic order.
    fn elements(&self) -> Vec<Self::Elem> {
        let q = self.fq().order();
        let n = self.degree();
        let total = q.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(n);
                for _ in 0..n {
                    c.push(FqElem((idx % q) as u8));
                    idx /= q;
                }
                self.from_coords(&c)
            })
            .collect()
    }

    fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let q = self.fq().order();
        let c: Vec<FqElem> = (0..self.degree())
            .map(|_| FqElem(rng.gen_range(0..q) as u8))
            .collect();
        self.from_coords(&c)
    }

    /// Inverse of the absolute Frobenius `x -> x^p`.
    fn p_root(&self, a: &Self::Elem) -> Self::Elem {
        // x^(p^(n-1)) where p^n = |K|
        let p = self.characteristic() as u64;
        let n = self.degree() * self.fq().config().e as usize;
        let mut x = a.clone();
        for _ in 0..n.saturating_sub(1) {
            x = self.pow_u64(&x, p);
        }
        x
    }

    fn is_square(&self, a: &Self::Elem) -> bool {
        if self.is_zero(a) || self.characteristic() == 2 {
            return true;
        }
        let e = (self.order() - BigUint::one()) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    /// Absolute trace to `F_p` (used for characteristic-2 splitting).
    fn absolute_trace(&self, a: &Self::Elem) -> Self::Elem {
        let p = self.characteristic() as u64;
        let n = self.degree() * self.fq().config().e as usize;
        let mut acc = a.clone();
        let mut x = a.clone();
        for _ in 1..n {
            x = self.pow_u64(&x, p);
            acc = self.add(&acc, &x);
        }
        acc
    }
}
