//! The skew polynomial ring `K{tau}` with `tau c = c^q tau`.

use crate::algebra::{FqAlgebra, Poly, PolyRing};
use crate::error::{Error, Result};

/// `sum c_i tau^i`, top coefficient nonzero, zero is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
}

impl<E> SkewPoly<E> {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Skew arithmetic with the coefficient field as context.
pub trait SkewRing: FqAlgebra {
    fn skew(&self, mut c: Vec<Self::Elem>) -> SkewPoly<Self::Elem> {
        while c.last().is_some_and(|x| self.is_zero(x)) {
            c.pop();
        }
        SkewPoly { coeffs: c }
    }

    fn skew_const(&self, c: Self::Elem) -> SkewPoly<Self::Elem> {
        self.skew(vec![c])
    }

    /// `tau^k`.
    fn skew_tau_pow(&self, k: usize) -> SkewPoly<Self::Elem> {
        let mut v = vec![self.zero(); k + 1];
        v[k] = self.one();
        SkewPoly { coeffs: v }
    }

    fn skew_coeff(&self, f: &SkewPoly<Self::Elem>, i: usize) -> Self::Elem {
        f.coeff(i).cloned().unwrap_or_else(|| self.zero())
    }

    fn skew_add(&self, f: &SkewPoly<Self::Elem>, g: &SkewPoly<Self::Elem>) -> SkewPoly<Self::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let c = (0..n)
            .map(|i| self.add(&self.skew_coeff(f, i), &self.skew_coeff(g, i)))
            .collect();
        self.skew(c)
    }

    fn skew_sub(&self, f: &SkewPoly<Self::Elem>, g: &SkewPoly<Self::Elem>) -> SkewPoly<Self::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let c = (0..n)
            .map(|i| self.sub(&self.skew_coeff(f, i), &self.skew_coeff(g, i)))
            .collect();
        self.skew(c)
    }

    /// Left multiplication by a scalar.
    fn skew_scale(&self, c: &Self::Elem, f: &SkewPoly<Self::Elem>) -> SkewPoly<Self::Elem> {
        self.skew(f.coeffs.iter().map(|a| self.mul(c, a)).collect())
    }

    /// Coefficient `k` of `f g` is `sum_(i+j=k) f_i g_j^(q^i)`.
    fn skew_mul(&self, f: &SkewPoly<Self::Elem>, g: &SkewPoly<Self::Elem>) -> SkewPoly<Self::Elem> {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let mut out = vec![self.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        let mut gt: Vec<Self::Elem> = g.coeffs.clone();
        for (i, fi) in f.coeffs.iter().enumerate() {
            if i > 0 {
                gt = gt.iter().map(|x| self.frob_q(x)).collect();
            }
            if self.is_zero(fi) {
                continue;
            }
            for (j, gj) in gt.iter().enumerate() {
                if !self.is_zero(gj) {
                    out[i + j] = self.add(&out[i + j], &self.mul(fi, gj));
                }
            }
        }
        self.skew(out)
    }

    /// `f = quot * g + rem` with `deg rem < deg g`.
    #[allow(clippy::type_complexity)]
    fn skew_right_divmod(
        &self,
        f: &SkewPoly<Self::Elem>,
        g: &SkewPoly<Self::Elem>,
    ) -> Result<(SkewPoly<Self::Elem>, SkewPoly<Self::Elem>)> {
        let m = g.degree().ok_or(Error::DivisionByZero)?;
        let gm = g.coeffs[m].clone();
        let mut rem = f.clone();
        let Some(n) = f.degree() else {
            return Ok((SkewPoly::zero(), SkewPoly::zero()));
        };
        if n < m {
            return Ok((SkewPoly::zero(), rem));
        }
        let mut quot = vec![self.zero(); n - m + 1];
        while let Some(dr) = rem.degree() {
            if dr < m {
                break;
            }
            let s = dr - m;
            let lead = self.frob_q_iter(&gm, s);
            let c = self.div(&rem.coeffs[dr], &lead).ok_or(Error::DivisionByZero)?;
            let mut mono = vec![self.zero(); s + 1];
            mono[s] = c.clone();
            let term = self.skew_mul(&self.skew(mono), g);
            rem = self.skew_sub(&rem, &term);
            quot[s] = self.add(&quot[s], &c);
        }
        Ok((self.skew(quot), rem))
    }

    /// `sum c_i x^(q^i)`.
    fn skew_eval(&self, f: &SkewPoly<Self::Elem>, x: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut xp = x.clone();
        for (i, c) in f.coeffs.iter().enumerate() {
            if i > 0 {
                xp = self.frob_q(&xp);
            }
            if !self.is_zero(c) {
                acc = self.add(&acc, &self.mul(c, &xp));
            }
        }
        acc
    }

    /// The additive polynomial `sum c_i x^(q^i)` as an ordinary polynomial.
    fn skew_to_additive(&self, f: &SkewPoly<Self::Elem>) -> Poly<Self::Elem> {
        let Some(n) = f.degree() else {
            return Poly::zero();
        };
        let q = self.fq().order();
        let mut c = vec![self.zero(); q.pow(n as u32) + 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            c[q.pow(i as u32)] = a.clone();
        }
        self.poly(c)
    }

    /// Applies a coefficient map.
    fn skew_map<K: FqAlgebra, M: Fn(&Self::Elem) -> K::Elem>(
        &self,
        target: &K,
        f: &SkewPoly<Self::Elem>,
        m: M,
    ) -> SkewPoly<K::Elem>
    where
        K: SkewRing,
    {
        target.skew(f.coeffs.iter().map(m).collect())
    }
}

impl<K: FqAlgebra> SkewRing for K {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, Fq, RationalField};

    #[test]
    fn commutation_rule() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        let tau = f.skew_tau_pow(1);
        let lhs = f.skew_mul(&tau, &f.skew_const(t.clone()));
        assert_eq!(lhs, f.skew(vec![f.zero(), f.pow_u64(&t, 3)]));
        // (T + tau)^2 = T^2 + (T^3 + T) tau + tau^2
        let c = f.skew(vec![t.clone(), f.one()]);
        let sq = f.skew_mul(&c, &c);
        let mid = f.add(&f.pow_u64(&t, 3), &t);
        assert_eq!(sq, f.skew(vec![f.mul(&t, &t), mid, f.one()]));
    }

    #[test]
    fn right_division_remultiplies() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        let num = f.skew(vec![f.zero(), f.one(), f.one()]);
        let den = f.skew(vec![t.clone(), f.one()]);
        let (q, r) = f.skew_right_divmod(&num, &den).unwrap();
        assert_eq!(f.skew_add(&f.skew_mul(&q, &den), &r), num);
        assert!(r.degree().unwrap_or(0) < 1);
        let (q, r) = f.skew_right_divmod(&f.skew_tau_pow(2), &f.skew_tau_pow(1)).unwrap();
        assert_eq!((q, r), (f.skew_tau_pow(1), SkewPoly::zero()));
        assert!(f.skew_right_divmod(&num, &SkewPoly::zero()).is_err());
    }
}
