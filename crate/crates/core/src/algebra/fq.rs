//! Table-driven arithmetic for the constant fields `F_q`, `q = p^e <= 16`, `p in {2, 3}`.
//!
//! Each `(p, e)` has one fixed Conway modulus so printed output and
//! certificates are reproducible.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{FiniteField, Field, FqAlgebra};
use crate::error::{Error, Result};

/// An element of `F_q`: the integer `sum c_i p^i` of its coordinates in the basis `1, w, ..., w^(e-1)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FqElem(pub u8);

/// Conway polynomials, coefficients low to high, monic.
const CONWAY: &[(u8, u8, &[u8])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqConfig {
    pub p: u8,
    pub e: u8,
    /// Monic modulus over `F_p`, coefficients low to high.
    pub modulus: Vec<u8>,
    /// A primitive element (multiplicative order `q - 1`).
    pub generator: FqElem,
}

#[derive(Debug)]
struct Tables {
    config: FqConfig,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

#[derive(Clone)]
pub struct Fq {
    t: Arc<Tables>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.t.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.t.config == other.t.config
    }
}
impl Eq for Fq {}

fn digits(v: usize, p: usize, e: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(e);
    let mut v = v;
    for _ in 0..e {
        d.push(v % p);
        v /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Fq {
    pub fn new(p: u8, e: u8) -> Result<Fq> {
        let modulus = CONWAY
            .iter()
            .find(|(pp, ee, _)| *pp == p && *ee == e)
            .map(|(_, _, m)| m.to_vec())
            .ok_or_else(|| Error::UnsupportedField(format!("p = {p}, e = {e}")))?;
        let (pu, eu) = (p as usize, e as usize);
        let q = pu.pow(e as u32);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, pu, eu);
            neg[a] = undigits(&da.iter().map(|&c| (pu - c) % pu).collect::<Vec<_>>(), pu) as u8;
            for b in 0..q {
                let db = digits(b, pu, eu);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * q + b] = undigits(&s, pu) as u8;
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0usize; 2 * eu];
                for i in 0..eu {
                    for j in 0..eu {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % pu;
                    }
                }
                for k in (eu..2 * eu).rev() {
                    let c = prod[k];
                    if c != 0 {
                        for (i, &m) in modulus.iter().enumerate().take(eu) {
                            let idx = k - eu + i;
                            prod[idx] = (prod[idx] + pu * pu - c * m as usize) % pu;
                        }
                        prod[k] = 0;
                    }
                }
                mul[a * q + b] = undigits(&prod[..eu], pu) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| Error::UnsupportedField("modulus is reducible".into()))?;
            inv[a] = b as u8;
        }
        // root of the modulus; Conway polynomials are primitive
        let generator = if e == 1 {
            FqElem(neg[modulus[0] as usize])
        } else {
            FqElem(pu as u8)
        };
        let fq = Fq {
            t: Arc::new(Tables {
                config: FqConfig { p, e, modulus, generator },
                q,
                add,
                mul,
                neg,
                inv,
            }),
        };
        if fq.mult_order(generator) != q - 1 {
            return Err(Error::UnsupportedField("stored generator is not primitive".into()));
        }
        Ok(fq)
    }

    /// `F_q` from its order.
    pub fn with_order(q: usize) -> Result<Fq> {
        match q {
            2 => Fq::new(2, 1),
            4 => Fq::new(2, 2),
            8 => Fq::new(2, 3),
            16 => Fq::new(2, 4),
            3 => Fq::new(3, 1),
            9 => Fq::new(3, 2),
            _ => Err(Error::UnsupportedField(format!("q = {q}"))),
        }
    }

    pub fn config(&self) -> &FqConfig {
        &self.t.config
    }

    pub fn order(&self) -> usize {
        self.t.q
    }

    pub fn p(&self) -> u8 {
        self.t.config.p
    }

    pub fn generator(&self) -> FqElem {
        self.t.config.generator
    }

    pub fn elem(&self, v: u8) -> Result<FqElem> {
        if (v as usize) < self.t.q {
            Ok(FqElem(v))
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    pub fn all(&self) -> impl Iterator<Item = FqElem> {
        (0..self.t.q as u8).map(FqElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.t.q as u8).map(FqElem)
    }

    pub fn mult_order(&self, a: FqElem) -> usize {
        if a.0 == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x.0 != 1 {
            x = Field::mul(self, &x, &a);
            k += 1;
        }
        k
    }

    /// Integer image `n mod p`.
    pub fn int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u8)
    }

    /// Checked arithmetic on raw elements (the `ff_arith` entry point).
    pub fn arith(&self, x: FqElem, y: FqElem, op: FfOp) -> Result<FqElem> {
        self.elem(x.0)?;
        self.elem(y.0)?;
        Ok(match op {
            FfOp::Add => Field::add(self, &x, &y),
            FfOp::Mul => Field::mul(self, &x, &y),
            FfOp::Inv => Field::inv(self, &x).ok_or(Error::DivisionByZero)?,
            FfOp::Pow(k) => self.pow_u64(&x, k),
            FfOp::Frobenius(k) => {
                let mut r = x;
                for _ in 0..k {
                    r = self.pow_u64(&r, self.p() as u64);
                }
                r
            }
        })
    }

    /// Formats an element with `w` for the generator of the modulus basis.
    pub fn format(&self, a: FqElem) -> String {
        let (p, e) = (self.p() as usize, self.config().e as usize);
        if e == 1 {
            return a.0.to_string();
        }
        let d = digits(a.0 as usize, p, e);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            format!("({})", terms.join("+"))
        }
    }

    /// The element `w` (class of the modulus variable).
    pub fn w(&self) -> FqElem {
        if self.config().e == 1 {
            self.generator()
        } else {
            FqElem(self.p())
        }
    }
}

/// Operation selector for [`Fq::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
    Frobenius(u32),
}

impl Field for Fq {
    type Elem = FqElem;

    #[inline]
    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    #[inline]
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    #[inline]
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }
    #[inline]
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(self.t.add[a.0 as usize * self.t.q + b.0 as usize])
    }
    #[inline]
    fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(self.t.neg[a.0 as usize])
    }
    #[inline]
    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }
    #[inline]
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(self.t.mul[a.0 as usize * self.t.q + b.0 as usize])
    }
    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            None
        } else {
            Some(FqElem(self.t.inv[a.0 as usize]))
        }
    }
    fn characteristic(&self) -> u32 {
        self.p() as u32
    }
    fn from_int(&self, n: i64) -> FqElem {
        self.int(n)
    }
}

impl FqAlgebra for Fq {
    fn fq(&self) -> &Fq {
        self
    }
    fn from_fq(&self, c: FqElem) -> FqElem {
        c
    }
    fn frob_q(&self, a: &FqElem) -> FqElem {
        *a
    }
}

impl FiniteField for Fq {
    fn degree(&self) -> usize {
        1
    }
    fn coords(&self, a: &FqElem) -> Vec<FqElem> {
        vec![*a]
    }
    fn from_coords(&self, c: &[FqElem]) -> FqElem {
        c.first().copied().unwrap_or(FqElem(0))
    }
    fn elements(&self) -> Vec<FqElem> {
        self.all().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_cube_roots() {
        let f4 = Fq::new(2, 2).unwrap();
        let w = f4.w();
        let w2 = f4.mul(&w, &w);
        assert_eq!(f4.mul(&w, &w2), f4.one());
        // frobenius of w is w^2 = w + 1
        let fw = f4.arith(w, w, FfOp::Frobenius(1)).unwrap();
        assert_eq!(fw, w2);
        assert_eq!(w2, f4.add(&w, &f4.one()));
    }

    #[test]
    fn f3_inverse_of_two() {
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(f3.arith(FqElem(2), FqElem(0), FfOp::Inv).unwrap(), FqElem(2));
        assert_eq!(f3.arith(FqElem(0), FqElem(0), FfOp::Inv), Err(Error::DivisionByZero));
        assert_eq!(f3.arith(FqElem(5), FqElem(0), FfOp::Add), Err(Error::ConfigMismatch));
    }

    #[test]
    fn every_table_is_a_field_with_primitive_generator() {
        for q in [2, 3, 4, 8, 9, 16] {
            let k = Fq::with_order(q).unwrap();
            assert_eq!(k.mult_order(k.generator()), q - 1);
            for a in k.all() {
                for b in k.all() {
                    for c in k.all() {
                        let lhs = k.mul(&a, &k.add(&b, &c));
                        let rhs = k.add(&k.mul(&a, &b), &k.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        assert!(Fq::with_order(5).is_err());
    }
}
