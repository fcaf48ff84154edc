//! Primes of `A = F_q[T]`: the monic irreducibles.

use serde::{Serialize, Serializer};

use super::display::fmt_poly;
use super::ffactor;
use super::field::Field;
use super::fq::{Fq, FqElem};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// A monic irreducible polynomial in `T`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimePoly(Poly<FqElem>);

impl PrimePoly {
    pub fn new(fq: &Fq, f: Poly<FqElem>) -> Result<PrimePoly> {
        match f.lc() {
            Some(l) if fq.is_one(l) => {}
            _ => return Err(Error::InvalidInput("prime must be monic".into())),
        }
        if !ffactor::is_irreducible(fq, &f) {
            return Err(Error::InvalidInput("polynomial is not irreducible".into()));
        }
        Ok(PrimePoly(f))
    }

    /// `T + c`.
    pub fn linear(fq: &Fq, c: FqElem) -> PrimePoly {
        PrimePoly(fq.poly(vec![c, fq.one()]))
    }

    pub fn poly(&self) -> &Poly<FqElem> {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn display(&self, fq: &Fq) -> String {
        fmt_poly(fq, &self.0, "T")
    }
}

/// Serializes as the coefficient list, low to high.
impl Serialize for PrimePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.coeffs().iter().map(|c| c.0).collect::<Vec<_>>().serialize(s)
    }
}

/// All monic polynomials of degree `d` ordered by `(c_(d-1), ..., c_0)` lexicographically.
pub fn monics(fq: &Fq, d: usize) -> impl Iterator<Item = Poly<FqElem>> + '_ {
    let q = fq.order() as u64;
    let total = q.pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(FqElem((idx % q) as u8));
            idx /= q;
        }
        c.push(FqElem(1));
        Poly::from_trimmed(c)
    })
}

/// Monic irreducibles of degree `<= max_deg`, ordered by degree then lexicographically.
pub fn enumerate_primes(fq: &Fq, max_deg: usize) -> Vec<PrimePoly> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        out.extend(primes_of_degree(fq, d));
    }
    out
}

pub fn primes_of_degree(fq: &Fq, d: usize) -> Vec<PrimePoly> {
    monics(fq, d)
        .filter(|f| d == 1 || (f.coeffs()[0].0 != 0 && ffactor::is_irreducible(fq, f)))
        .map(PrimePoly)
        .collect()
}

/// Number of monic irreducibles of degree `n` by Moebius inversion.
pub fn necklace_count(q: u64, n: u32) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(d) * (q as i64).pow(n / d);
        }
    }
    (total / n as i64) as u64
}

fn mobius(mut n: u32) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Factorization in `A`: leading unit and monic prime powers in deterministic order.
pub fn poly_factor(fq: &Fq, f: &Poly<FqElem>) -> Result<(FqElem, Vec<(PrimePoly, usize)>)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let (lc, fac) = ffactor::factor(fq, f);
    let fac: Vec<(PrimePoly, usize)> = fac.into_iter().map(|(g, m)| (PrimePoly(g), m)).collect();
    let back = fac
        .iter()
        .fold(fq.pconst(lc), |acc, (g, m)| fq.pmul(&acc, &fq.ppow(g.poly(), *m as u64)));
    assert_eq!(&back, f, "factorization does not re-multiply to its input");
    Ok((lc, fac))
}

/// Multiplicity of `P` in `f != 0`.
pub fn valuation(fq: &Fq, f: &Poly<FqElem>, p: &PrimePoly) -> usize {
    let mut v = 0;
    let mut g = f.clone();
    while let Some(h) = fq.pdiv_exact(&g, p.poly()) {
        v += 1;
        g = h;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_lists() {
        let f2 = Fq::new(2, 1).unwrap();
        let ps: Vec<String> = enumerate_primes(&f2, 2).iter().map(|p| p.display(&f2)).collect();
        assert_eq!(ps, vec!["T", "T + 1", "T^2 + T + 1"]);
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(enumerate_primes(&f3, 2).len(), 6);
    }

    #[test]
    fn counts_match_necklace_formula() {
        for q in [2usize, 3, 4] {
            let fq = Fq::with_order(q).unwrap();
            for n in 1..=5usize {
                if (q as u64).pow(n as u32) > 5000 {
                    continue;
                }
                assert_eq!(primes_of_degree(&fq, n).len() as u64, necklace_count(q as u64, n as u32));
            }
        }
    }
}
