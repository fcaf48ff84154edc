//! Factorization over finite fields: squarefree split, distinct-degree, equal-degree.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::poly::{Poly, PolyRing};

/// Default seed for the randomized equal-degree splitter.
pub const EDF_SEED: u64 = 0x5eed_f00d;

/// Rows `x^(i Q) mod f`, `Q = |K|`. The map `g -> g^Q mod f` is `K`-linear.
pub struct FrobeniusMap<E> {
    rows: Vec<Poly<E>>,
}

impl<E: Clone> FrobeniusMap<E> {
    pub fn new<K: FiniteField<Elem = E>>(k: &K, f: &Poly<E>) -> Self {
        let n = f.degree().expect("nonzero modulus");
        let xq = k.ppowmod(&k.px(), &k.order(), f);
        let mut rows = Vec::with_capacity(n);
        let mut cur = k.prem(&k.pone(), f).unwrap();
        for _ in 0..n {
            rows.push(cur.clone());
            cur = k.pmulmod(&cur, &xq, f);
        }
        FrobeniusMap { rows }
    }

    /// `g^Q mod f` for `g` already reduced mod `f`.
    pub fn apply<K: FiniteField<Elem = E>>(&self, k: &K, g: &Poly<E>) -> Poly<E> {
        let n = self.rows.len();
        let mut acc = vec![k.zero(); n];
        for (c, row) in g.coeffs().iter().zip(&self.rows) {
            if k.is_zero(c) {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row.coeffs()) {
                *a = k.add(a, &k.mul(c, r));
            }
        }
        k.poly(acc)
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = k.pmonic(f);
    let frob = FrobeniusMap::new(k, &f);
    let x = k.px();
    // powers[j] = x^(Q^j) mod f
    let mut powers = vec![x.clone()];
    for j in 1..=n {
        let next = frob.apply(k, &powers[j - 1]);
        powers.push(next);
    }
    if powers[n] != x {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = k.psub(&powers[n / r], &x);
        k.pgcd(&h, &f).degree() == Some(0)
    })
}

/// `f` with `f' = 0` written as `g(x^p)`, returns `g` with coefficients p-th rooted.
pub fn poly_p_root<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Poly<K::Elem> {
    let p = k.characteristic() as usize;
    let c = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| k.p_root(a))
        .collect();
    k.poly(c)
}

/// Squarefree decomposition of a monic `f`: pairwise coprime squarefree parts with multiplicities.
pub fn squarefree<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Vec<(Poly<K::Elem>, usize)> {
    let f = k.pmonic(f);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = k.characteristic() as usize;
    let mut c = k.pgcd(&f, &k.pderiv(&f));
    let mut w = k.pdiv_exact(&f, &c).unwrap();
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = k.pgcd(&w, &c);
        let z = k.pdiv_exact(&w, &y).unwrap();
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = k.pdiv_exact(&c, &w).unwrap();
    }
    if c.degree() != Some(0) {
        let root = poly_p_root(k, &c);
        for (g, m) in squarefree(k, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree `f`.
pub fn ddf<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Vec<(Poly<K::Elem>, usize)> {
    let mut out = Vec::new();
    let mut rest = k.pmonic(f);
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let frob = FrobeniusMap::new(k, &rest);
    let x = k.prem(&k.px(), &rest).unwrap();
    let mut h = x.clone();
    let mut d = 0;
    loop {
        d += 1;
        let n = rest.degree().unwrap();
        if n == 0 {
            break;
        }
        if 2 * d > n {
            out.push((rest.clone(), n));
            break;
        }
        h = frob.apply(k, &h);
        let g = k.pgcd(&k.psub(&h, &x), &rest);
        if g.degree().unwrap() > 0 {
            rest = k.pdiv_exact(&rest, &g).unwrap();
            out.push((g, d));
        }
    }
    out
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree `d`.
pub fn edf<K: FiniteField, R: Rng + ?Sized>(
    k: &K,
    f: &Poly<K::Elem>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<K::Elem>> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let char2 = k.characteristic() == 2;
    let q_abs_bits = k.degree() * k.fq().config().e as usize;
    let exponent = if char2 {
        BigUint::one()
    } else {
        (num_traits::pow(k.order(), d) - BigUint::one()) >> 1
    };
    loop {
        let a: Vec<K::Elem> = (0..n).map(|_| k.random(rng)).collect();
        let a = k.poly(a);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if char2 {
            // trace from F_(Q^d) to F_2 of the class of a in each residue field
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..q_abs_bits * d {
                t = k.pmulmod(&t, &t, f);
                acc = k.padd(&acc, &t);
            }
            acc
        } else {
            k.psub(&k.ppowmod(&a, &exponent, f), &k.pone())
        };
        let g = k.pgcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = k.pdiv_exact(f, &g).unwrap();
            let mut out = edf(k, &g, d, rng);
            out.extend(edf(k, &h, d, rng));
            return out;
        }
    }
}

/// Deterministic ordering key for factor lists.
pub fn sort_key<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> (usize, Vec<u8>) {
    let mut key = Vec::new();
    for c in f.coeffs().iter().rev() {
        key.extend(k.coords(c).iter().rev().map(|x| x.0));
    }
    (f.len(), key)
}

/// Full factorization with a caller-supplied generator: `(lc, [(monic irreducible, multiplicity)])`.
#[allow(clippy::type_complexity)]
pub fn factor_with<K: FiniteField, R: Rng + ?Sized>(
    k: &K,
    f: &Poly<K::Elem>,
    rng: &mut R,
) -> (K::Elem, Vec<(Poly<K::Elem>, usize)>) {
    let lc = f.lc().cloned().expect("factor of zero polynomial");
    let mut out = Vec::new();
    for (part, m) in squarefree(k, f) {
        for (g, d) in ddf(k, &part) {
            for h in edf(k, &g, d, rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by_key(|(g, m)| (sort_key(k, g), *m));
    assert_eq!(
        k.pscale(
            &out.iter()
                .fold(k.pone(), |acc, (g, m)| k.pmul(&acc, &k.ppow(g, *m as u64))),
            &lc
        ),
        *f
    );
    (lc, out)
}

/// [`factor_with`] using the fixed default seed.
#[allow(clippy::type_complexity)]
pub fn factor<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> (K::Elem, Vec<(Poly<K::Elem>, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    factor_with(k, f, &mut rng)
}

/// Degrees of the irreducible factors of a squarefree `f`, sorted ascending.
pub fn factor_degrees<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in ddf(k, f) {
        let cnt = g.degree().unwrap() / d;
        out.extend(std::iter::repeat(d).take(cnt));
    }
    out.sort_unstable();
    out
}

/// Distinct roots of `f` in `K`.
pub fn roots<K: FiniteField>(k: &K, f: &Poly<K::Elem>) -> Vec<K::Elem> {
    let f = k.pmonic(f);
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let frob = FrobeniusMap::new(k, &f);
    let x = k.prem(&k.px(), &f).unwrap();
    let xq = frob.apply(k, &x);
    let g = k.pgcd(&k.psub(&xq, &x), &f);
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out: Vec<K::Elem> = edf(k, &g, 1, &mut rng)
        .into_iter()
        .map(|h| k.neg(&h.coeffs()[0]))
        .collect();
    out.sort_by_key(|r| k.coords(r).iter().rev().map(|c| c.0).collect::<Vec<_>>());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::Gf;
    use crate::algebra::fq::{Fq, FqElem};

    #[test]
    fn t9_minus_t_splits_into_all_low_degree_primes() {
        let f3 = Fq::new(3, 1).unwrap();
        let mut c = vec![FqElem(0); 10];
        c[1] = FqElem(2);
        c[9] = FqElem(1);
        let f = f3.poly(c);
        let (_, fac) = factor(&f3, &f);
        assert_eq!(fac.len(), 6);
        assert!(fac.iter().all(|(g, m)| *m == 1 && g.degree().unwrap() <= 2));
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        let f2 = Fq::new(2, 1).unwrap();
        // (x+1)^4 x^3
        let a = f2.ppow(&f2.poly(vec![FqElem(1), FqElem(1)]), 4);
        let f = f2.pmul(&a, &f2.ppow(&f2.px(), 3));
        let (_, fac) = factor(&f2, &f);
        assert_eq!(fac, vec![(f2.px(), 3), (f2.poly(vec![FqElem(1), FqElem(1)]), 4)]);
    }

    #[test]
    fn roots_in_extension() {
        let f2 = Fq::new(2, 1).unwrap();
        let k = Gf::of_degree(&f2, 2);
        // x^2 + x + 1 has both roots in F_4
        let f = k.lift_poly(&f2.poly(vec![FqElem(1), FqElem(1), FqElem(1)]));
        assert_eq!(roots(&k, &f).len(), 2);
        assert!(is_irreducible(&f2, &f2.poly(vec![FqElem(1), FqElem(1), FqElem(1)])));
    }
}
