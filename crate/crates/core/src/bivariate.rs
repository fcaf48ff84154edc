//! Polynomials in `F_q[T][x]` and their factorization into irreducibles.

use crate::algebra::ffactor;
use crate::algebra::{
    Field, FiniteField, FqAlgebra, Fq, FqElem, Gf, Poly, PolyRing, RationalField, RationalFunc,
};

/// `sum_i rows[i](T) x^i` with a nonzero top row; zero has no rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bivar {
    rows: Vec<Poly<FqElem>>,
}

impl Bivar {
    pub fn new(mut rows: Vec<Poly<FqElem>>) -> Bivar {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        Bivar { rows }
    }

    pub fn zero() -> Bivar {
        Bivar { rows: Vec::new() }
    }

    /// A polynomial in `T` alone.
    pub fn from_t(f: Poly<FqElem>) -> Bivar {
        Bivar::new(vec![f])
    }

    pub fn rows(&self) -> &[Poly<FqElem>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> usize {
        self.rows.iter().filter_map(|r| r.degree()).max().unwrap_or(0)
    }

    /// Leading coefficient in `x`.
    pub fn lc(&self) -> &Poly<FqElem> {
        self.rows.last().expect("lc of zero")
    }

    pub fn row(&self, i: usize) -> Option<&Poly<FqElem>> {
        self.rows.get(i)
    }
}

/// Ring operations with `F_q` as context.
pub struct BivarRing {
    pub fq: Fq,
}

impl BivarRing {
    pub fn new(fq: &Fq) -> Self {
        BivarRing { fq: fq.clone() }
    }

    fn row(&self, f: &Bivar, i: usize) -> Poly<FqElem> {
        f.rows.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn one(&self) -> Bivar {
        Bivar::from_t(self.fq.pone())
    }

    /// The variable `x`.
    pub fn x(&self) -> Bivar {
        Bivar::new(vec![Poly::zero(), self.fq.pone()])
    }

    pub fn add(&self, f: &Bivar, g: &Bivar) -> Bivar {
        let n = f.rows.len().max(g.rows.len());
        Bivar::new((0..n).map(|i| self.fq.padd(&self.row(f, i), &self.row(g, i))).collect())
    }

    pub fn sub(&self, f: &Bivar, g: &Bivar) -> Bivar {
        let n = f.rows.len().max(g.rows.len());
        Bivar::new((0..n).map(|i| self.fq.psub(&self.row(f, i), &self.row(g, i))).collect())
    }

    pub fn mul(&self, f: &Bivar, g: &Bivar) -> Bivar {
        if f.is_zero() || g.is_zero() {
            return Bivar::zero();
        }
        let k = &self.fq;
        // flatten to one variable with stride larger than any product T-degree
        let stride = f.deg_t() + g.deg_t() + 1;
        let flat = |b: &Bivar| {
            let mut v = vec![k.zero(); b.rows.len() * stride];
            for (i, r) in b.rows.iter().enumerate() {
                for (j, c) in r.coeffs().iter().enumerate() {
                    v[i * stride + j] = *c;
                }
            }
            k.poly(v)
        };
        let p = k.pmul(&flat(f), &flat(g));
        let nrows = f.rows.len() + g.rows.len() - 1;
        let rows = (0..nrows)
            .map(|i| {
                let lo = (i * stride).min(p.len());
                let hi = ((i + 1) * stride).min(p.len());
                k.poly(p.coeffs()[lo..hi].to_vec())
            })
            .collect();
        Bivar::new(rows)
    }

    pub fn scale(&self, f: &Bivar, c: &Poly<FqElem>) -> Bivar {
        Bivar::new(f.rows.iter().map(|r| self.fq.pmul(r, c)).collect())
    }

    pub fn pow(&self, f: &Bivar, e: usize) -> Bivar {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, f))
    }

    /// Divides every row by `c` exactly.
    pub fn div_t(&self, f: &Bivar, c: &Poly<FqElem>) -> Option<Bivar> {
        let rows: Option<Vec<_>> = f.rows.iter().map(|r| self.fq.pdiv_exact(r, c)).collect();
        rows.map(Bivar::new)
    }

    /// `f / g` when the quotient lies in `F_q[T][x]`.
    pub fn div_exact(&self, f: &Bivar, g: &Bivar) -> Option<Bivar> {
        let k = &self.fq;
        let dg = g.deg_x()?;
        let Some(df) = f.deg_x() else {
            return Some(Bivar::zero());
        };
        if df < dg || f.deg_t() < g.deg_t() {
            return None;
        }
        let lg = g.lc();
        let mut r = f.rows.clone();
        let mut q = vec![Poly::zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            if r[i + dg].is_zero() {
                continue;
            }
            let c = k.pdiv_exact(&r[i + dg], lg)?;
            for (j, gj) in g.rows.iter().enumerate() {
                if !gj.is_zero() {
                    r[i + j] = k.psub(&r[i + j], &k.pmul(&c, gj));
                }
            }
            q[i] = c;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Bivar::new(q))
    }

    /// Gcd of the rows, monic in `T`.
    pub fn content(&self, f: &Bivar) -> Poly<FqElem> {
        let k = &self.fq;
        let mut g = Poly::zero();
        for r in &f.rows {
            g = k.pgcd(&g, r);
            if g.degree() == Some(0) {
                break;
            }
        }
        g
    }

    /// Primitive part with monic-in-`T` content removed and a normalized leading coefficient.
    pub fn primitive(&self, f: &Bivar) -> Bivar {
        if f.is_zero() {
            return Bivar::zero();
        }
        let c = self.content(f);
        let p = self.div_t(f, &c).unwrap();
        self.normalize_unit(&p)
    }

    /// Scales by a unit of `F_q` so that the leading coefficient is monic in `T`.
    pub fn normalize_unit(&self, f: &Bivar) -> Bivar {
        let k = &self.fq;
        let l = *f.lc().lc().unwrap();
        if k.is_one(&l) {
            return f.clone();
        }
        let i = k.inv(&l).unwrap();
        Bivar::new(f.rows.iter().map(|r| k.pscale(r, &i)).collect())
    }

    pub fn deriv_x(&self, f: &Bivar) -> Bivar {
        let k = &self.fq;
        Bivar::new(
            f.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| k.pscale(r, &k.from_int(i as i64)))
                .collect(),
        )
    }

    /// Exchanges the roles of `T` and `x`.
    pub fn swap(&self, f: &Bivar) -> Bivar {
        let k = &self.fq;
        let dt = f.deg_t();
        let mut rows = vec![vec![k.zero(); f.rows.len()]; dt + 1];
        for (i, r) in f.rows.iter().enumerate() {
            for (j, c) in r.coeffs().iter().enumerate() {
                rows[j][i] = *c;
            }
        }
        Bivar::new(rows.into_iter().map(|v| k.poly(v)).collect())
    }

    /// True when every exponent of `x` and `T` is divisible by `p`.
    pub fn is_pth_power(&self, f: &Bivar) -> bool {
        let p = self.fq.p() as usize;
        f.rows.iter().enumerate().all(|(i, r)| {
            r.is_zero()
                || (i % p == 0
                    && r.coeffs().iter().enumerate().all(|(j, c)| c.0 == 0 || j % p == 0))
        })
    }

    /// `g` with `g^p = f` for `f` a `p`-th power.
    pub fn pth_root(&self, f: &Bivar) -> Bivar {
        let k = &self.fq;
        let p = k.p() as usize;
        Bivar::new(
            f.rows
                .iter()
                .step_by(p)
                .map(|r| k.poly(r.coeffs().iter().step_by(p).map(|c| k.p_root(c)).collect()))
                .collect(),
        )
    }

    /// `f(t0, x)` over a field containing `F_q`.
    pub fn eval_t<K: FqAlgebra>(&self, k: &K, f: &Bivar, t0: &K::Elem) -> Poly<K::Elem> {
        k.poly(
            f.rows
                .iter()
                .map(|r| r.coeffs().iter().rev().fold(k.zero(), |acc, c| {
                    k.add(&k.mul(&acc, t0), &k.from_fq(*c))
                }))
                .collect(),
        )
    }

    /// `D f` in `F_q[T][x]` for the least common denominator `D` of the coefficients.
    pub fn from_rational(&self, f: &Poly<RationalFunc>) -> Bivar {
        let k = &self.fq;
        let mut den = k.pone();
        for c in f.coeffs() {
            let g = k.pgcd(&den, c.den());
            den = k.pmul(&den, &k.pdiv_exact(c.den(), &g).unwrap());
        }
        Bivar::new(
            f.coeffs()
                .iter()
                .map(|c| k.pmul(c.num(), &k.pdiv_exact(&den, c.den()).unwrap()))
                .collect(),
        )
    }

    pub fn to_rational(&self, field: &RationalField, f: &Bivar) -> Poly<RationalFunc> {
        field.poly(f.rows.iter().map(|r| field.from_poly(r.clone())).collect())
    }

    /// Gcd in `F_q[T][x]` (primitive, normalized) via Euclid over `F_q(T)`.
    pub fn gcd(&self, f: &Bivar, g: &Bivar) -> Bivar {
        let field = RationalField::new(&self.fq);
        let h = field.pgcd(&self.to_rational(&field, f), &self.to_rational(&field, g));
        let cf = self.content(f);
        let cg = self.content(g);
        let ct = self.fq.pgcd(&cf, &cg);
        let hp = self.primitive(&self.from_rational(&h));
        self.scale(&hp, &ct)
    }
}

/// An irreducible factor with its multiplicity.
pub type Factor = (Bivar, usize);

/// Specialization point search: `F_q`, then `F_(q^2)`, `F_(q^3)`, `F_(q^4)`.
pub const MAX_SPECIALIZATION_DEGREE: usize = 4;

/// True if some specialization shows `f` squarefree (then `gcd(f, f_x) = 1`).
pub fn squarefree_by_specialization(ring: &BivarRing, f: &Bivar) -> bool {
    let fq = &ring.fq;
    let n = f.deg_x().unwrap_or(0);
    if n == 0 {
        return true;
    }
    for e in 1..=2 {
        let k = Gf::of_degree(fq, e);
        for t0 in k.elements().into_iter().take(64) {
            let s = ring.eval_t(&k, f, &t0);
            if s.degree() != Some(n) {
                continue;
            }
            if k.pgcd(&s, &k.pderiv(&s)).degree() == Some(0) {
                return true;
            }
        }
    }
    false
}

/// Factors `f != 0` in `F_q[T][x]`: content factors in `T` appear with `deg_x = 0`.
/// The product of the factors equals `f` up to a unit of `F_q` (asserted).
pub fn bivariate_factor(fq: &Fq, f: &Bivar) -> Vec<Factor> {
    let ring = BivarRing::new(fq);
    assert!(!f.is_zero(), "factor of zero");
    let mut out = Vec::new();
    let c = ring.content(f);
    if c.degree().unwrap_or(0) > 0 {
        let (_, fac) = crate::algebra::poly_factor(fq, &c).unwrap();
        out.extend(fac.into_iter().map(|(p, m)| (Bivar::from_t(p.poly().clone()), m)));
    }
    let pp = ring.primitive(f);
    factor_primitive(&ring, &pp, 1, &mut out);
    merge(&ring, &mut out);
    let back = out
        .iter()
        .fold(ring.one(), |acc, (g, m)| ring.mul(&acc, &ring.pow(g, *m)));
    assert_eq!(
        ring.normalize_unit(&back),
        ring.normalize_unit(f),
        "bivariate factors do not re-multiply to the input"
    );
    out
}

fn merge(ring: &BivarRing, out: &mut Vec<Factor>) {
    let mut merged: Vec<Factor> = Vec::new();
    for (g, m) in out.drain(..) {
        let g = ring.normalize_unit(&g);
        if let Some(e) = merged.iter_mut().find(|(h, _)| *h == g) {
            e.1 += m;
        } else {
            merged.push((g, m));
        }
    }
    merged.sort_by(|a, b| {
        (a.0.deg_x(), a.0.deg_t(), &a.0.rows).cmp(&(b.0.deg_x(), b.0.deg_t(), &b.0.rows))
    });
    *out = merged;
}

/// Factors a primitive `f` (content 1 in `T`), pushing factors with multiplicities scaled by `mult`.
fn factor_primitive(ring: &BivarRing, f: &Bivar, mult: usize, out: &mut Vec<Factor>) {
    let Some(n) = f.deg_x() else { return };
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push((f.clone(), mult));
        return;
    }
    let fx = ring.deriv_x(f);
    if fx.is_zero() {
        // f = g(T, x^p): factor with the variables exchanged, or take a p-th root
        if ring.is_pth_power(f) {
            factor_primitive(ring, &ring.primitive(&ring.pth_root(f)), mult * ring.fq.p() as usize, out);
            return;
        }
        let s = ring.swap(f);
        let mut sub = Vec::new();
        let c = ring.content(&s);
        if c.degree().unwrap_or(0) > 0 {
            // content of the swapped polynomial is a polynomial in x alone
            let (_, fac) = crate::algebra::poly_factor(&ring.fq, &c).unwrap();
            for (p, m) in fac {
                sub.push((Bivar::from_t(p.poly().clone()), m));
            }
        }
        factor_primitive(ring, &ring.primitive(&s), 1, &mut sub);
        for (g, m) in sub {
            out.push((ring.normalize_unit(&ring.swap(&g)), m * mult));
        }
        return;
    }
    if squarefree_by_specialization(ring, f) {
        for g in crate::hensel::factor_squarefree(ring, f) {
            out.push((g, mult));
        }
        return;
    }
    let g = ring.gcd(f, &fx);
    if g.deg_x() == Some(0) {
        for h in crate::hensel::factor_squarefree(ring, f) {
            out.push((h, mult));
        }
        return;
    }
    // separable squarefree part: each irreducible factor with nonzero x-derivative appears once
    let sep = ring.primitive(&ring.div_exact(f, &g).unwrap());
    let mut rest = f.clone();
    if sep.deg_x().unwrap_or(0) > 0 {
        for h in crate::hensel::factor_squarefree(ring, &sep) {
            let mut e = 0;
            while let Some(r) = ring.div_exact(&rest, &h) {
                rest = r;
                e += 1;
            }
            out.push((h, e * mult));
        }
    }
    let rest = ring.primitive(&rest);
    factor_primitive(ring, &rest, mult, out);
}

/// Roots in a finite field `K` of a specialization, as a convenience for callers.
pub fn specialized_roots<K: FiniteField>(ring: &BivarRing, k: &K, f: &Bivar, t0: &K::Elem) -> Vec<K::Elem> {
    ffactor::roots(k, &ring.eval_t(k, f, t0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(fq: &Fq, c: &[u8]) -> Poly<FqElem> {
        fq.poly(c.iter().map(|&x| FqElem(x)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let f3 = Fq::new(3, 1).unwrap();
        // x^2 - T^2
        let f = Bivar::new(vec![p(&f3, &[0, 0, 2]), Poly::zero(), p(&f3, &[1])]);
        let fac = bivariate_factor(&f3, &f);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(g, m)| g.deg_x() == Some(1) && *m == 1));
    }

    #[test]
    fn kummer_quadratic_is_irreducible() {
        let f3 = Fq::new(3, 1).unwrap();
        // x^2 + T
        let f = Bivar::new(vec![p(&f3, &[0, 1]), Poly::zero(), p(&f3, &[1])]);
        assert_eq!(bivariate_factor(&f3, &f), vec![(f.clone(), 1)]);
    }

    #[test]
    fn inseparable_and_content() {
        let f2 = Fq::new(2, 1).unwrap();
        let ring = BivarRing::new(&f2);
        // T (x^2 + T) (x + T)^2
        let a = Bivar::new(vec![p(&f2, &[0, 1]), Poly::zero(), p(&f2, &[1])]);
        let b = Bivar::new(vec![p(&f2, &[0, 1]), p(&f2, &[1])]);
        let f = ring.scale(&ring.mul(&a, &ring.mul(&b, &b)), &p(&f2, &[0, 1]));
        let fac = bivariate_factor(&f2, &f);
        assert_eq!(fac.len(), 3);
        assert!(fac.contains(&(a, 1)));
        assert!(fac.contains(&(b, 2)));
    }
}
