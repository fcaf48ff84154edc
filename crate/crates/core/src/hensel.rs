//! Squarefree factorization in `F_q[T][x]` by specialization `T = t0`, Hensel lifting in
//! `K[[T - t0]]` and recombination of the lifted factors.

use crate::algebra::ffactor;
use crate::algebra::{Field, FiniteField, FqElem, Gf, Poly, PolyRing};
use crate::bivariate::{Bivar, BivarRing};

/// Largest specialization field degree tried.
const MAX_EXT: usize = 12;
/// Stop searching once this many good points have been examined.
const POINTS_WANTED: usize = 8;

/// A polynomial in `x` with coefficients truncated power series: `c[i][j]` is the
/// coefficient of `x^i s^j`.
type SPoly<E> = Vec<Vec<E>>;

struct Series<'a, K: Field> {
    k: &'a K,
    prec: usize,
}

impl<K: Field> Series<'_, K> {
    fn zero_series(&self) -> Vec<K::Elem> {
        vec![self.k.zero(); self.prec]
    }

    fn smul(&self, a: &[K::Elem], b: &[K::Elem], n: usize) -> Vec<K::Elem> {
        let k = self.k;
        let mut out = self.zero_series();
        let la = a.iter().rposition(|x| !k.is_zero(x)).map_or(0, |i| i + 1).min(n);
        let lb = b.iter().rposition(|x| !k.is_zero(x)).map_or(0, |i| i + 1).min(n);
        for i in 0..la {
            if k.is_zero(&a[i]) {
                continue;
            }
            for j in 0..lb.min(n - i) {
                if !k.is_zero(&b[j]) {
                    out[i + j] = k.add(&out[i + j], &k.mul(&a[i], &b[j]));
                }
            }
        }
        out
    }

    fn sinv(&self, a: &[K::Elem]) -> Vec<K::Elem> {
        let k = self.k;
        let a0i = k.inv(&a[0]).expect("series inverse needs a unit");
        let mut out = self.zero_series();
        out[0] = a0i.clone();
        for n in 1..self.prec {
            let mut s = k.zero();
            for i in 1..=n {
                s = k.add(&s, &k.mul(&a[i], &out[n - i]));
            }
            out[n] = k.neg(&k.mul(&s, &a0i));
        }
        out
    }

    fn trim(&self, mut f: SPoly<K::Elem>) -> SPoly<K::Elem> {
        while f.last().is_some_and(|c| c.iter().all(|x| self.k.is_zero(x))) {
            f.pop();
        }
        f
    }

    fn from_poly(&self, f: &Poly<K::Elem>) -> SPoly<K::Elem> {
        f.coeffs()
            .iter()
            .map(|c| {
                let mut s = self.zero_series();
                s[0] = c.clone();
                s
            })
            .collect()
    }

    fn add(&self, f: &SPoly<K::Elem>, g: &SPoly<K::Elem>) -> SPoly<K::Elem> {
        let k = self.k;
        let n = f.len().max(g.len());
        let z = self.zero_series();
        let out = (0..n)
            .map(|i| {
                let a = f.get(i).unwrap_or(&z);
                let b = g.get(i).unwrap_or(&z);
                a.iter().zip(b).map(|(x, y)| k.add(x, y)).collect()
            })
            .collect();
        self.trim(out)
    }

    fn neg(&self, f: &SPoly<K::Elem>) -> SPoly<K::Elem> {
        f.iter().map(|c| c.iter().map(|x| self.k.neg(x)).collect()).collect()
    }

    fn sub(&self, f: &SPoly<K::Elem>, g: &SPoly<K::Elem>) -> SPoly<K::Elem> {
        self.add(f, &self.neg(g))
    }

    fn mul(&self, f: &SPoly<K::Elem>, g: &SPoly<K::Elem>, n: usize) -> SPoly<K::Elem> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let k = self.k;
        let mut out = vec![self.zero_series(); f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                let p = self.smul(a, b, n);
                let o = &mut out[i + j];
                for (x, y) in o.iter_mut().zip(p) {
                    *x = k.add(x, &y);
                }
            }
        }
        self.trim(out)
    }

    /// Division by `g` whose leading series is exactly 1.
    fn divmod_monic(
        &self,
        f: &SPoly<K::Elem>,
        g: &SPoly<K::Elem>,
        n: usize,
    ) -> (SPoly<K::Elem>, SPoly<K::Elem>) {
        let k = self.k;
        let dg = g.len() - 1;
        if f.len() <= dg {
            return (Vec::new(), f.clone());
        }
        let mut r = f.clone();
        let mut q = vec![self.zero_series(); f.len() - dg];
        for i in (0..q.len()).rev() {
            let c = r[i + dg].clone();
            if c.iter().all(|x| k.is_zero(x)) {
                continue;
            }
            for (j, gj) in g.iter().enumerate() {
                let p = self.smul(&c, gj, n);
                for (x, y) in r[i + j].iter_mut().zip(p) {
                    *x = k.sub(x, &y);
                }
            }
            q[i] = c;
        }
        r.truncate(dg);
        (self.trim(q), self.trim(r))
    }

    fn truncate(&self, f: &SPoly<K::Elem>, n: usize) -> SPoly<K::Elem> {
        let out = f
            .iter()
            .map(|c| {
                let mut c = c.clone();
                for x in c.iter_mut().skip(n) {
                    *x = self.k.zero();
                }
                c
            })
            .collect();
        self.trim(out)
    }
}

/// Lifts `f = g h` (monic `f`, `g`, `h`) from precision 1 to `prec` with the quadratic
/// Newton step.
#[allow(clippy::type_complexity)]
fn lift_pair<K: Field>(
    ser: &Series<K>,
    f: &SPoly<K::Elem>,
    g0: &Poly<K::Elem>,
    h0: &Poly<K::Elem>,
) -> (SPoly<K::Elem>, SPoly<K::Elem>) {
    let k = ser.k;
    let (one, s0, t0) = k.pxgcd(g0, h0);
    debug_assert!(one == k.pone());
    let mut g = ser.from_poly(g0);
    let mut h = ser.from_poly(h0);
    let mut s = ser.from_poly(&s0);
    let mut t = ser.from_poly(&t0);
    let one = ser.from_poly(&k.pone());
    let mut have = 1;
    while have < ser.prec {
        let n = (2 * have).min(ser.prec);
        let e = ser.sub(&ser.truncate(f, n), &ser.mul(&g, &h, n));
        let (qq, r) = ser.divmod_monic(&ser.mul(&s, &e, n), &h, n);
        let gs = ser.add(&ser.add(&g, &ser.mul(&t, &e, n)), &ser.mul(&qq, &g, n));
        let hs = ser.add(&h, &r);
        if n == ser.prec {
            return (gs, hs);
        }
        let b = ser.sub(&ser.add(&ser.mul(&s, &gs, n), &ser.mul(&t, &hs, n)), &one);
        let (c, d) = ser.divmod_monic(&ser.mul(&s, &b, n), &hs, n);
        s = ser.sub(&s, &d);
        t = ser.sub(&ser.sub(&t, &ser.mul(&t, &b, n)), &ser.mul(&c, &gs, n));
        g = gs;
        h = hs;
        have = n;
    }
    (g, h)
}

/// Lifts a monic `f` congruent to the product of monic pairwise coprime `factors`.
fn lift_all<K: Field>(
    ser: &Series<K>,
    f: &SPoly<K::Elem>,
    factors: &[Poly<K::Elem>],
) -> Vec<SPoly<K::Elem>> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let k = ser.k;
    let mid = factors.len() / 2;
    let g0 = k.pproduct(&factors[..mid]);
    let h0 = k.pproduct(&factors[mid..]);
    let (g, h) = lift_pair(ser, f, &g0, &h0);
    let mut out = lift_all(ser, &g, &factors[..mid]);
    out.extend(lift_all(ser, &h, &factors[mid..]));
    out
}

/// `p(s + t0)` for `p` given by coefficients in `s`.
fn taylor_shift<K: Field>(k: &K, c: &[K::Elem], t0: &K::Elem) -> Vec<K::Elem> {
    let mut acc: Vec<K::Elem> = Vec::new();
    for a in c.iter().rev() {
        // acc = acc * (s + t0) + a
        let mut next = vec![k.zero(); acc.len() + 1];
        for (i, x) in acc.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], x);
            next[i] = k.add(&next[i], &k.mul(x, t0));
        }
        next[0] = k.add(&next[0], a);
        acc = next;
    }
    acc
}

/// Coefficients over `F_q` if every entry of `c` lies in `F_q`.
fn descend<K: FiniteField>(k: &K, c: &[K::Elem]) -> Option<Vec<FqElem>> {
    c.iter()
        .map(|x| {
            let v = k.coords(x);
            if v[1..].iter().all(|y| y.0 == 0) {
                Some(v[0])
            } else {
                None
            }
        })
        .collect()
}

/// A specialization `T = t0` over a field `K` with the monic factors of `f(t0, x)`.
struct Point<K: FiniteField> {
    k: K,
    t0: K::Elem,
    factors: Vec<Poly<K::Elem>>,
}

enum Best {
    Base(Point<crate::algebra::Fq>),
    Ext(Point<Gf>),
}

impl Best {
    fn count(&self) -> usize {
        match self {
            Best::Base(p) => p.factors.len(),
            Best::Ext(p) => p.factors.len(),
        }
    }
}

/// Examines points of `K` of exact degree `e` over `F_q`; returns the best and the number seen.
fn scan<K: FiniteField>(ring: &BivarRing, k: &K, e: usize, f: &Bivar, budget: usize) -> (Option<Point<K>>, usize) {
    let n = f.deg_x().unwrap();
    let mut best: Option<Point<K>> = None;
    let mut seen = 0;
    for t0 in k.elements() {
        if seen >= budget {
            break;
        }
        if (1..e).any(|d| e % d == 0 && k.frob_q_iter(&t0, d) == t0) {
            continue;
        }
        let s = ring.eval_t(k, f, &t0);
        if s.degree() != Some(n) {
            continue;
        }
        let sm = k.pmonic(&s);
        if k.pgcd(&sm, &k.pderiv(&sm)).degree() != Some(0) {
            continue;
        }
        seen += 1;
        let cnt = ffactor::factor_degrees(k, &sm).len();
        if best.as_ref().map_or(true, |b| cnt < b.factors.len()) {
            let (_, fac) = ffactor::factor(k, &sm);
            let factors = fac.into_iter().map(|(g, _)| g).collect();
            best = Some(Point {
                k: k.clone(),
                t0: t0.clone(),
                factors,
            });
            if cnt == 1 {
                break;
            }
        }
    }
    (best, seen)
}

fn choose_point(ring: &BivarRing, f: &Bivar) -> Best {
    let fq = &ring.fq;
    let mut best: Option<Best> = None;
    let mut seen = 0;
    let (b, s) = scan(ring, fq, 1, f, POINTS_WANTED);
    seen += s;
    if let Some(p) = b {
        best = Some(Best::Base(p));
    }
    for e in 2..=MAX_EXT {
        if best.as_ref().is_some_and(|b| b.count() == 1) || (seen >= POINTS_WANTED && best.is_some()) {
            break;
        }
        let k = Gf::of_degree(fq, e);
        let (b, s) = scan(ring, &k, e, f, POINTS_WANTED - seen.min(POINTS_WANTED - 1));
        seen += s;
        if let Some(p) = b {
            if best.as_ref().map_or(true, |b| p.factors.len() < b.count()) {
                best = Some(Best::Ext(p));
            }
        }
    }
    best.expect("no squarefree specialization found")
}

/// Irreducible factors of a primitive, squarefree `f` with `deg_x f >= 1`.
pub fn factor_squarefree(ring: &BivarRing, f: &Bivar) -> Vec<Bivar> {
    if f.deg_x() == Some(1) {
        return vec![ring.normalize_unit(f)];
    }
    let mut out = match choose_point(ring, f) {
        Best::Base(p) => recombine(ring, f, &p),
        Best::Ext(p) => recombine(ring, f, &p),
    };
    out.iter_mut().for_each(|g| *g = ring.normalize_unit(g));
    out
}

fn recombine<K: FiniteField>(ring: &BivarRing, f: &Bivar, pt: &Point<K>) -> Vec<Bivar> {
    if pt.factors.len() == 1 {
        return vec![f.clone()];
    }
    let k = &pt.k;
    let lc_deg = f.lc().degree().unwrap();
    let prec = f.deg_t() + lc_deg + 1;
    let ser = Series { k, prec };
    // f(s + t0, x) as a truncated series polynomial
    let shifted: SPoly<K::Elem> = f
        .rows()
        .iter()
        .map(|r| {
            let c: Vec<K::Elem> = r.coeffs().iter().map(|x| k.from_fq(*x)).collect();
            let mut v = taylor_shift(k, &c, &pt.t0);
            v.resize(prec, k.zero());
            v
        })
        .collect();
    let lcs = shifted.last().unwrap().clone();
    let lci = ser.sinv(&lcs);
    let monic: SPoly<K::Elem> = shifted.iter().map(|c| ser.smul(c, &lci, prec)).collect();
    let lifted = lift_all(&ser, &monic, &pt.factors);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    let neg_t0 = k.neg(&pt.t0);
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in subsets(remaining.len(), size) {
            let idx: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
            // constant-term filter before forming the full product
            let lc_rest = {
                let c: Vec<K::Elem> = rest.lc().coeffs().iter().map(|x| k.from_fq(*x)).collect();
                let mut v = taylor_shift(k, &c, &pt.t0);
                v.resize(prec, k.zero());
                v
            };
            let c0 = idx.iter().fold(lc_rest.clone(), |acc, &i| {
                let z = ser.zero_series();
                ser.smul(&acc, lifted[i].first().unwrap_or(&z), prec)
            });
            if descend(k, &taylor_shift(k, &c0, &neg_t0)).is_none() {
                continue;
            }
            let mut cand = vec![lc_rest];
            for &i in &idx {
                cand = ser.mul(&cand, &lifted[i], prec);
            }
            let rows: Option<Vec<Poly<FqElem>>> = cand
                .iter()
                .map(|c| descend(k, &taylor_shift(k, c, &neg_t0)).map(|v| ring.fq.poly(v)))
                .collect();
            let Some(rows) = rows else { continue };
            let g = ring.primitive(&Bivar::new(rows));
            if g.deg_x().unwrap_or(0) == 0 {
                continue;
            }
            if let Some(q) = ring.div_exact(&rest, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                rest = ring.primitive(&q);
                let drop: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
                remaining.retain(|i| !drop.contains(i));
            }
            None => size += 1,
        }
    }
    out.push(rest);
    out
}

/// All `size`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
