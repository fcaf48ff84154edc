//! Simple algebraic extensions `B[y]/(m)` and polynomial factorization over them.

use crate::algebra::ffactor;
use crate::algebra::{Field, Fq, FqAlgebra, FqElem, Gf, Poly, PolyRing, RationalField, RationalFunc};
use crate::bivariate::{bivariate_factor, Bivar, BivarRing};
use crate::error::{Error, Result};

/// `B[y]/(m)` for a monic irreducible `m`; elements are coefficient vectors of length `deg m`.
#[derive(Clone, Debug)]
pub struct AlgExt<B: FqAlgebra> {
    base: B,
    modulus: Poly<B::Elem>,
}

impl<B: FqAlgebra> AlgExt<B> {
    /// `m` is made monic; irreducibility is the caller's responsibility.
    pub fn new(base: &B, m: &Poly<B::Elem>) -> Result<Self> {
        match m.degree() {
            Some(d) if d >= 1 => Ok(AlgExt {
                base: base.clone(),
                modulus: base.pmonic(m),
            }),
            _ => Err(Error::InvalidInput("extension modulus must have degree >= 1".into())),
        }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<B::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `y`.
    pub fn gen(&self) -> Vec<B::Elem> {
        self.reduce(&self.base.px())
    }

    pub fn embed(&self, c: &B::Elem) -> Vec<B::Elem> {
        self.reduce(&self.base.pconst(c.clone()))
    }

    pub fn reduce(&self, f: &Poly<B::Elem>) -> Vec<B::Elem> {
        let b = &self.base;
        let r = if f.len() > self.degree() {
            b.prem(f, &self.modulus).unwrap()
        } else {
            f.clone()
        };
        let mut v = r.coeffs().to_vec();
        v.resize(self.degree(), b.zero());
        v
    }

    pub fn as_poly(&self, a: &[B::Elem]) -> Poly<B::Elem> {
        self.base.poly(a.to_vec())
    }
}

impl<B: FqAlgebra> Field for AlgExt<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&self.base.pmul(&self.as_poly(a), &self.as_poly(b)))
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let p = self.as_poly(a);
        if p.is_zero() {
            return None;
        }
        self.base.pinvmod(&p, &self.modulus).map(|i| self.reduce(&i))
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }
}

impl<B: FqAlgebra> FqAlgebra for AlgExt<B> {
    fn fq(&self) -> &Fq {
        self.base.fq()
    }

    fn from_fq(&self, c: FqElem) -> Self::Elem {
        self.embed(&self.base.from_fq(c))
    }
}

/// Fields over which univariate polynomials can be factored.
pub trait FactorField: FqAlgebra {
    /// Monic irreducible factors with multiplicities, lowest degree first.
    #[allow(clippy::type_complexity)]
    fn factor_poly(&self, f: &Poly<Self::Elem>) -> Result<Vec<(Poly<Self::Elem>, usize)>>;
}

impl FactorField for Fq {
    fn factor_poly(&self, f: &Poly<FqElem>) -> Result<Vec<(Poly<FqElem>, usize)>> {
        nonzero(f)?;
        Ok(ffactor::factor(self, f).1)
    }
}

impl FactorField for Gf {
    fn factor_poly(&self, f: &Poly<Vec<FqElem>>) -> Result<Vec<(Poly<Vec<FqElem>>, usize)>> {
        nonzero(f)?;
        Ok(ffactor::factor(self, f).1)
    }
}

fn nonzero<E>(f: &Poly<E>) -> Result<()> {
    if f.is_zero() {
        Err(Error::InvalidInput("factorization of the zero polynomial".into()))
    } else {
        Ok(())
    }
}

impl FactorField for RationalField {
    fn factor_poly(&self, f: &Poly<RationalFunc>) -> Result<Vec<(Poly<RationalFunc>, usize)>> {
        nonzero(f)?;
        let ring = BivarRing::new(self.fq());
        let b = ring.from_rational(f);
        let mut out: Vec<(Poly<RationalFunc>, usize)> = bivariate_factor(self.fq(), &b)
            .into_iter()
            .filter(|(g, _)| g.deg_x().unwrap_or(0) > 0)
            .map(|(g, m)| (self.pmonic(&ring.to_rational(self, &g)), m))
            .collect();
        out.sort_by_key(|(g, _)| g.degree());
        Ok(out)
    }
}

/// An integral model of `F[y]/(m)`: `z = D y` is a root of a monic `mz` over `F_q[T]`.
struct Integral {
    ring: BivarRing,
    /// `D`
    scale: Poly<FqElem>,
    /// coefficients of the monic integral minimal polynomial of `z`
    mz: Vec<Poly<FqElem>>,
}

fn integral_model(ext: &AlgExt<RationalField>) -> Integral {
    let f = ext.base();
    let fq = f.fq();
    let ring = BivarRing::new(fq);
    let n = ext.degree();
    let mut d = fq.pone();
    for c in ext.modulus().coeffs() {
        let g = fq.pgcd(&d, c.den());
        d = fq.pmul(&d, &fq.pdiv_exact(c.den(), &g).unwrap());
    }
    // z^n + sum D^(n-i) m_i z^i
    let mz = ext
        .modulus()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = f.mul(c, &f.from_poly(fq.ppow(&d, (n - i) as u64)));
            f.as_poly(&s).expect("scaled modulus is integral")
        })
        .collect();
    Integral {
        ring,
        scale: d,
        mz,
    }
}

impl Integral {
    fn n(&self) -> usize {
        self.mz.len() - 1
    }

    /// Reduces a vector of `z`-coefficients (entries in `F_q[T][x]`) modulo `mz`.
    fn reduce(&self, mut v: Vec<Bivar>) -> Vec<Bivar> {
        let n = self.n();
        let r = &self.ring;
        while v.len() > n {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = v.len() - n;
            for (i, c) in self.mz[..n].iter().enumerate() {
                if !c.is_zero() {
                    v[base + i] = r.sub(&v[base + i], &r.scale(&top, c));
                }
            }
        }
        v.resize(n, Bivar::zero());
        v
    }

    fn mul(&self, a: &[Bivar], b: &[Bivar]) -> Vec<Bivar> {
        let r = &self.ring;
        let mut out = vec![Bivar::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = r.add(&out[i + j], &r.mul(x, y));
                }
            }
        }
        self.reduce(out)
    }

    /// `E h(x - s y)` in `z`-coordinates with entries in `F_q[T][x]`, for a suitable `E` in `F`.
    fn shifted(&self, ext: &AlgExt<RationalField>, h: &Poly<Vec<RationalFunc>>, s: &RationalFunc) -> Vec<Bivar> {
        let f = ext.base();
        let fq = f.fq();
        let r = &self.ring;
        let n = self.n();
        // coefficients in the z-basis: y^i = z^i / D^i
        let dr = f.from_poly(self.scale.clone());
        let zc: Vec<Vec<RationalFunc>> = h
            .coeffs()
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .map(|(i, a)| f.div(a, &f.pow_u64(&dr, i as u64)).unwrap())
                    .collect()
            })
            .collect();
        let mut den = fq.pone();
        for c in zc.iter().flatten() {
            let g = fq.pgcd(&den, c.den());
            den = fq.pmul(&den, &fq.pdiv_exact(c.den(), &g).unwrap());
        }
        let lift = |a: &RationalFunc| -> Bivar {
            Bivar::from_t(fq.pmul(a.num(), &fq.pdiv_exact(&den, a.den()).unwrap()))
        };
        let coeffs: Vec<Vec<Bivar>> = zc.iter().map(|c| c.iter().map(&lift).collect()).collect();
        // x - s y = x - (s/D) z; scale by D (and by s's denominator) to stay integral:
        // E h(x - s y) with the substitution done through powers of (x - s y).
        let sd = f.div(s, &dr).unwrap();
        let sden = sd.den().clone();
        // lin = sden * (x - sd z) = sden x - num(sd) z
        let lin_x = r.scale(&r.x(), &sden);
        let mut lin = vec![Bivar::zero(); n.max(2)];
        lin[0] = lin_x;
        lin[1] = r.neg_t(sd.num());
        let lin = self.reduce(lin);
        let deg = h.degree().unwrap();
        // sum_j coeffs[j] * lin^j * sden^(deg - j)
        let mut out = vec![Bivar::zero(); n];
        let mut pw = self.reduce(vec![r.one()]);
        for (j, c) in coeffs.iter().enumerate() {
            let term = self.mul(c, &pw);
            let sc = fq.ppow(&sden, (deg - j) as u64);
            for (o, t) in out.iter_mut().zip(term) {
                *o = r.add(o, &r.scale(&t, &sc));
            }
            pw = self.mul(&pw, &lin);
        }
        out
    }
}

impl BivarRing {
    fn neg_t(&self, c: &Poly<FqElem>) -> Bivar {
        Bivar::from_t(self.fq.pneg(c))
    }
}

/// Determinant over `F_q[T][x]` by fraction-free elimination.
pub fn bareiss_det(ring: &BivarRing, mut m: Vec<Vec<Bivar>>) -> Bivar {
    let n = m.len();
    let mut prev = ring.one();
    let mut sign = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return Bivar::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = ring.mul(&m[i][j], &m[k][k]);
                let b = ring.mul(&m[i][k], &m[k][j]);
                m[i][j] = ring
                    .div_exact(&ring.sub(&a, &b), &prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = Bivar::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        ring.sub(&Bivar::zero(), &d)
    } else {
        d
    }
}

/// Norm `N(x)` from `F(y)` to `F` of `h(x - s y)`, up to a factor in `F^*`, as an element
/// of `F_q[T][x]`.
pub fn trager_norm(ext: &AlgExt<RationalField>, h: &Poly<Vec<RationalFunc>>, s: &RationalFunc) -> Bivar {
    let im = integral_model(ext);
    let n = im.n();
    let hz = im.shifted(ext, h, s);
    // column j = z^j * H
    let mut cols = Vec::with_capacity(n);
    let mut cur = hz;
    for _ in 0..n {
        cols.push(cur.clone());
        let mut shifted = vec![Bivar::zero()];
        shifted.extend(cur);
        cur = im.reduce(shifted);
    }
    let mat: Vec<Vec<Bivar>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    bareiss_det(&im.ring, mat)
}

/// Shifts tried for the norm: constants of `F_q`, then `T + c`.
fn shifts(f: &RationalField) -> Vec<RationalFunc> {
    let fq = f.fq();
    let mut v: Vec<RationalFunc> = fq.all().map(|c| f.from_fq(c)).collect();
    v.extend(fq.all().map(|c| f.t_plus(c)));
    v
}

/// The result of factoring over an extension, with the norm factor degrees found on the way.
#[derive(Clone, Debug)]
pub struct TowerFactorization {
    pub factors: Vec<(Poly<Vec<RationalFunc>>, usize)>,
    pub norm_degrees: Vec<usize>,
    pub shift: RationalFunc,
}

/// Factors a squarefree `h` over `F(y)` by the norm method.
pub fn tower_factor(ext: &AlgExt<RationalField>, h: &Poly<Vec<RationalFunc>>) -> Result<TowerFactorization> {
    nonzero(h)?;
    let f = ext.base();
    let fq = f.fq();
    let ring = BivarRing::new(fq);
    let h = ext.pmonic(h);
    if h.degree() == Some(0) {
        return Ok(TowerFactorization {
            factors: vec![],
            norm_degrees: vec![],
            shift: f.zero(),
        });
    }
    if ext.pgcd(&h, &ext.pderiv(&h)).degree() != Some(0) {
        return Err(Error::InvalidInput("tower factorization needs a squarefree polynomial".into()));
    }
    for s in shifts(f) {
        let norm = trager_norm(ext, &h, &s);
        if norm.is_zero() {
            continue;
        }
        let fac = bivariate_factor(fq, &norm);
        let fac: Vec<(Bivar, usize)> = fac.into_iter().filter(|(g, _)| g.deg_x().unwrap_or(0) > 0).collect();
        if fac.iter().any(|(_, m)| *m > 1) {
            continue;
        }
        let norm_degrees: Vec<usize> = fac.iter().map(|(g, _)| g.deg_x().unwrap()).collect();
        if fac.len() == 1 {
            return Ok(TowerFactorization {
                factors: vec![(h.clone(), 1)],
                norm_degrees,
                shift: s,
            });
        }
        // x -> x + s y
        let sub = ext.poly(vec![ext.mul(&ext.embed(&s), &ext.gen()), ext.one()]);
        let mut factors = Vec::new();
        for (g, _) in &fac {
            let gr = ring.to_rational(f, g);
            let gl = ext.poly(gr.coeffs().iter().map(|c| ext.embed(c)).collect());
            let gs = ext.pcompose(&gl, &sub);
            let d = ext.pgcd(&h, &gs);
            factors.push((d, 1));
        }
        factors.sort_by_key(|(g, _)| g.degree());
        let total: usize = factors.iter().map(|(g, _)| g.degree().unwrap()).sum();
        assert_eq!(Some(total), h.degree(), "norm factors do not account for every root");
        return Ok(TowerFactorization {
            factors,
            norm_degrees,
            shift: s,
        });
    }
    Err(Error::InvalidInput("no shift gives a squarefree norm".into()))
}

impl FactorField for AlgExt<RationalField> {
    fn factor_poly(&self, f: &Poly<Vec<RationalFunc>>) -> Result<Vec<(Poly<Vec<RationalFunc>>, usize)>> {
        tower_factor(self, f).map(|t| t.factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_minus_t_splits_x2_plus_t() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        // F(y), y^2 = -T
        let ext = AlgExt::new(&f, &f.poly(vec![t.clone(), f.zero(), f.one()])).unwrap();
        let y = ext.gen();
        assert_eq!(ext.mul(&y, &y), ext.embed(&f.neg(&t)));
        let h = ext.poly(vec![ext.embed(&t), ext.zero(), ext.one()]);
        let fac = tower_factor(&ext, &h).unwrap();
        assert_eq!(fac.factors.len(), 2);
        // x^2 - T stays irreducible over F(sqrt(-T)) since -1 is not a square in F_3
        let h2 = ext.poly(vec![ext.embed(&f.neg(&t)), ext.zero(), ext.one()]);
        let fac2 = tower_factor(&ext, &h2).unwrap();
        assert_eq!(fac2.factors, vec![(h2, 1)]);
        assert_eq!(fac2.norm_degrees, vec![4]);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let f3 = Fq::new(3, 1).unwrap();
        let ring = BivarRing::new(&f3);
        let p = |c: &[u8]| Bivar::from_t(f3.poly(c.iter().map(|&x| FqElem(x)).collect()));
        let x = ring.x();
        let m = vec![
            vec![x.clone(), p(&[0, 1]), p(&[1])],
            vec![p(&[1]), x.clone(), p(&[2, 1])],
            vec![p(&[0, 0, 1]), p(&[1]), x.clone()],
        ];
        let e = |a: &Bivar, b: &Bivar, c: &Bivar, d: &Bivar| ring.sub(&ring.mul(a, d), &ring.mul(b, c));
        let cof = ring.add(
            &ring.sub(
                &ring.mul(&m[0][0], &e(&m[1][1], &m[1][2], &m[2][1], &m[2][2])),
                &ring.mul(&m[0][1], &e(&m[1][0], &m[1][2], &m[2][0], &m[2][2])),
            ),
            &ring.mul(&m[0][2], &e(&m[1][0], &m[1][1], &m[2][0], &m[2][1])),
        );
        assert_eq!(bareiss_det(&ring, m), cof);
    }
}
