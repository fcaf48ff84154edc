//! Torsion points of reduced modules as `A/a`-modules.

use std::collections::{HashMap, HashSet};

use crate::algebra::ffactor::{self, ddf};
use crate::algebra::{FiniteField, Field, FqAlgebra, FqElem, Gf, Poly, PolyRing};
use crate::drinfeld::{DrinfeldModule, ReducedModule};
use crate::error::{Error, Result};

type Pt = Vec<FqElem>;

/// `phi[a]` inside the smallest extension `F_(q^(d m))` of the residue field containing it.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    pub modulus: Poly<FqElem>,
    /// Degree of the splitting extension over the residue field.
    pub ext_degree: usize,
    pub ambient: Gf,
    /// The reduced module base-changed to `ambient`.
    pub module: DrinfeldModule<Gf>,
    /// Image of the residue generator (root of `P`) in `ambient`.
    pub residue_root: Pt,
    pub points: Vec<Pt>,
    pub basis: Vec<Pt>,
    /// Residues mod `a` (all polynomials of degree `< deg a`).
    pub reps: Vec<Poly<FqElem>>,
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// All polynomials of degree `< n`.
pub fn residues(fq: &crate::algebra::Fq, n: usize) -> Vec<Poly<FqElem>> {
    let q = fq.order();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push(FqElem((idx % q) as u8));
                idx /= q;
            }
            fq.poly(c)
        })
        .collect()
}

/// Degree `m` of the splitting extension of `phi_a(x)` over the residue field.
pub fn splitting_degree(red: &ReducedModule, a: &Poly<FqElem>) -> usize {
    let k = &red.residue;
    let tp = red.module.torsion_polynomial(a);
    let f = k.pdiv_exact(&tp, &k.px()).unwrap();
    if f.degree() == Some(0) {
        return 1;
    }
    ddf(k, &f).iter().fold(1, |acc, (_, d)| lcm(acc, *d))
}

/// Embedding of the residue field into a larger field through a chosen root of `P`.
pub fn embed_residue(red: &ReducedModule, big: &Gf) -> Pt {
    let p = big.lift_poly(red.prime.poly());
    ffactor::roots(big, &p)
        .into_iter()
        .next()
        .expect("residue field embeds in the ambient field")
}

/// Maps a residue element `sum c_i theta^i` to `sum c_i rho^i`.
pub fn embed_elem(big: &Gf, rho: &Pt, x: &Pt) -> Pt {
    x.iter().rev().fold(big.zero(), |acc, c| {
        big.add(&big.mul(&acc, rho), &big.from_fq(*c))
    })
}

fn sort_points(big: &Gf, pts: &mut [Pt]) {
    pts.sort_by_key(|p| big.coords(p).iter().rev().map(|c| c.0).collect::<Vec<_>>());
}

impl TorsionModule {
    /// `phi_b(x)` for `b` given mod `a`.
    pub fn act(&self, b: &Poly<FqElem>, x: &Pt) -> Pt {
        self.module.act(b, x)
    }

    /// The `A`-span of a list of points.
    pub fn span(&self, gens: &[Pt]) -> HashSet<Pt> {
        let big = &self.ambient;
        let mut span: HashSet<Pt> = HashSet::from([big.zero()]);
        for g in gens {
            let orbit: Vec<Pt> = self.reps.iter().map(|b| self.act(b, g)).collect();
            let mut next = HashSet::with_capacity(span.len() * orbit.len());
            for s in &span {
                for o in &orbit {
                    next.insert(big.add(s, o));
                }
            }
            span = next;
        }
        span
    }

    /// Coordinates in `(A/a)^r` of every point with respect to the basis.
    pub fn coordinate_map(&self) -> HashMap<Pt, Vec<Poly<FqElem>>> {
        let big = &self.ambient;
        let mut map: HashMap<Pt, Vec<Poly<FqElem>>> = HashMap::from([(big.zero(), vec![])]);
        for e in &self.basis {
            let orbit: Vec<(Poly<FqElem>, Pt)> =
                self.reps.iter().map(|b| (b.clone(), self.act(b, e))).collect();
            let mut next = HashMap::with_capacity(map.len() * orbit.len());
            for (s, cs) in &map {
                for (b, o) in &orbit {
                    let mut c = cs.clone();
                    c.push(b.clone());
                    next.insert(big.add(s, o), c);
                }
            }
            map = next;
        }
        map
    }

    /// Monic generator of the annihilator of `x`.
    pub fn annihilator(&self, x: &Pt) -> Poly<FqElem> {
        let fq = self.ambient.fq();
        let (_, fac) = crate::algebra::poly_factor(fq, &fq.pmonic(&self.modulus)).unwrap();
        // remove prime factors while the point stays killed
        let mut ann = fq.pmonic(&self.modulus);
        for (p, m) in fac {
            for _ in 0..m {
                let smaller = fq.pdiv_exact(&ann, p.poly()).unwrap();
                if self.ambient.is_zero(&self.act(&smaller, x)) {
                    ann = smaller;
                } else {
                    break;
                }
            }
        }
        ann
    }
}

/// Computes `phi[a]`, an `A/a`-basis, and checks `phi[a] = (A/a)^r`.
pub fn torsion_points(red: &ReducedModule, a: &Poly<FqElem>) -> Result<TorsionModule> {
    torsion_points_capped(red, a, usize::MAX)
}

/// As [`torsion_points`], refusing ambient fields of degree above `max_abs_degree` over `F_q`.
pub fn torsion_points_capped(
    red: &ReducedModule,
    a: &Poly<FqElem>,
    max_abs_degree: usize,
) -> Result<TorsionModule> {
    let fq = red.residue.fq().clone();
    if a.is_zero() {
        return Err(Error::InvalidInput("torsion of the zero modulus".into()));
    }
    if fq.prem(a, red.prime.poly()).unwrap().is_zero() {
        return Err(Error::CharacteristicDividesModulus);
    }
    let a = fq.pmonic(a);
    let m = splitting_degree(red, &a);
    let d = red.degree();
    if d * m > max_abs_degree {
        return Err(Error::ExtensionTooLarge(d * m));
    }
    let ambient = Gf::of_degree(&fq, d * m);
    let rho = embed_residue(red, &ambient);
    let module = red.module.map_to(&ambient, |x| embed_elem(&ambient, &rho, x));
    let tp = module.torsion_polynomial(&a);
    let mut points = ffactor::roots(&ambient, &tp);
    sort_points(&ambient, &mut points);
    let r = module.rank();
    let deg_a = a.degree().unwrap();
    let expected = fq.order().pow((r * deg_a) as u32);
    if points.len() != expected {
        return Err(Error::InvalidInput(format!(
            "found {} torsion points, expected {expected}",
            points.len()
        )));
    }
    let reps = residues(&fq, deg_a);
    let mut tm = TorsionModule {
        modulus: a.clone(),
        ext_degree: m,
        ambient,
        module,
        residue_root: rho,
        points,
        basis: Vec::new(),
        reps,
    };
    let cyclic = fq.order().pow(deg_a as u32);
    let mut span_size = 1;
    while span_size < expected {
        let target = span_size * cyclic;
        let mut best: Option<(usize, Pt)> = None;
        for p in &tm.points {
            let mut gens = tm.basis.clone();
            gens.push(p.clone());
            let s = tm.span(&gens).len();
            if best.as_ref().map_or(true, |(b, _)| s > *b) {
                best = Some((s, p.clone()));
                if s == target {
                    break;
                }
            }
        }
        let (s, p) = best.unwrap();
        if s == span_size {
            break;
        }
        tm.basis.push(p);
        span_size = s;
    }
    if (deg_a > 0 && tm.basis.len() != r) || span_size != expected {
        return Err(Error::InvalidInput("torsion points are not free over A/a".into()));
    }
    for e in &tm.basis {
        if tm.annihilator(e) != a {
            return Err(Error::InvalidInput("basis point annihilator is not (a)".into()));
        }
    }
    Ok(tm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, PrimePoly, RationalField};
    use crate::drinfeld::{carlitz, module_over_f, reduce_mod};

    #[test]
    fn carlitz_t_torsion_at_t_plus_one() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let red = reduce_mod(&carlitz(&f), &PrimePoly::linear(&f3, FqElem(1))).unwrap();
        let tm = torsion_points(&red, &f3.px()).unwrap();
        assert_eq!(tm.ext_degree, 1);
        assert_eq!(tm.points, vec![vec![FqElem(0)], vec![FqElem(1)], vec![FqElem(2)]]);
        let one = torsion_points(&red, &f3.pone()).unwrap();
        assert_eq!(one.points.len(), 1);
    }

    #[test]
    fn rank_two_has_nine_points() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        let phi = module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap();
        let p = PrimePoly::new(&f3, f3.poly(vec![FqElem(1), FqElem(0), FqElem(1)])).unwrap();
        let red = reduce_mod(&phi, &p).unwrap();
        let a = f3.poly(vec![FqElem(2), FqElem(1)]);
        let tm = torsion_points(&red, &a).unwrap();
        assert_eq!(tm.points.len(), 9);
        assert_eq!(tm.coordinate_map().len(), 9);
        assert!(matches!(
            torsion_points(&red, &p.poly().clone()),
            Err(Error::CharacteristicDividesModulus)
        ));
    }
}
