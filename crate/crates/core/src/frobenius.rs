//! Frobenius at a prime of good reduction: characteristic polynomial, matrices on torsion,
//! and factorization patterns.

use serde::Serialize;

use crate::algebra::ffactor;
use crate::algebra::{FiniteField, Field, FqAlgebra, Fq, FqElem, Gf, Poly, PolyRing, PrimePoly};
use crate::drinfeld::{reduce_mod, GlobalModule, ReducedModule};
use crate::error::{Error, Result};
use crate::linalg::{solve, Solution};
use crate::skew::{SkewPoly, SkewRing};
use crate::torsion::torsion_points;

/// `pi^2 - phi_a pi + phi_(mu P) = 0` for `pi = tau^d` in the residue skew ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobCharPoly {
    pub prime: PrimePoly,
    pub a: Poly<FqElem>,
    pub mu: FqElem,
}

fn flatten(k: &Gf, f: &SkewPoly<Vec<FqElem>>, len: usize) -> Vec<FqElem> {
    let mut out = Vec::with_capacity(len * k.degree());
    for i in 0..len {
        out.extend(k.coords(&k.skew_coeff(f, i)));
    }
    out
}

fn t_pow(fq: &Fq, j: usize) -> Poly<FqElem> {
    fq.pmonomial(fq.one(), j)
}

/// Checks the characteristic identity exactly in the residue skew ring.
pub fn check_charpoly(red: &ReducedModule, cp: &FrobCharPoly) -> bool {
    let k = &red.residue;
    let fq = k.fq();
    let d = red.degree();
    let pi = k.skew_tau_pow(d);
    let lhs = k.skew_sub(
        &k.skew_mul(&pi, &pi),
        &k.skew_mul(&red.module.phi_of(&cp.a), &pi),
    );
    let mp = fq.pscale(red.prime.poly(), &cp.mu);
    k.skew_add(&lhs, &red.module.phi_of(&mp)).is_zero()
}

/// Solves for `(a_P, mu_P)` with `deg a_P <= d/2` by linear algebra over `F_q`.
pub fn frob_charpoly(red: &ReducedModule) -> Result<FrobCharPoly> {
    let k = &red.residue;
    let fq = k.fq().clone();
    let r = red.module.rank();
    if r != 2 {
        return Err(Error::RankMismatch { expected: 2, found: r });
    }
    let d = red.degree();
    let len = 2 * d + 1;
    let pi = k.skew_tau_pow(d);
    let mut cols: Vec<Vec<FqElem>> = (0..=d / 2)
        .map(|j| flatten(k, &k.skew_mul(&red.module.phi_of(&t_pow(&fq, j)), &pi), len))
        .collect();
    let phi_p = red.module.phi_of(red.prime.poly());
    cols.push(flatten(k, &k.skew_scale(&k.from_int(-1), &phi_p), len));
    let rhs = flatten(k, &k.skew_tau_pow(2 * d), len);
    let rows: Vec<Vec<FqElem>> = (0..rhs.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let x = match solve(&fq, &rows, &rhs) {
        Solution::Unique(x) => x,
        Solution::None => return Err(Error::NoSolution),
        Solution::Many(..) => return Err(Error::AmbiguousSolution),
    };
    let mu = *x.last().unwrap();
    if mu.0 == 0 {
        return Err(Error::NoSolution);
    }
    let cp = FrobCharPoly {
        prime: red.prime.clone(),
        a: fq.poly(x[..x.len() - 1].to_vec()),
        mu,
    };
    assert!(check_charpoly(red, &cp), "Frobenius identity fails after solving");
    Ok(cp)
}

/// For a rank-1 reduction, `mu` with `tau^d = psi_(mu P)`.
pub fn rank1_frobenius(red: &ReducedModule) -> Result<FqElem> {
    let k = &red.residue;
    let r = red.module.rank();
    if r != 1 {
        return Err(Error::RankMismatch { expected: 1, found: r });
    }
    let d = red.degree();
    let phi_p = red.module.phi_of(red.prime.poly());
    let lc = k.skew_coeff(&phi_p, d);
    let c = k.coords(&lc);
    if c[1..].iter().any(|x| x.0 != 0) {
        return Err(Error::NoSolution);
    }
    let fq = k.fq();
    let mu = fq.inv(&c[0]).ok_or(Error::NoSolution)?;
    let mp = red.module.phi_of(&fq.pscale(red.prime.poly(), &mu));
    if mp != k.skew_tau_pow(d) {
        return Err(Error::NoSolution);
    }
    Ok(mu)
}

/// A 2x2 matrix over `A/(m)`, entries reduced mod `m`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    pub entries: [Poly<FqElem>; 4],
    pub modulus: Poly<FqElem>,
}

impl Mat2 {
    pub fn new(fq: &Fq, entries: [Poly<FqElem>; 4], modulus: &Poly<FqElem>) -> Mat2 {
        let m = fq.pmonic(modulus);
        Mat2 {
            entries: entries.map(|e| fq.prem(&e, &m).unwrap()),
            modulus: m,
        }
    }

    pub fn identity(fq: &Fq, modulus: &Poly<FqElem>) -> Mat2 {
        Mat2::new(fq, [fq.pone(), Poly::zero(), Poly::zero(), fq.pone()], modulus)
    }

    fn red(&self, fq: &Fq, f: &Poly<FqElem>) -> Poly<FqElem> {
        fq.prem(f, &self.modulus).unwrap()
    }

    pub fn mul(&self, fq: &Fq, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        let s = |x: &Poly<FqElem>, y: &Poly<FqElem>, z: &Poly<FqElem>, w: &Poly<FqElem>| {
            fq.padd(&fq.pmul(x, y), &fq.pmul(z, w))
        };
        Mat2::new(fq, [s(a, e, b, g), s(a, f, b, h), s(c, e, d, g), s(c, f, d, h)], &self.modulus)
    }

    pub fn det(&self, fq: &Fq) -> Poly<FqElem> {
        let [a, b, c, d] = &self.entries;
        self.red(fq, &fq.psub(&fq.pmul(a, d), &fq.pmul(b, c)))
    }

    pub fn trace(&self, fq: &Fq) -> Poly<FqElem> {
        self.red(fq, &fq.padd(&self.entries[0], &self.entries[3]))
    }

    pub fn is_invertible(&self, fq: &Fq) -> bool {
        fq.pgcd(&self.det(fq), &self.modulus).degree() == Some(0)
    }

    pub fn is_identity(&self, fq: &Fq) -> bool {
        *self == Mat2::identity(fq, &self.modulus)
    }
}

/// Frobenius on `phi[l]` in the recorded basis.
#[derive(Clone, Debug)]
pub struct FrobMatrix {
    pub matrix: Mat2,
    pub basis: Vec<Vec<FqElem>>,
    pub ambient_degree: usize,
}

/// Matrix of `x -> x^(q^d)` on `phi[l]` with respect to the basis from [`torsion_points`].
pub fn frob_matrix_mod_l(red: &ReducedModule, l: &PrimePoly) -> Result<FrobMatrix> {
    if red.prime == *l {
        return Err(Error::CharacteristicClash);
    }
    let r = red.module.rank();
    if r != 2 {
        return Err(Error::RankMismatch { expected: 2, found: r });
    }
    let fq = red.residue.fq().clone();
    let tm = torsion_points(red, l.poly())?;
    let coords = tm.coordinate_map();
    let d = red.degree();
    let big = &tm.ambient;
    let mut cols = Vec::with_capacity(2);
    for e in &tm.basis {
        let img = big.frob_q_iter(e, d);
        cols.push(coords.get(&img).cloned().expect("Frobenius image is a torsion point"));
    }
    let entries = [
        cols[0][0].clone(),
        cols[1][0].clone(),
        cols[0][1].clone(),
        cols[1][1].clone(),
    ];
    Ok(FrobMatrix {
        matrix: Mat2::new(&fq, entries, l.poly()),
        basis: tm.basis.clone(),
        ambient_degree: big.degree(),
    })
}

/// Scalar by which Frobenius acts on `psi[l]` for a rank-1 reduction, found from the points.
pub fn rank1_action_mod_l(red: &ReducedModule, l: &PrimePoly) -> Result<Poly<FqElem>> {
    let tm = torsion_points(red, l.poly())?;
    let e = &tm.basis[0];
    let img = tm.ambient.frob_q_iter(e, red.degree());
    let c = tm.coordinate_map().get(&img).cloned().expect("Frobenius image is a torsion point");
    Ok(c[0].clone())
}

/// Degrees of the orbits of Frobenius on the nonzero points of `phi[l]`.
pub fn frobenius_pattern(red: &ReducedModule, l: &Poly<FqElem>) -> Result<Vec<usize>> {
    let k = &red.residue;
    let fq = k.fq();
    if fq.prem(l, red.prime.poly()).unwrap().is_zero() {
        return Err(Error::CharacteristicDividesModulus);
    }
    let tp = red.module.torsion_polynomial(&fq.pmonic(l));
    let f = k.pmonic(&k.pdiv_exact(&tp, &k.px()).unwrap());
    Ok(ffactor::factor_degrees(k, &f))
}

/// Sign of a permutation with the given cycle lengths.
pub fn pattern_sign(pattern: &[usize]) -> i8 {
    let odd = pattern.iter().map(|c| c - 1).sum::<usize>() % 2;
    if odd == 0 {
        1
    } else {
        -1
    }
}

/// Parity of Frobenius on the three nonzero `(T+i)`-torsion points of a module over `F_2(T)`.
pub fn sign_character(phi: &GlobalModule, i: u8, p: &PrimePoly) -> Result<i8> {
    let f = phi.field();
    let fq = f.fq();
    if fq.order() != 2 || phi.rank() != 2 {
        return Err(Error::UnsupportedField("sign character needs a rank-2 module over F_2(T)".into()));
    }
    let l = PrimePoly::linear(fq, FqElem(i));
    if *p == l {
        return Err(Error::CharacteristicDividesModulus);
    }
    let red = reduce_mod(phi, p)?;
    let k = &red.residue;
    let m = &red.module;
    // phi_(T+i)(x) / x = (T + i) + g1 x + g2 x^3
    let c0 = k.add(m.gamma_t(), &k.from_fq(FqElem(i)));
    let cubic = k.poly(vec![c0, m.g(1).clone(), k.zero(), m.g(2).clone()]);
    let cubic = k.pmonic(&cubic);
    if k.pgcd(&cubic, &k.pderiv(&cubic)).degree() != Some(0) {
        return Err(Error::RamifiedPrime(p.display(fq)));
    }
    Ok(pattern_sign(&ffactor::factor_degrees(k, &cubic)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalField;
    use crate::drinfeld::{carlitz, module_over_f};

    fn flagship() -> GlobalModule {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap()
    }

    #[test]
    fn flagship_at_t_plus_one() {
        let phi = flagship();
        let fq = phi.field().fq().clone();
        let red = reduce_mod(&phi, &PrimePoly::linear(&fq, FqElem(1))).unwrap();
        let cp = frob_charpoly(&red).unwrap();
        assert_eq!((cp.a, cp.mu), (fq.pone(), FqElem(1)));
    }

    #[test]
    fn carlitz_frobenius_is_p() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        for c in 0..3 {
            let red = reduce_mod(&carlitz(&f), &PrimePoly::linear(&f3, FqElem(c))).unwrap();
            assert_eq!(rank1_frobenius(&red).unwrap(), FqElem(1));
        }
    }

    #[test]
    fn pattern_signs() {
        assert_eq!(pattern_sign(&[1, 1, 1]), 1);
        assert_eq!(pattern_sign(&[1, 2]), -1);
        assert_eq!(pattern_sign(&[3]), 1);
    }

    #[test]
    fn matrix_trace_and_det_match_charpoly() {
        let phi = flagship();
        let fq = phi.field().fq().clone();
        let p = PrimePoly::new(&fq, fq.poly(vec![FqElem(1), FqElem(0), FqElem(1)])).unwrap();
        let red = reduce_mod(&phi, &p).unwrap();
        let cp = frob_charpoly(&red).unwrap();
        for c in 0..3 {
            let l = PrimePoly::linear(&fq, FqElem(c));
            let fm = frob_matrix_mod_l(&red, &l).unwrap();
            let m = &fm.matrix;
            assert_eq!(m.trace(&fq), fq.prem(&cp.a, l.poly()).unwrap());
            let mp = fq.pscale(p.poly(), &cp.mu);
            assert_eq!(m.det(&fq), fq.prem(&mp, l.poly()).unwrap());
        }
        assert!(matches!(frob_matrix_mod_l(&red, &p), Err(Error::CharacteristicClash)));
    }
}
