//! Degree of the division field `F(phi[l])` over `F` by adjoining torsion points one at a time.

use serde::Serialize;

use crate::algebra::{Field, FqAlgebra, FqElem, Poly, PolyRing, RationalField, RationalFunc};
use crate::drinfeld::GlobalModule;
use crate::error::{Error, Result};
use crate::torsion::residues;
use crate::tower::{tower_factor, AlgExt, FactorField};

/// One adjunction: the factor degrees seen at that level and the degree adjoined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjoinStep {
    pub level: usize,
    pub factor_degrees: Vec<usize>,
    /// Degrees of the norm factors when the level is a proper extension of `F`.
    pub norm_degrees: Vec<usize>,
    pub adjoined: usize,
    /// Number of torsion points in the span after this step.
    pub span_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub degree: usize,
    pub steps: Vec<AdjoinStep>,
}

/// Refuse moduli with more than this many torsion points.
pub const MAX_TORSION_POINTS: usize = 81;

fn deflate<K: Field>(k: &K, f: &Poly<K::Elem>, roots: &[K::Elem]) -> Result<Poly<K::Elem>> {
    let mut h = f.clone();
    for v in roots {
        let lin = k.poly(vec![k.neg(v), k.one()]);
        h = k
            .pdiv_exact(&h, &lin)
            .ok_or_else(|| Error::InvalidInput("span point is not a root of the torsion polynomial".into()))?;
    }
    Ok(h)
}

/// `[F(phi[l]) : F]` for a rank-2 module (rank 1 also accepted).
pub fn splitting_field_degree(phi: &GlobalModule, l: &Poly<FqElem>) -> Result<SplittingReport> {
    let f = phi.field();
    let fq = f.fq();
    let r = phi.rank();
    if r > 2 {
        return Err(Error::RankMismatch { expected: 2, found: r });
    }
    let dl = l.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidInput("modulus must have positive degree".into()))?;
    let l = fq.pmonic(l);
    let total_points = fq.order().pow((r * dl) as u32);
    if total_points > MAX_TORSION_POINTS {
        return Err(Error::SizeLimit(format!(
            "{total_points} torsion points exceed the limit {MAX_TORSION_POINTS}"
        )));
    }
    let tp = phi.torsion_polynomial(&l);
    let g0 = f.pdiv_exact(&tp, &f.px()).unwrap();
    let reps = residues(fq, dl);
    let mut steps = Vec::new();

    // level 0
    let fac0 = f.factor_poly(&g0)?;
    let (first, _) = fac0[0].clone();
    let d1 = first.degree().unwrap();
    let orbit_size = fq.order().pow(dl as u32);
    steps.push(AdjoinStep {
        level: 0,
        factor_degrees: fac0.iter().map(|(g, _)| g.degree().unwrap()).collect(),
        norm_degrees: vec![],
        adjoined: d1,
        span_size: orbit_size,
    });

    if d1 == 1 {
        let lam = f.neg(&first.coeffs()[0]);
        let span: Vec<RationalFunc> = reps.iter().filter(|b| !b.is_zero()).map(|b| phi.act(b, &lam)).collect();
        let h = deflate(f, &g0, &span)?;
        if h.degree() == Some(0) {
            return Ok(SplittingReport { degree: 1, steps });
        }
        let fac1 = f.factor_poly(&h)?;
        let d2 = fac1[0].0.degree().unwrap();
        steps.push(AdjoinStep {
            level: 1,
            factor_degrees: fac1.iter().map(|(g, _)| g.degree().unwrap()).collect(),
            norm_degrees: vec![],
            adjoined: d2,
            span_size: total_points,
        });
        return Ok(SplittingReport { degree: d2, steps });
    }

    let ext = AlgExt::new(f, &first)?;
    let lam = ext.gen();
    let psi = phi.map_to(&ext, |c: &RationalFunc| ext.embed(c));
    let span: Vec<Vec<RationalFunc>> = reps.iter().filter(|b| !b.is_zero()).map(|b| psi.act(b, &lam)).collect();
    let g0l = ext.poly(g0.coeffs().iter().map(|c| ext.embed(c)).collect());
    let h = deflate(&ext, &g0l, &span)?;
    if h.degree() == Some(0) {
        return Ok(SplittingReport { degree: d1, steps });
    }
    let tf = tower_factor(&ext, &h)?;
    let degs: Vec<usize> = tf.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
    let d2 = degs[0];
    if degs.iter().any(|&d| d != d2) {
        return Err(Error::InvalidInput(format!(
            "factors over the first torsion field have unequal degrees {degs:?}"
        )));
    }
    steps.push(AdjoinStep {
        level: 1,
        factor_degrees: degs,
        norm_degrees: tf.norm_degrees,
        adjoined: d2,
        span_size: total_points,
    });
    Ok(SplittingReport { degree: d1 * d2, steps })
}

/// Convenience constructor for `F = F_q(T)` modules from polynomial coefficients.
pub fn rational_coeffs(f: &RationalField, polys: &[Poly<FqElem>]) -> Vec<RationalFunc> {
    polys.iter().map(|p| f.from_poly(p.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fq;
    use crate::drinfeld::{carlitz, module_over_f};

    #[test]
    fn carlitz_division_fields() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        // [F(C[l]) : F] = |(A/l)^*|
        let rep = splitting_field_degree(&carlitz(&f), &f3.px()).unwrap();
        assert_eq!(rep.degree, 2);
        let l2 = f3.poly(vec![FqElem(1), FqElem(0), FqElem(1)]);
        assert_eq!(splitting_field_degree(&carlitz(&f), &l2).unwrap().degree, 8);
    }

    #[test]
    fn constant_coefficient_module_over_f2() {
        let f2 = Fq::new(2, 1).unwrap();
        let f = RationalField::new(&f2);
        // phi_T = T + T tau^2: phi[T] is generated by the roots of x^3 = 1
        let phi = module_over_f(&f, vec![f.zero(), f.t()]).unwrap();
        let rep = splitting_field_degree(&phi, &f2.px()).unwrap();
        assert_eq!(rep.degree, 2);
        assert_eq!(rep.steps[0].factor_degrees, vec![1, 2]);
    }
}
