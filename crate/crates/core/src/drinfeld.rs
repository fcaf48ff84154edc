//! Drinfeld `F_q[T]`-modules given by `phi_T = gamma(T) + sum g_i tau^i`.

use crate::algebra::display::{fmt_poly, paren};
use crate::algebra::{
    Field, FqAlgebra, FqElem, Gf, Place, Poly, PrimePoly, RationalField,
    RationalFunc,
};
use crate::error::{Error, Result};
use crate::skew::{SkewPoly, SkewRing};

/// A module over the coefficient field `K`; `gamma_t` is the image of `T`.
#[derive(Clone, Debug)]
pub struct DrinfeldModule<K: FqAlgebra> {
    field: K,
    gamma_t: K::Elem,
    coeffs: Vec<K::Elem>,
}

impl<K: FqAlgebra> DrinfeldModule<K> {
    /// `coeffs = [g_1, ..., g_r]` with `g_r != 0`.
    pub fn new(field: &K, gamma_t: K::Elem, coeffs: Vec<K::Elem>) -> Result<Self> {
        match coeffs.last() {
            Some(g) if !field.is_zero(g) => Ok(DrinfeldModule {
                field: field.clone(),
                gamma_t,
                coeffs,
            }),
            _ => Err(Error::InvalidInput("leading coefficient g_r must be nonzero".into())),
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn gamma_t(&self) -> &K::Elem {
        &self.gamma_t
    }

    /// `g_i` for `1 <= i <= r`.
    pub fn g(&self, i: usize) -> &K::Elem {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn phi_t(&self) -> SkewPoly<K::Elem> {
        let mut c = vec![self.gamma_t.clone()];
        c.extend(self.coeffs.iter().cloned());
        self.field.skew(c)
    }

    /// `phi_a` by Horner's scheme in `phi_T`.
    pub fn phi_of(&self, a: &Poly<FqElem>) -> SkewPoly<K::Elem> {
        let k = &self.field;
        let pt = self.phi_t();
        let mut acc = SkewPoly::zero();
        for c in a.coeffs().iter().rev() {
            acc = k.skew_mul(&acc, &pt);
            acc = k.skew_add(&acc, &k.skew_const(k.from_fq(*c)));
        }
        acc
    }

    /// `phi_a(x) = sum (phi_a)_i x^(q^i)`.
    pub fn torsion_polynomial(&self, a: &Poly<FqElem>) -> Poly<K::Elem> {
        self.field.skew_to_additive(&self.phi_of(a))
    }

    /// The action `x -> phi_a(x)`.
    pub fn act(&self, a: &Poly<FqElem>, x: &K::Elem) -> K::Elem {
        self.field.skew_eval(&self.phi_of(a), x)
    }

    /// `psi_T = c phi_T c^-1`, so `g_i -> c^(1 - q^i) g_i`; the conjugation identity is checked.
    pub fn twist(&self, c: &K::Elem) -> Result<Self> {
        let k = &self.field;
        let ci = k.inv(c).ok_or(Error::ZeroTwist)?;
        let coeffs: Vec<K::Elem> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, g)| k.mul(&k.mul(c, g), &k.frob_q_iter(&ci, i + 1)))
            .collect();
        let psi = DrinfeldModule {
            field: k.clone(),
            gamma_t: self.gamma_t.clone(),
            coeffs,
        };
        let lhs = k.skew_mul(&k.skew_const(c.clone()), &self.phi_t());
        let rhs = k.skew_mul(&psi.phi_t(), &k.skew_const(c.clone()));
        assert_eq!(lhs, rhs, "twist identity c phi_T = psi_T c failed");
        Ok(psi)
    }

    /// Rank-1 module `psi_T = T - g_2 tau` attached to a rank-2 module.
    pub fn det_module(&self) -> Result<Self> {
        if self.rank() != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: self.rank(),
            });
        }
        Ok(DrinfeldModule {
            field: self.field.clone(),
            gamma_t: self.gamma_t.clone(),
            coeffs: vec![self.field.neg(&self.coeffs[1])],
        })
    }

    /// Base change along a field embedding.
    pub fn map_to<L: FqAlgebra, M: Fn(&K::Elem) -> L::Elem>(
        &self,
        target: &L,
        m: M,
    ) -> DrinfeldModule<L> {
        DrinfeldModule {
            field: target.clone(),
            gamma_t: m(&self.gamma_t),
            coeffs: self.coeffs.iter().map(m).collect(),
        }
    }
}

/// A module over `F = F_q(T)` with `gamma(T) = T`.
pub type GlobalModule = DrinfeldModule<RationalField>;

pub fn module_over_f(field: &RationalField, coeffs: Vec<RationalFunc>) -> Result<GlobalModule> {
    DrinfeldModule::new(field, field.t(), coeffs)
}

/// The Carlitz module `C_T = T + tau`.
pub fn carlitz(field: &RationalField) -> GlobalModule {
    DrinfeldModule::new(field, field.t(), vec![field.one()]).unwrap()
}

/// Skew polynomial text with `t` for tau, e.g. `T + t + 2*T^2*t^2`.
pub fn display_skew(field: &RationalField, f: &SkewPoly<RationalFunc>) -> String {
    let mut terms = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        let cs = field.display(c);
        let cs = if i > 0 && (cs.contains(' ') || cs.contains('/')) {
            paren(cs)
        } else {
            cs
        };
        terms.push(crate::algebra::display::term(&cs, &mono));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Reduction of a global module at a prime of good (verbatim) reduction.
#[derive(Clone, Debug)]
pub struct ReducedModule {
    pub prime: PrimePoly,
    pub residue: Gf,
    pub module: DrinfeldModule<Gf>,
}

/// Maps coefficients into `F_q[T]/(P)` with `T` sent to the class of `T`.
pub fn reduce_mod(phi: &GlobalModule, p: &PrimePoly) -> Result<ReducedModule> {
    let field = phi.field();
    let fq = field.fq();
    let residue = Gf::new_unchecked(fq, p.poly().clone());
    let r = phi.rank();
    let mut coeffs = Vec::with_capacity(r);
    for (i, g) in phi.coeffs().iter().enumerate() {
        if field.is_zero(g) {
            coeffs.push(residue.zero());
            continue;
        }
        let v = field.valuation(g, &Place::Finite(p.clone()))?;
        if v < 0 {
            return Err(Error::BadReduction {
                prime: p.display(fq),
                detail: format!("v_P(g_{}) = {v} < 0", i + 1),
            });
        }
        if i + 1 == r && v > 0 {
            return Err(Error::BadReduction {
                prime: p.display(fq),
                detail: format!("v_P(g_{r}) = {v} > 0 on the leading coefficient"),
            });
        }
        let red = field.reduce_mod(g, p.poly()).unwrap();
        coeffs.push(residue.reduce(&red));
    }
    let module = DrinfeldModule::new(&residue, residue.gen(), coeffs)?;
    Ok(ReducedModule {
        prime: p.clone(),
        residue,
        module,
    })
}

impl ReducedModule {
    pub fn degree(&self) -> usize {
        self.prime.degree()
    }
}

/// Text form of a module's `phi_T`.
pub fn display_module(phi: &GlobalModule) -> String {
    display_skew(phi.field(), &phi.phi_t())
}

/// Text form of a polynomial in `T`.
pub fn display_a(phi: &GlobalModule, a: &Poly<FqElem>) -> String {
    fmt_poly(phi.field().fq(), a, "T")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, PolyRing};

    fn flagship() -> GlobalModule {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let t = f.t();
        module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap()
    }

    #[test]
    fn torsion_polynomial_at_t_plus_one() {
        let phi = flagship();
        let f = phi.field().clone();
        let fq = f.fq().clone();
        let a = fq.poly(vec![FqElem(1), FqElem(1)]);
        let tp = phi.torsion_polynomial(&a);
        assert_eq!(tp.degree(), Some(9));
        assert_eq!(tp.coeffs()[1], f.t_plus(FqElem(1)));
        assert_eq!(tp.coeffs()[3], f.one());
        assert_eq!(display_module(&phi), "T + t + 2*T^2*t^2");
    }

    #[test]
    fn reduction_examples() {
        let phi = flagship();
        let fq = phi.field().fq().clone();
        let red = reduce_mod(&phi, &PrimePoly::linear(&fq, FqElem(1))).unwrap();
        assert_eq!(red.module.gamma_t(), &vec![FqElem(2)]);
        assert_eq!(red.module.g(2), &vec![FqElem(2)]);
        assert!(matches!(
            reduce_mod(&phi, &PrimePoly::linear(&fq, FqElem(0))),
            Err(Error::BadReduction { .. })
        ));
    }

    #[test]
    fn det_module_of_flagship() {
        let phi = flagship();
        let f = phi.field().clone();
        let psi = phi.det_module().unwrap();
        assert_eq!(psi.g(1), &f.mul(&f.t(), &f.t()));
        assert!(carlitz(&f).det_module().is_err());
    }
}
