//! Mod-l image certificates from Frobenius sampling, and split-prime checks of subfield containment.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{enumerate_primes, kummer_class, Field, Fq, FqAlgebra, FqElem, Poly, PolyRing, PrimePoly};
use crate::classfield::QuadExtDescriptor;
use crate::drinfeld::{display_a, display_module, reduce_mod, GlobalModule};
use crate::error::{Error, Result};
use crate::frobenius::{frob_charpoly, frobenius_pattern};
use crate::groups::{gl2_small, mat_det, mat_trace, Mat, MatGroup, Subgroup};

/// Conjugation-invariant data of a Frobenius element mod `l`: trace, determinant and the
/// cycle lengths on nonzero torsion points.
pub type Signature = (u8, u8, Vec<usize>);

#[derive(Clone, Debug, Serialize)]
pub struct SampledPrime {
    pub prime: String,
    pub a: String,
    pub mu: u8,
    pub trace: u8,
    pub det: u8,
    pub pattern: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Surjective,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatibleSubgroup {
    pub order: usize,
    pub class_size: usize,
    /// Generators as row-major matrices over `F_l`.
    pub generators: Vec<[u8; 4]>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageCertificate {
    pub module: String,
    pub modulus: String,
    /// Conventions for the sampled data.
    pub header: String,
    pub sampled: Vec<SampledPrime>,
    pub bad_primes: Vec<String>,
    pub compatible_subgroups: Vec<CompatibleSubgroup>,
    pub verdict: Verdict,
    /// The realized determinants miss part of `F_l^*`.
    pub det_deficient: bool,
}

const HEADER: &str = "pi^2 - a pi + mu P = 0 with P monic; trace = a mod l, det = mu P mod l";

fn residue_of(fq: &Fq, f: &Poly<FqElem>, l: &PrimePoly) -> u8 {
    fq.prem(f, l.poly()).unwrap().coeff(0).map_or(0, |c| c.0)
}

fn sample_one(phi: &GlobalModule, l: &PrimePoly, p: &PrimePoly) -> Result<Option<SampledPrime>> {
    let fq = phi.field().fq();
    let red = match reduce_mod(phi, p) {
        Ok(r) => r,
        Err(Error::BadReduction { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let cp = frob_charpoly(&red)?;
    let pattern = frobenius_pattern(&red, l.poly())?;
    Ok(Some(SampledPrime {
        prime: p.display(fq),
        a: display_a(phi, &cp.a),
        mu: cp.mu.0,
        trace: residue_of(fq, &cp.a, l),
        det: residue_of(fq, &fq.pscale(p.poly(), &cp.mu), l),
        pattern,
    }))
}

fn signature(g: &MatGroup, m: &Mat) -> Signature {
    (mat_trace(&g.ring, m) as u8, mat_det(&g.ring, m) as u8, g.vector_pattern(m))
}

/// A small generating set of `h`, greedily.
fn generators(g: &MatGroup, h: &Subgroup) -> Vec<[u8; 4]> {
    let mut cur = g.group.trivial();
    let mut gens = Vec::new();
    for x in h.elements() {
        if !cur.contains(x) {
            cur = g.group.generate(&cur, &[x]);
            gens.push(g.mat(x).map(|e| e as u8));
        }
    }
    gens
}

/// Samples every good prime `P != l` with `deg P <= max_deg` and lists the subgroups of
/// `GL_2(F_l)` containing an element of each realized signature.
pub fn certify_mod_l_surjective(phi: &GlobalModule, l: &PrimePoly, max_deg: usize) -> Result<ImageCertificate> {
    let fq = phi.field().fq();
    if phi.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, found: phi.rank() });
    }
    if l.degree() != 1 {
        return Err(Error::InvalidInput("certificates need a modulus of degree 1".into()));
    }
    let g = gl2_small(fq.order())?;
    let primes: Vec<PrimePoly> = enumerate_primes(fq, max_deg).into_iter().filter(|p| p != l).collect();
    let results: Vec<Result<Option<SampledPrime>>> = primes.par_iter().map(|p| sample_one(phi, l, p)).collect();
    let mut sampled = Vec::new();
    let mut bad_primes = Vec::new();
    for (p, r) in primes.iter().zip(results) {
        match r? {
            Some(s) => sampled.push(s),
            None => bad_primes.push(p.display(fq)),
        }
    }
    let realized: BTreeSet<Signature> = sampled.iter().map(|s| (s.trace, s.det, s.pattern.clone())).collect();
    let mut compatible = Vec::new();
    for class in g.group.subgroups_by_generators()? {
        let sigs: BTreeSet<Signature> = class.rep.elements().iter().map(|&x| signature(&g, g.mat(x))).collect();
        if realized.is_subset(&sigs) {
            compatible.push(CompatibleSubgroup {
                order: class.order,
                class_size: class.class_size,
                generators: generators(&g, &class.rep),
            });
        }
    }
    let full = g.elements.len();
    let verdict = if compatible.len() == 1 && compatible[0].order == full {
        Verdict::Surjective
    } else {
        Verdict::Undecided
    };
    let dets: BTreeSet<u8> = sampled.iter().map(|s| s.det).collect();
    Ok(ImageCertificate {
        module: display_module(phi),
        modulus: l.display(fq),
        header: HEADER.into(),
        sampled,
        bad_primes,
        compatible_subgroups: compatible,
        verdict,
        det_deficient: dets.len() < fq.order() - 1,
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitReport {
    pub modulus: String,
    pub split_primes_checked: usize,
    pub counterexamples: Vec<String>,
    pub sampled: usize,
    pub vacuous: bool,
}

/// Refuse torsion modules larger than this in the split check.
pub const MAX_SPLIT_POINTS: usize = 81;

/// Checks `chi(P) = +1` at every sampled good prime that splits completely in `F(phi[a])`.
///
/// For odd `q` and a rank-2 module the primes must also split in `F(sqrt(-g_2))`, the field over
/// which the determinant module becomes the Carlitz module.
pub fn verify_subfield_by_splitting(
    desc: &QuadExtDescriptor,
    phi: &GlobalModule,
    a: &Poly<FqElem>,
    max_deg: usize,
    min_split: usize,
) -> Result<SplitReport> {
    let f = phi.field();
    let fq = f.fq();
    let da = a.degree().filter(|&d| d > 0).ok_or_else(|| Error::InvalidInput("modulus must have positive degree".into()))?;
    let name = display_a(phi, &fq.pmonic(a));
    if desc.is_trivial(fq) {
        return Ok(SplitReport {
            modulus: name,
            split_primes_checked: 0,
            counterexamples: vec![],
            sampled: 0,
            vacuous: true,
        });
    }
    let points = fq.order().pow((phi.rank() * da) as u32);
    if points > MAX_SPLIT_POINTS {
        return Err(Error::SizeLimit(format!("{points} torsion points exceed {MAX_SPLIT_POINTS}")));
    }
    let twist = if fq.p() != 2 && phi.rank() == 2 {
        Some(kummer_class(fq, &f.neg(phi.g(2)))?)
    } else {
        None
    };
    let primes: Vec<PrimePoly> = enumerate_primes(fq, max_deg)
        .into_iter()
        .filter(|p| !fq.prem(a, p.poly()).unwrap().is_zero())
        .collect();
    let outcome: Vec<Result<Option<(bool, i8)>>> = primes
        .par_iter()
        .map(|p| {
            let Some(chi) = desc.character(fq, p) else {
                return Ok(None);
            };
            if let Some(t) = &twist {
                if t.character(fq, p) != Some(1) {
                    return Ok(None);
                }
            }
            let red = match reduce_mod(phi, p) {
                Ok(r) => r,
                Err(Error::BadReduction { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let split = frobenius_pattern(&red, a)?.iter().all(|&c| c == 1);
            Ok(Some((split, chi)))
        })
        .collect();
    let mut checked = 0;
    let mut sampled = 0;
    let mut counterexamples = Vec::new();
    for (p, r) in primes.iter().zip(outcome) {
        if let Some((split, chi)) = r? {
            sampled += 1;
            if split {
                checked += 1;
                if chi != 1 {
                    counterexamples.push(p.display(fq));
                }
            }
        }
    }
    if checked < min_split {
        return Err(Error::InsufficientSplitPrimes { found: checked, needed: min_split });
    }
    Ok(SplitReport {
        modulus: name,
        split_primes_checked: checked,
        counterexamples,
        sampled,
        vacuous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalField;
    use crate::drinfeld::{carlitz, module_over_f};

    #[test]
    fn det_deficient_module_is_never_surjective() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let phi = module_over_f(&f, vec![f.one(), f.t()]).unwrap();
        let l = PrimePoly::linear(&f3, FqElem(0));
        let cert = certify_mod_l_surjective(&phi, &l, 4).unwrap();
        assert_eq!(cert.verdict, Verdict::Undecided);
        assert!(cert.det_deficient);
        assert!(cert.sampled.iter().all(|s| s.det == 1));
    }

    #[test]
    fn carlitz_quadratic_subfield_splits() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let l = PrimePoly::linear(&f3, FqElem(1));
        let m = kummer_class(&f3, &f.neg(&f.from_poly(l.poly().clone()))).unwrap();
        let desc = QuadExtDescriptor::kummer(m, "test");
        let rep = verify_subfield_by_splitting(&desc, &carlitz(&f), l.poly(), 6, 1).unwrap();
        assert!(rep.split_primes_checked > 0);
        assert!(rep.counterexamples.is_empty());
        // a field that is not inside F(C[T+1])
        let other = QuadExtDescriptor::kummer(kummer_class(&f3, &f.t()).unwrap(), "test");
        let rep = verify_subfield_by_splitting(&other, &carlitz(&f), l.poly(), 6, 1).unwrap();
        assert!(!rep.counterexamples.is_empty());
    }
}
