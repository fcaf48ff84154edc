//! Quadratic subextensions of division fields, their constant/cyclotomic/wild decomposition,
//! and witnesses that the adelic representation is not surjective.

use serde::Serialize;

use crate::algebra::artin_schreier::as_reduce;
use crate::algebra::{
    enumerate_primes, kummer_class, AsClass, FiniteField, Field, Fq, FqAlgebra, FqElem, KummerClass, Poly, PolyRing,
    PrimePoly, RationalField,
};
use crate::bivariate::{Bivar, BivarRing};
use crate::drinfeld::{carlitz, GlobalModule};
use crate::error::{Error, Result};
use crate::image::{verify_subfield_by_splitting, SplitReport};
use crate::splitting::splitting_field_degree;
use crate::tower::bareiss_det;

/// A quadratic extension of `F`: a square class for odd `q`, an Artin-Schreier class for `q = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadClass {
    Kummer(KummerClass),
    ArtinSchreier(AsClass),
}

#[derive(Clone, Debug)]
pub struct QuadExtDescriptor {
    pub class: QuadClass,
    /// Which field and construction produced the class.
    pub provenance: String,
}

impl PartialEq for QuadExtDescriptor {
    fn eq(&self, o: &Self) -> bool {
        self.class == o.class
    }
}

impl QuadExtDescriptor {
    pub fn kummer(c: KummerClass, provenance: impl Into<String>) -> Self {
        QuadExtDescriptor {
            class: QuadClass::Kummer(c),
            provenance: provenance.into(),
        }
    }

    pub fn artin_schreier(c: AsClass, provenance: impl Into<String>) -> Self {
        QuadExtDescriptor {
            class: QuadClass::ArtinSchreier(c),
            provenance: provenance.into(),
        }
    }

    pub fn is_trivial(&self, fq: &Fq) -> bool {
        match &self.class {
            QuadClass::Kummer(k) => k.is_square(fq),
            QuadClass::ArtinSchreier(a) => a.is_trivial(),
        }
    }

    /// `+1` split, `-1` inert, `None` ramified.
    pub fn character(&self, fq: &Fq, p: &PrimePoly) -> Option<i8> {
        match &self.class {
            QuadClass::Kummer(k) => k.character(fq, p),
            QuadClass::ArtinSchreier(a) => a.character(fq, p),
        }
    }

    /// The class of the compositum's third quadratic subfield.
    pub fn product(&self, fq: &Fq, o: &QuadExtDescriptor) -> Result<QuadExtDescriptor> {
        let prov = format!("({}) * ({})", self.provenance, o.provenance);
        match (&self.class, &o.class) {
            (QuadClass::Kummer(a), QuadClass::Kummer(b)) => Ok(QuadExtDescriptor::kummer(a.mul(fq, b), prov)),
            (QuadClass::ArtinSchreier(a), QuadClass::ArtinSchreier(b)) => {
                let f = RationalField::new(fq);
                let s = f.add(&a.to_rational(fq), &b.to_rational(fq));
                Ok(QuadExtDescriptor::artin_schreier(as_reduce(fq, &s)?, prov))
            }
            _ => Err(Error::InvalidInput("mixing square and Artin-Schreier classes".into())),
        }
    }

    pub fn display(&self, fq: &Fq) -> String {
        match &self.class {
            QuadClass::Kummer(k) => format!("F(sqrt({}))", k.display(fq)),
            QuadClass::ArtinSchreier(a) => format!("F(y), y^2 + y = {}", a.display(fq)),
        }
    }
}

/// Decomposition of a quadratic character into constant, tame cyclotomic and wild parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HayesClass {
    pub constant_part: bool,
    /// Monic squarefree support of the finite ramification.
    pub cyclotomic_conductor: Poly<FqElem>,
    /// Exact conductor exponents (odd `q`: all 1).
    pub conductor_exponents: Vec<(PrimePoly, usize)>,
    pub wild_part: bool,
}

impl HayesClass {
    pub fn is_trivial(&self) -> bool {
        !self.constant_part && self.cyclotomic_conductor.degree() == Some(0) && !self.wild_part
    }

    /// Nontrivial in both the constant and cyclotomic directions.
    pub fn is_mixed(&self) -> bool {
        self.constant_part && (self.cyclotomic_conductor.degree().unwrap_or(0) > 0 || self.wild_part)
    }

    /// `prod P^e` over the conductor exponents.
    pub fn conductor(&self, fq: &Fq) -> Poly<FqElem> {
        self.conductor_exponents
            .iter()
            .fold(fq.pone(), |acc, (p, e)| fq.pmul(&acc, &fq.ppow(p.poly(), *e as u64)))
    }
}

/// Sign `(-1)^(deg m (q-1)/2)` carried by the Carlitz quadratic classes of the primes of `m`.
fn cyclotomic_sign(fq: &Fq, m: &Poly<FqElem>) -> FqElem {
    let e = m.degree().unwrap_or(0) * (fq.order() - 1) / 2;
    if e % 2 == 0 {
        fq.one()
    } else {
        fq.from_int(-1)
    }
}

pub fn hayes_classify(fq: &Fq, d: &QuadExtDescriptor) -> HayesClass {
    match &d.class {
        QuadClass::Kummer(k) => {
            // eta m = (eta eps(m)) * prod (eps_P P) with eps_P P the Carlitz class of P
            let c = fq.mul(&k.unit, &cyclotomic_sign(fq, &k.monic_part));
            HayesClass {
                constant_part: !fq.is_square(&c),
                cyclotomic_conductor: k.monic_part.clone(),
                conductor_exponents: k.primes(fq).into_iter().map(|p| (p, 1)).collect(),
                wild_part: false,
            }
        }
        QuadClass::ArtinSchreier(a) => {
            let exps = a.conductor_exponents();
            let rad = exps.iter().fold(fq.pone(), |acc, (p, _)| fq.pmul(&acc, p.poly()));
            HayesClass {
                constant_part: a.constant_part.0 == 1,
                cyclotomic_conductor: rad,
                conductor_exponents: exps,
                wild_part: a.wild_part(),
            }
        }
    }
}

/// Discriminant of a monic `f` in `F_q[T][x]` (as a polynomial in `T`).
pub fn discriminant(fq: &Fq, f: &[Poly<FqElem>]) -> Poly<FqElem> {
    let ring = BivarRing::new(fq);
    let n = f.len() - 1;
    assert!(n >= 1 && f[n] == fq.pone(), "discriminant expects a monic polynomial");
    let df: Vec<Poly<FqElem>> = (1..=n).map(|i| fq.pscale(&f[i], &fq.from_int(i as i64))).collect();
    // Sylvester matrix of f (degree n) and f' (formal degree n - 1), highest coefficients first
    let size = 2 * n - 1;
    let mut m = vec![vec![Bivar::zero(); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            m[r][r + j] = Bivar::from_t(c.clone());
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            m[n - 1 + r][r + j] = Bivar::from_t(c.clone());
        }
    }
    let res = if size == 1 {
        m[0][0].clone()
    } else {
        bareiss_det(&ring, m)
    };
    let res = res.row(0).cloned().unwrap_or_else(Poly::zero);
    if (n * (n - 1) / 2) % 2 == 1 {
        fq.pneg(&res)
    } else {
        res
    }
}

/// Quadratic subfield of `F(C[P])` as the square class of the discriminant of `C_P(x)/x`.
pub fn carlitz_quad_by_discriminant(fq: &Fq, p: &PrimePoly) -> Result<QuadExtDescriptor> {
    if fq.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let f = RationalField::new(fq);
    let tp = carlitz(&f).torsion_polynomial(p.poly());
    let coeffs: Vec<Poly<FqElem>> = tp.coeffs()[1..]
        .iter()
        .map(|c| f.as_poly(c).expect("Carlitz torsion coefficients are polynomials"))
        .collect();
    let disc = discriminant(fq, &coeffs);
    let k = kummer_class(fq, &f.from_poly(disc))?;
    Ok(QuadExtDescriptor::kummer(k, format!("F(C[{}]) via discriminant", p.display(fq))))
}

/// The quadratic subfield of `F(C[P])`: computed directly for `deg P <= 2`, by the sign rule above.
pub fn carlitz_quad_subfield(fq: &Fq, p: &PrimePoly) -> Result<QuadExtDescriptor> {
    if fq.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if p.degree() <= 2 {
        return carlitz_quad_by_discriminant(fq, p);
    }
    let f = RationalField::new(fq);
    let eta = cyclotomic_sign(fq, p.poly());
    let d = f.from_poly(fq.pscale(p.poly(), &eta));
    Ok(QuadExtDescriptor::kummer(
        kummer_class(fq, &d)?,
        format!("F(C[{}]) via sign rule", p.display(fq)),
    ))
}

/// The quadratic subextension of `F(phi[T + i])`.
pub fn quad_subext(phi: &GlobalModule, l: &PrimePoly) -> Result<QuadExtDescriptor> {
    let f = phi.field();
    let fq = f.fq();
    if phi.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, found: phi.rank() });
    }
    if l.degree() != 1 {
        return Err(Error::InvalidInput("modulus must have degree 1".into()));
    }
    let lr = f.from_poly(l.poly().clone());
    let (g1, g2) = (phi.g(1), phi.g(2));
    let prov = format!("F(phi[{}])", l.display(fq));
    match fq.order() {
        3 => {
            // F(psi[T+i]) with psi_T = T - g2 tau: x^2 = (T+i)/g2
            let d = f.div(&lr, g2).unwrap();
            Ok(QuadExtDescriptor::kummer(kummer_class(fq, &d)?, format!("{prov}: det module")))
        }
        2 => {
            if f.is_zero(g1) {
                let one = as_reduce(fq, &f.one())?;
                return Ok(QuadExtDescriptor::artin_schreier(one, format!("{prov}: constant field")));
            }
            let order = splitting_field_degree(phi, l.poly())?.degree;
            if order != 6 {
                return Err(Error::ImageTooSmall { order: order as u64 });
            }
            // cubic resolvent x^3 + x + b with b = (T+i)^4 g2^2 / g1^6
            let b = f.div(&f.mul(&f.pow_u64(&lr, 4), &f.mul(g2, g2)), &f.pow_u64(g1, 6)).unwrap();
            let b2 = f.mul(&b, &b);
            let val = f.div(&f.add(&f.one(), &b2), &b2).unwrap();
            Ok(QuadExtDescriptor::artin_schreier(as_reduce(fq, &val)?, format!("{prov}: cubic resolvent")))
        }
        q => Err(Error::UnsupportedField(format!("quadratic subextensions are built for q in {{2, 3}}, got {q}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    TwoConstant,
    SharedQuadraticClass,
    DetDeficient,
    CarlitzLinkage,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModulusData {
    pub modulus: String,
    pub descriptor: Option<String>,
    pub classification: Option<HayesClass>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntanglementWitness {
    pub kind: WitnessKind,
    pub moduli: Vec<String>,
    pub descriptor: Option<String>,
    pub classification: Option<HayesClass>,
    pub validation: Option<SplitReport>,
    pub per_modulus: Vec<ModulusData>,
    /// Moduli whose quadratic subextension is wildly ramified at infinity.
    pub wild_moduli: Vec<String>,
    pub explanation: String,
}

/// Degree bound for the split-prime validation; over `F_2` few primes of low degree split.
pub fn witness_sample_degree(fq: &Fq) -> usize {
    if fq.order() == 2 {
        10
    } else {
        6
    }
}

/// Runs the case analysis over the degree-1 moduli of a rank-2 module with `q` in `{2, 3}`.
pub fn nonsurjectivity_witness(phi: &GlobalModule) -> Result<EntanglementWitness> {
    let fq = phi.field().fq().clone();
    if ![2, 3].contains(&fq.order()) {
        return Err(Error::UnsupportedField(format!("witnesses are built for q in {{2, 3}}, got {}", fq.order())));
    }
    let moduli: Vec<PrimePoly> = fq.all().map(|c| PrimePoly::linear(&fq, c)).collect();
    let mut per = Vec::new();
    let mut wild = Vec::new();
    let mut descs: Vec<(PrimePoly, QuadExtDescriptor, HayesClass)> = Vec::new();
    for l in &moduli {
        let name = l.display(&fq);
        match quad_subext(phi, l) {
            Ok(d) => {
                let h = hayes_classify(&fq, &d);
                if h.wild_part {
                    wild.push(name.clone());
                }
                per.push(ModulusData {
                    modulus: name,
                    descriptor: Some(d.display(&fq)),
                    classification: Some(h.clone()),
                    note: None,
                });
                descs.push((l.clone(), d, h));
            }
            Err(Error::ImageTooSmall { order }) => {
                per.push(ModulusData {
                    modulus: name.clone(),
                    descriptor: None,
                    classification: None,
                    note: Some(format!("mod-l image has order {order}")),
                });
                return Ok(EntanglementWitness {
                    kind: WitnessKind::DetDeficient,
                    moduli: vec![name],
                    descriptor: None,
                    classification: None,
                    validation: None,
                    per_modulus: per,
                    wild_moduli: wild.clone(),
                    explanation: format!("the image mod this modulus has order {order} < 6, so it is not GL_2(F_2)"),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let names = |ls: &[&PrimePoly]| ls.iter().map(|l| l.display(&fq)).collect::<Vec<_>>();
    if let Some((l, d, h)) = descs.iter().find(|(_, d, _)| d.is_trivial(&fq)) {
        return Ok(EntanglementWitness {
            kind: WitnessKind::DetDeficient,
            moduli: names(&[l]),
            descriptor: Some(d.display(&fq)),
            classification: Some(h.clone()),
            validation: None,
            per_modulus: per,
            wild_moduli: wild.clone(),
            explanation: "the quadratic subextension is trivial, so the determinant is not surjective".into(),
        });
    }
    for i in 0..descs.len() {
        for j in i + 1..descs.len() {
            let (li, di, hi) = &descs[i];
            let (lj, dj, _) = &descs[j];
            if di == dj {
                let constant = hi.constant_part
                    && hi.cyclotomic_conductor.degree() == Some(0)
                    && !hi.wild_part;
                return Ok(EntanglementWitness {
                    kind: if constant { WitnessKind::TwoConstant } else { WitnessKind::SharedQuadraticClass },
                    moduli: names(&[li, lj]),
                    descriptor: Some(di.display(&fq)),
                    classification: Some(hi.clone()),
                    validation: None,
                    per_modulus: per,
                    wild_moduli: wild.clone(),
                    explanation: "two coprime division fields share a quadratic subextension".into(),
                });
            }
        }
    }
    for (l, d, h) in &descs {
        let a = h.conductor(&fq);
        if h.constant_part || h.wild_part || a.degree() == Some(0) {
            continue;
        }
        if !fq.prem(&a, l.poly()).unwrap().is_zero() {
            let rep = match verify_subfield_by_splitting(d, phi, &a, witness_sample_degree(&fq), 0) {
                Ok(r) => Some(r),
                Err(Error::SizeLimit(_)) => None,
                Err(e) => return Err(e),
            };
            if rep.as_ref().map_or(true, |r| r.counterexamples.is_empty()) {
                return Ok(EntanglementWitness {
                    kind: WitnessKind::CarlitzLinkage,
                    moduli: vec![l.display(&fq), crate::algebra::display::fmt_poly(&fq, &a, "T")],
                    descriptor: Some(d.display(&fq)),
                    classification: Some(h.clone()),
                    validation: rep,
                    per_modulus: per,
                    wild_moduli: wild.clone(),
                    explanation: "the quadratic subextension lies in a Carlitz field of coprime conductor".into(),
                });
            }
        }
    }
    Ok(EntanglementWitness {
        kind: WitnessKind::Inconclusive,
        moduli: names(&moduli.iter().collect::<Vec<_>>()),
        descriptor: None,
        classification: None,
        validation: None,
        per_modulus: per,
        wild_moduli: wild,
        explanation: "no pure case applies; classes are recorded per modulus".into(),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimComparison {
    pub modulus: String,
    pub det_class: String,
    pub carlitz_class: String,
    pub differ: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClaimReport {
    pub minus_g2_nonsquare: bool,
    pub comparisons: Vec<ClaimComparison>,
    pub precondition_violated: bool,
}

/// Compares `F(sqrt((T+i)/g2))` with `F(sqrt(-(T+i)))` for each `i` over `F_3`.
pub fn claim_check_5_1(phi: &GlobalModule) -> Result<ClaimReport> {
    let f = phi.field();
    let fq = f.fq();
    if fq.order() != 3 {
        return Err(Error::UnsupportedField("the comparison is stated over F_3".into()));
    }
    let g2 = phi.g(2);
    let mg2 = kummer_class(fq, &f.neg(g2))?;
    let minus_g2_nonsquare = !mg2.is_square(fq);
    let mut comparisons = Vec::new();
    for c in fq.all() {
        let l = PrimePoly::linear(fq, c);
        let lr = f.from_poly(l.poly().clone());
        let a = kummer_class(fq, &f.div(&lr, g2).unwrap())?;
        let b = kummer_class(fq, &f.neg(&lr))?;
        comparisons.push(ClaimComparison {
            modulus: l.display(fq),
            det_class: a.display(fq),
            carlitz_class: b.display(fq),
            differ: a != b,
        });
    }
    let all_differ = comparisons.iter().all(|c| c.differ);
    assert_eq!(all_differ, minus_g2_nonsquare, "class comparison disagrees with the square test");
    Ok(ClaimReport {
        minus_g2_nonsquare,
        comparisons,
        precondition_violated: !minus_g2_nonsquare,
    })
}

/// Primes of degree `<= max_deg` where a descriptor's character is defined.
pub fn unramified_primes(fq: &Fq, d: &QuadExtDescriptor, max_deg: usize) -> Vec<(PrimePoly, i8)> {
    enumerate_primes(fq, max_deg)
        .into_iter()
        .filter_map(|p| d.character(fq, &p).map(|c| (p, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carlitz_classes_over_f3() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        for c in 0..3 {
            let p = PrimePoly::linear(&f3, FqElem(c));
            let d = carlitz_quad_subfield(&f3, &p).unwrap();
            let want = kummer_class(&f3, &f.neg(&f.from_poly(p.poly().clone()))).unwrap();
            assert_eq!(d.class, QuadClass::Kummer(want));
            let h = hayes_classify(&f3, &d);
            assert!(!h.constant_part);
            assert_eq!(h.cyclotomic_conductor, p.poly().clone());
        }
    }

    #[test]
    fn hayes_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let f = RationalField::new(&f3);
        let k = |r| QuadExtDescriptor::kummer(kummer_class(&f3, &r).unwrap(), "test");
        let m1 = hayes_classify(&f3, &k(f.from_int(-1)));
        assert!(m1.constant_part && m1.cyclotomic_conductor == f3.pone());
        let t = hayes_classify(&f3, &k(f.t()));
        assert!(t.constant_part && t.is_mixed());
    }

    #[test]
    fn discriminant_of_quadratic() {
        let f3 = Fq::new(3, 1).unwrap();
        // x^2 + T has discriminant -4T = -T
        let d = discriminant(&f3, &[f3.px(), Poly::zero(), f3.pone()]);
        assert_eq!(d, f3.pneg(&f3.px()));
    }
}
