use drinfeld_core::algebra::{
    as_reduce, enumerate_primes, kummer_class, Field, Fq, FqElem, PolyRing, PrimePoly, RationalField,
};
use drinfeld_core::classfield::*;
use drinfeld_core::drinfeld::module_over_f;
use drinfeld_core::frobenius::sign_character;
use drinfeld_core::image::verify_subfield_by_splitting;

fn f2() -> (Fq, RationalField) {
    let fq = Fq::new(2, 1).unwrap();
    let f = RationalField::new(&fq);
    (fq, f)
}

fn f3() -> (Fq, RationalField) {
    let fq = Fq::new(3, 1).unwrap();
    let f = RationalField::new(&fq);
    (fq, f)
}

#[test]
fn quad_subext_over_f3_is_the_det_class() {
    let (fq, f) = f3();
    let phi = module_over_f(&f, vec![f.one(), f.one()]).unwrap();
    let d = quad_subext(&phi, &PrimePoly::linear(&fq, FqElem(0))).unwrap();
    let want = kummer_class(&fq, &f.t()).unwrap();
    assert_eq!(want.unit, FqElem(1));
    assert_eq!(d.class, QuadClass::Kummer(want));
}

#[test]
fn quad_subext_over_f2() {
    let (fq, f) = f2();
    let l = PrimePoly::linear(&fq, FqElem(0));
    let constant = module_over_f(&f, vec![f.zero(), f.t()]).unwrap();
    let d = quad_subext(&constant, &l).unwrap();
    let h = hayes_classify(&fq, &d);
    assert!(h.constant_part && !h.wild_part && h.cyclotomic_conductor == fq.pone());

    let phi = module_over_f(&f, vec![f.one(), f.one()]).unwrap();
    let d = quad_subext(&phi, &l).unwrap();
    // b = T^4, class of (1 + b^2) / b^2
    let b2 = f.pow_u64(&f.t(), 8);
    let want = as_reduce(&fq, &f.div(&f.add(&f.one(), &b2), &b2).unwrap()).unwrap();
    assert_eq!(d.class, QuadClass::ArtinSchreier(want.clone()));
    assert_eq!(want.constant_part, FqElem(1));
    assert_eq!(want.finite_parts.keys().cloned().collect::<Vec<_>>(), vec![l.clone()]);
    assert!(!hayes_classify(&fq, &d).wild_part);
}

#[test]
fn resolvent_character_matches_frobenius_parity() {
    let (fq, f) = f2();
    let modules = [
        (f.one(), f.one()),
        (f.t(), f.one()),
        (f.t(), f.t_plus(FqElem(1))),
        (f.t_plus(FqElem(1)), f.mul(&f.t(), &f.t())),
    ];
    for (g1, g2) in modules {
        let phi = module_over_f(&f, vec![g1, g2]).unwrap();
        for i in 0..2u8 {
            let l = PrimePoly::linear(&fq, FqElem(i));
            let Ok(d) = quad_subext(&phi, &l) else { continue };
            for p in enumerate_primes(&fq, 6) {
                let Some(chi) = d.character(&fq, &p) else { continue };
                if let Ok(s) = sign_character(&phi, i, &p) {
                    assert_eq!(chi, s, "at {}", p.display(&fq));
                }
            }
        }
    }
}

#[test]
fn wild_resolvent_exists() {
    // the quadratic subfield of F(phi[T]) for T + T tau + tau^2 is y^2 + y = T + 1
    let (fq, f) = f2();
    let phi = module_over_f(&f, vec![f.t(), f.one()]).unwrap();
    let d = quad_subext(&phi, &PrimePoly::linear(&fq, FqElem(0))).unwrap();
    assert_eq!(d.class, QuadClass::ArtinSchreier(as_reduce(&fq, &f.t_plus(FqElem(1))).unwrap()));
    assert!(hayes_classify(&fq, &d).wild_part);
}

#[test]
fn carlitz_subfield_rule_matches_discriminant() {
    let (fq, _) = f3();
    for p in enumerate_primes(&fq, 2) {
        let direct = carlitz_quad_by_discriminant(&fq, &p).unwrap();
        let eps = if p.degree() % 2 == 1 { fq.from_int(-1) } else { fq.one() };
        let f = RationalField::new(&fq);
        let rule = kummer_class(&fq, &f.from_poly(fq.pscale(p.poly(), &eps))).unwrap();
        assert_eq!(direct.class, QuadClass::Kummer(rule), "at {}", p.display(&fq));
    }
    let f9 = Fq::new(3, 2).unwrap();
    let f = RationalField::new(&f9);
    for p in enumerate_primes(&f9, 1) {
        // (q - 1) / 2 = 4 is even, so the class is P itself
        let direct = carlitz_quad_by_discriminant(&f9, &p).unwrap();
        let rule = kummer_class(&f9, &f.from_poly(p.poly().clone())).unwrap();
        assert_eq!(direct.class, QuadClass::Kummer(rule));
    }
}

#[test]
fn carlitz_subfield_of_t_squared_plus_one() {
    let (fq, f) = f3();
    let p = PrimePoly::new(&fq, fq.poly(vec![FqElem(1), FqElem(0), FqElem(1)])).unwrap();
    let d = carlitz_quad_subfield(&fq, &p).unwrap();
    assert_eq!(d.class, QuadClass::Kummer(kummer_class(&fq, &f.from_poly(p.poly().clone())).unwrap()));
    assert!(!hayes_classify(&fq, &d).constant_part);
}

#[test]
fn two_constant_witnesses() {
    let (fq, f) = f2();
    for g2 in [
        fq.poly(vec![FqElem(0), FqElem(1)]),
        fq.poly(vec![FqElem(1), FqElem(1)]),
        fq.poly(vec![FqElem(1), FqElem(1), FqElem(1)]),
    ] {
        let phi = module_over_f(&f, vec![f.zero(), f.from_poly(g2)]).unwrap();
        let w = nonsurjectivity_witness(&phi).unwrap();
        assert_eq!(w.kind, WitnessKind::TwoConstant);
        assert_eq!(w.moduli, vec!["T".to_string(), "T + 1".to_string()]);
    }
}

#[test]
fn det_deficient_and_mixed_witnesses_over_f3() {
    let (fq, f) = f3();
    let phi = module_over_f(&f, vec![f.one(), f.t()]).unwrap();
    let w = nonsurjectivity_witness(&phi).unwrap();
    assert_eq!(w.kind, WitnessKind::DetDeficient);
    assert_eq!(w.moduli, vec!["T".to_string()]);

    let phi = module_over_f(&f, vec![f.one(), f.one()]).unwrap();
    let w = nonsurjectivity_witness(&phi).unwrap();
    for m in &w.per_modulus {
        let h = m.classification.as_ref().unwrap();
        assert!(h.is_mixed(), "{}", m.modulus);
    }
    for c in fq.all() {
        let l = PrimePoly::linear(&fq, c);
        let d = quad_subext(&phi, &l).unwrap();
        let want = kummer_class(&fq, &f.from_poly(l.poly().clone())).unwrap();
        assert_eq!(d.class, QuadClass::Kummer(want));
    }
}

#[test]
fn carlitz_linkage_over_f2() {
    let (fq, f) = f2();
    let phi = module_over_f(&f, vec![f.t(), f.t_plus(FqElem(1))]).unwrap();
    let w = nonsurjectivity_witness(&phi).unwrap();
    assert_eq!(w.kind, WitnessKind::CarlitzLinkage);
    let v = w.validation.unwrap();
    assert!(v.split_primes_checked > 0);
    assert!(v.counterexamples.is_empty());
    // conductor (T + 1)^2 of y^2 + y = 1/(T + 1)
    let d = quad_subext(&phi, &PrimePoly::linear(&fq, FqElem(0))).unwrap();
    let a = hayes_classify(&fq, &d).conductor(&fq);
    assert_eq!(a, fq.poly(vec![FqElem(1), FqElem(0), FqElem(1)]));
    let rep = verify_subfield_by_splitting(&d, &phi, &a, 10, 1).unwrap();
    assert!(rep.counterexamples.is_empty());
}

#[test]
fn claim_check_cases() {
    let (_, f) = f3();
    let r = claim_check_5_1(&module_over_f(&f, vec![f.one(), f.one()]).unwrap()).unwrap();
    assert!(r.minus_g2_nonsquare && r.comparisons.iter().all(|c| c.differ));
    let r = claim_check_5_1(&module_over_f(&f, vec![f.one(), f.from_int(-1)]).unwrap()).unwrap();
    assert!(r.precondition_violated && r.comparisons.iter().all(|c| !c.differ));
    let r = claim_check_5_1(&module_over_f(&f, vec![f.one(), f.t_plus(FqElem(1))]).unwrap()).unwrap();
    // -(T + 1) is not a square, so T / (T + 1) and -T differ
    assert!(r.comparisons[0].differ);
}

#[test]
fn descriptor_product_is_exact() {
    let (fq, f) = f3();
    let a = QuadExtDescriptor::kummer(kummer_class(&fq, &f.t()).unwrap(), "a");
    let p = a.product(&fq, &a).unwrap();
    assert!(p.is_trivial(&fq));
    let (fq2, f2) = f2();
    let x = QuadExtDescriptor::artin_schreier(as_reduce(&fq2, &f2.t()).unwrap(), "x");
    assert!(x.product(&fq2, &x).unwrap().is_trivial(&fq2));
}

#[test]
fn constant_resolvent_with_nonzero_g1() {
    // g1^3 / (T^2 g2) = ((T + 1) / T^2)^2 is AS-trivial, leaving the constant class
    let (fq, f) = f2();
    let g1 = f.t_plus(FqElem(1));
    let g2 = f.mul(&f.mul(&f.t(), &f.t()), &g1);
    let phi = module_over_f(&f, vec![g1, g2]).unwrap();
    let l = PrimePoly::linear(&fq, FqElem(0));
    let d = quad_subext(&phi, &l).unwrap();
    let h = hayes_classify(&fq, &d);
    assert!(h.constant_part && !h.wild_part && h.conductor(&fq) == fq.pone());
    let mut checked = 0;
    for p in enumerate_primes(&fq, 7) {
        if let Ok(s) = sign_character(&phi, 0, &p) {
            assert_eq!(s, if p.degree() % 2 == 0 { 1 } else { -1 }, "at {}", p.display(&fq));
            checked += 1;
        }
    }
    assert!(checked > 30);
}
