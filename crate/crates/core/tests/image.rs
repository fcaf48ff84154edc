use std::time::Instant;

use drinfeld_core::algebra::{Field, Fq, PrimePoly, RationalField};
use drinfeld_core::drinfeld::module_over_f;
use drinfeld_core::image::{certify_mod_l_surjective, Verdict};

#[test]
fn flagship_certificates_are_surjective() {
    let fq = Fq::new(3, 1).unwrap();
    let f = RationalField::new(&fq);
    let t = f.t();
    let phi = module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap();
    for c in fq.all() {
        let start = Instant::now();
        let l = PrimePoly::linear(&fq, c);
        let cert = certify_mod_l_surjective(&phi, &l, 6).unwrap();
        assert_eq!(cert.verdict, Verdict::Surjective, "mod {}", cert.modulus);
        assert!(!cert.det_deficient);
        eprintln!("mod {}: {} primes, {:?}", cert.modulus, cert.sampled.len(), start.elapsed());
    }
}

#[test]
fn f4_certificates_are_surjective() {
    let fq = Fq::new(2, 2).unwrap();
    let f = RationalField::new(&fq);
    let t3 = f.pow_u64(&f.t(), 3);
    let phi = module_over_f(&f, vec![f.one(), f.neg(&t3)]).unwrap();
    for c in fq.all() {
        let start = Instant::now();
        let l = PrimePoly::linear(&fq, c);
        let cert = certify_mod_l_surjective(&phi, &l, 6).unwrap();
        assert_eq!(cert.verdict, Verdict::Surjective, "mod {}", cert.modulus);
        eprintln!("mod {}: {} primes, {:?}", cert.modulus, cert.sampled.len(), start.elapsed());
    }
}
