use drinfeld_core::algebra::{enumerate_primes, Field, Fq, FqAlgebra, FqElem, PolyRing, PrimePoly, RationalField};
use drinfeld_core::drinfeld::{module_over_f, reduce_mod, GlobalModule};
use drinfeld_core::frobenius::{
    check_charpoly, frob_charpoly, frob_matrix_mod_l, rank1_action_mod_l, rank1_frobenius, sign_character,
};

fn flagship() -> GlobalModule {
    let f3 = Fq::new(3, 1).unwrap();
    let f = RationalField::new(&f3);
    let t = f.t();
    module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap()
}

#[test]
fn charpoly_identity_for_all_small_primes() {
    let phi = flagship();
    let fq = phi.field().fq().clone();
    let mut good = 0;
    for p in enumerate_primes(&fq, 4) {
        let Ok(red) = reduce_mod(&phi, &p) else { continue };
        let cp = frob_charpoly(&red).unwrap();
        assert!(check_charpoly(&red, &cp));
        assert!(2 * cp.a.degree().unwrap_or(0) <= p.degree());
        good += 1;
    }
    assert!(good > 20);
}

#[test]
fn det_matches_determinant_module() {
    let phi = flagship();
    let fq = phi.field().fq().clone();
    let psi = phi.det_module().unwrap();
    for p in enumerate_primes(&fq, 3) {
        let Ok(red) = reduce_mod(&phi, &p) else { continue };
        let rpsi = reduce_mod(&psi, &p).unwrap();
        let mu = rank1_frobenius(&rpsi).unwrap();
        for c in 0..3 {
            let l = PrimePoly::linear(&fq, FqElem(c));
            if l == p {
                continue;
            }
            let m = frob_matrix_mod_l(&red, &l).unwrap().matrix;
            let scalar = fq.prem(&fq.pscale(p.poly(), &mu), l.poly()).unwrap();
            assert_eq!(m.det(&fq), scalar, "P = {}", p.display(&fq));
            assert_eq!(rank1_action_mod_l(&rpsi, &l).unwrap(), scalar);
        }
    }
}

#[test]
fn constant_sign_character_when_g1_vanishes() {
    let f2 = Fq::new(2, 1).unwrap();
    let f = RationalField::new(&f2);
    let t = f.t();
    for g2 in [t.clone(), f.add(&t, &f.one()), f.mul(&t, &t)] {
        let phi = module_over_f(&f, vec![f.zero(), g2]).unwrap();
        for i in 0..2u8 {
            for p in enumerate_primes(&f2, 6) {
                match sign_character(&phi, i, &p) {
                    Ok(s) => {
                        let want = if p.degree() % 2 == 0 { 1 } else { -1 };
                        assert_eq!(s, want, "P = {}", p.display(&f2));
                    }
                    Err(_) => continue,
                }
            }
        }
    }
}
