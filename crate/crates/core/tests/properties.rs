use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use drinfeld_core::algebra::{
    as_reduce, enumerate_primes, kummer_class, poly_factor, Field, FiniteField, Fq, FqAlgebra, FqElem, Place, Poly,
    PolyRing, PrimePoly, RationalField, RationalFunc,
};
use drinfeld_core::classfield::{hayes_classify, quad_subext, QuadExtDescriptor};
use drinfeld_core::drinfeld::{module_over_f, reduce_mod, GlobalModule};
use drinfeld_core::frobenius::{frob_charpoly, frobenius_pattern, sign_character};
use drinfeld_core::skew::SkewRing;
use drinfeld_core::splitting::splitting_field_degree;
use drinfeld_core::torsion::torsion_points_capped;

const ORDERS: [usize; 6] = [2, 3, 4, 8, 9, 16];

fn fields(q: usize) -> (Fq, RationalField) {
    let fq = Fq::with_order(q).unwrap();
    let f = RationalField::new(&fq);
    (fq, f)
}

fn poly(fq: &Fq, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<FqElem> {
    fq.poly((0..=max_deg).map(|_| fq.random(rng)).collect())
}

fn nonzero_poly(fq: &Fq, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<FqElem> {
    loop {
        let p = poly(fq, rng, max_deg);
        if !p.is_zero() {
            return p;
        }
    }
}

fn monic(fq: &Fq, rng: &mut ChaCha8Rng, deg: usize) -> Poly<FqElem> {
    let mut c: Vec<FqElem> = (0..deg).map(|_| fq.random(rng)).collect();
    c.push(fq.one());
    fq.poly(c)
}

fn ratfunc(f: &RationalField, rng: &mut ChaCha8Rng, h: usize) -> RationalFunc {
    let fq = f.fq();
    let num = poly(fq, rng, h);
    let d = rng.gen_range(0..=h);
    f.frac(num, monic(fq, rng, d)).unwrap()
}

fn nonzero_ratfunc(f: &RationalField, rng: &mut ChaCha8Rng, h: usize) -> RationalFunc {
    loop {
        let r = ratfunc(f, rng, h);
        if !f.is_zero(&r) {
            return r;
        }
    }
}

fn module(f: &RationalField, rng: &mut ChaCha8Rng, h: usize) -> GlobalModule {
    let g1 = ratfunc(f, rng, h);
    let g2 = nonzero_ratfunc(f, rng, h);
    module_over_f(f, vec![g1, g2]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(qi in 0..6usize, a in 0..16u8, b in 0..16u8, c in 0..16u8) {
        let fq = Fq::with_order(ORDERS[qi]).unwrap();
        let q = ORDERS[qi] as u8;
        let (a, b, c) = (FqElem(a % q), FqElem(b % q), FqElem(c % q));
        prop_assert_eq!(fq.add(&a, &b), fq.add(&b, &a));
        prop_assert_eq!(fq.mul(&fq.mul(&a, &b), &c), fq.mul(&a, &fq.mul(&b, &c)));
        prop_assert_eq!(fq.mul(&a, &fq.add(&b, &c)), fq.add(&fq.mul(&a, &b), &fq.mul(&a, &c)));
        prop_assert_eq!(fq.add(&a, &fq.neg(&a)), fq.zero());
        if a != fq.zero() {
            prop_assert_eq!(fq.mul(&a, &fq.inv(&a).unwrap()), fq.one());
        }
        // Frobenius is additive
        prop_assert_eq!(fq.pow_u64(&fq.add(&a, &b), fq.p() as u64), fq.add(&fq.pow_u64(&a, fq.p() as u64), &fq.pow_u64(&b, fq.p() as u64)));
    }

    #[test]
    fn poly_division_reconstructs(qi in 0..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fq = Fq::with_order(ORDERS[qi]).unwrap();
        let a = poly(&fq, &mut rng, 8);
        let b = nonzero_poly(&fq, &mut rng, 4);
        let (q, r) = fq.pdivmod(&a, &b).unwrap();
        prop_assert_eq!(fq.padd(&fq.pmul(&q, &b), &r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        prop_assert_eq!(fq.pdiv_exact(&fq.pmul(&a, &b), &b), Some(a));
    }

    #[test]
    fn valuations_sum_to_zero(qi in 0..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields(ORDERS[qi]);
        let r = nonzero_ratfunc(&f, &mut rng, 5);
        let mut total = f.valuation(&r, &Place::Infinity).unwrap();
        let mut primes = Vec::new();
        for g in [r.num(), r.den()] {
            if g.degree().unwrap() > 0 {
                primes.extend(poly_factor(&fq, g).unwrap().1.into_iter().map(|(p, _)| p));
            }
        }
        for p in primes {
            total += f.valuation(&r, &Place::Finite(p.clone())).unwrap() * p.degree() as i64;
        }
        prop_assert_eq!(total, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorizations_remultiply(qi in 0..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fq = Fq::with_order(ORDERS[qi]).unwrap();
        let g = nonzero_poly(&fq, &mut rng, 12);
        let (lc, fac) = poly_factor(&fq, &g).unwrap();
        let back = fac.iter().fold(fq.pconst(lc), |acc, (p, m)| fq.pmul(&acc, &fq.ppow(p.poly(), *m as u64)));
        prop_assert_eq!(back, g);
        for (p, _) in &fac {
            prop_assert!(PrimePoly::new(&fq, p.poly().clone()).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn artin_schreier_reduction(qi in 0..4usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields([2, 4, 8, 16][qi]);
        let x = ratfunc(&f, &mut rng, 4);
        let h = ratfunc(&f, &mut rng, 3);
        let a = as_reduce(&fq, &x).unwrap();
        prop_assert_eq!(&as_reduce(&fq, &a.to_rational(&fq)).unwrap(), &a);
        let shifted = f.add(&x, &f.add(&f.mul(&h, &h), &h));
        prop_assert_eq!(&as_reduce(&fq, &shifted).unwrap(), &a);
        // x and x + a representative differ by an AS-trivial element
        let diff = f.sub(&x, &a.to_rational(&fq));
        prop_assert!(as_reduce(&fq, &diff).unwrap().is_trivial());
    }

    #[test]
    fn kummer_group_law(qi in 0..2usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields([3, 9][qi]);
        let d1 = nonzero_ratfunc(&f, &mut rng, 3);
        let d2 = nonzero_ratfunc(&f, &mut rng, 3);
        let s = nonzero_ratfunc(&f, &mut rng, 2);
        let k1 = kummer_class(&fq, &d1).unwrap();
        let k2 = kummer_class(&fq, &d2).unwrap();
        prop_assert_eq!(kummer_class(&fq, &f.mul(&d1, &d2)).unwrap(), k1.mul(&fq, &k2));
        prop_assert_eq!(kummer_class(&fq, &f.mul(&d1, &f.mul(&s, &s))).unwrap(), k1);
    }
}

/// A module with polynomial coefficients and a prime of good reduction for it.
fn reduced(seed: u64, orders: &[usize], max_deg: usize) -> (Fq, GlobalModule, drinfeld_core::drinfeld::ReducedModule) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = orders[rng.gen_range(0..orders.len())];
    let (fq, f) = fields(q);
    let primes = enumerate_primes(&fq, 2);
    loop {
        let g1 = f.from_poly(poly(&fq, &mut rng, 2));
        let g2 = f.from_poly(nonzero_poly(&fq, &mut rng, 2));
        let phi = module_over_f(&f, vec![g1, g2]).unwrap();
        let p = primes[rng.gen_range(0..primes.len())].clone();
        if p.degree() > max_deg {
            continue;
        }
        if let Ok(red) = reduce_mod(&phi, &p) {
            return (fq, phi, red);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn phi_is_a_ring_homomorphism(seed in any::<u64>()) {
        let (fq, _, red) = reduced(seed, &[2, 3, 4], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let a = poly(&fq, &mut rng, 2);
        let b = poly(&fq, &mut rng, 2);
        let m = &red.module;
        let k = &red.residue;
        prop_assert_eq!(m.phi_of(&fq.pmul(&a, &b)), k.skew_mul(&m.phi_of(&a), &m.phi_of(&b)));
        prop_assert_eq!(m.phi_of(&fq.padd(&a, &b)), k.skew_add(&m.phi_of(&a), &m.phi_of(&b)));
        // tau c = c^q tau
        let c = k.random(&mut rng);
        let lhs = k.skew_mul(&k.skew_tau_pow(1), &k.skew_const(c.clone()));
        prop_assert_eq!(lhs, k.skew_mul(&k.skew_const(k.frob_q_iter(&c, 1)), &k.skew_tau_pow(1)));
    }

    #[test]
    fn descriptor_equality_is_exact(seed in any::<u64>(), equal in any::<bool>(), char2 in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if char2 {
            let (fq, f) = fields(2);
            let x = ratfunc(&f, &mut rng, 3);
            let y = if equal {
                let h = ratfunc(&f, &mut rng, 2);
                f.add(&x, &f.add(&f.mul(&h, &h), &h))
            } else {
                f.add(&x, &ratfunc(&f, &mut rng, 3))
            };
            let a = QuadExtDescriptor::artin_schreier(as_reduce(&fq, &x).unwrap(), "x");
            let b = QuadExtDescriptor::artin_schreier(as_reduce(&fq, &y).unwrap(), "y");
            let sum_trivial = as_reduce(&fq, &f.add(&x, &y)).unwrap().is_trivial();
            prop_assert_eq!(a == b, sum_trivial);
            if equal {
                prop_assert!(a == b);
            }
        } else {
            let (fq, f) = fields(3);
            let x = nonzero_ratfunc(&f, &mut rng, 3);
            let y = if equal {
                let s = nonzero_ratfunc(&f, &mut rng, 2);
                f.mul(&x, &f.mul(&s, &s))
            } else {
                f.mul(&x, &nonzero_ratfunc(&f, &mut rng, 3))
            };
            let a = QuadExtDescriptor::kummer(kummer_class(&fq, &x).unwrap(), "x");
            let b = QuadExtDescriptor::kummer(kummer_class(&fq, &y).unwrap(), "y");
            let product_square = kummer_class(&fq, &f.mul(&x, &y)).unwrap().is_square(&fq);
            prop_assert_eq!(a == b, product_square);
            if equal {
                prop_assert!(a == b);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn torsion_polynomial_is_additive(seed in any::<u64>()) {
        let (fq, _, red) = reduced(seed, &[2, 3, 4], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let a = nonzero_poly(&fq, &mut rng, 2);
        let tp = red.module.torsion_polynomial(&a);
        let q = fq.order();
        for (i, c) in tp.coeffs().iter().enumerate() {
            if *c != red.residue.zero() {
                let mut e = 1;
                while e < i {
                    e *= q;
                }
                prop_assert_eq!(e, i, "monomial x^{} is not a q-power", i);
            }
        }
    }

    #[test]
    fn twist_conjugates(qi in 0..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, f) = fields(ORDERS[qi]);
        let phi = module(&f, &mut rng, 2);
        let c = nonzero_ratfunc(&f, &mut rng, 2);
        let psi = phi.twist(&c).unwrap();
        let lhs = f.skew_mul(&f.skew_const(c.clone()), &phi.phi_t());
        prop_assert_eq!(lhs, f.skew_mul(&psi.phi_t(), &f.skew_const(c)));
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn torsion_is_free_of_rank_two(seed in any::<u64>()) {
        let (fq, phi, red) = reduced(seed, &[2, 3], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let deg_a = if fq.order() == 2 { rng.gen_range(1..=2) } else { 1 };
        let a = monic(&fq, &mut rng, deg_a);
        prop_assume!(!fq.prem(&a, red.prime.poly()).unwrap().is_zero());
        let tm = torsion_points_capped(&red, &a, 48);
        prop_assume!(tm.is_ok());
        let tm = tm.unwrap();
        let n = fq.order().pow((phi.rank() * deg_a) as u32);
        prop_assert_eq!(tm.points.len(), n);
        prop_assert_eq!(tm.span(&tm.basis).len(), n);
        for x in &tm.points {
            let ann = tm.annihilator(x);
            prop_assert!(fq.prem(&a, &ann).unwrap().is_zero());
        }
    }

    /// Over F_3 the Kummer character of the resolvent is the Legendre symbol of det(Frob) mod l.
    #[test]
    fn kummer_character_matches_det(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields(3);
        let g1 = f.from_poly(poly(&fq, &mut rng, 2));
        let g2 = f.from_poly(nonzero_poly(&fq, &mut rng, 2));
        let phi = module_over_f(&f, vec![g1, g2]).unwrap();
        let i = rng.gen_range(0..3u8);
        let l = PrimePoly::linear(&fq, FqElem(i));
        let d = quad_subext(&phi, &l).unwrap();
        let root = fq.neg(&FqElem(i));
        for p in enumerate_primes(&fq, 3) {
            if p == l {
                continue;
            }
            let (Some(chi), Ok(red)) = (d.character(&fq, &p), reduce_mod(&phi, &p)) else { continue };
            let cp = frob_charpoly(&red).unwrap();
            let det = fq.mul(&cp.mu, &fq.peval(p.poly(), &root));
            prop_assert_eq!(chi, if det == fq.one() { 1 } else { -1 }, "at {}", p.display(&fq));
        }
    }

    /// With `g1 = 0` over F_2 every Frobenius acts on phi[T + i] with parity (-1)^deg P.
    #[test]
    fn constant_case_parity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields(2);
        let g2 = f.from_poly(nonzero_poly(&fq, &mut rng, 3));
        let phi = module_over_f(&f, vec![f.zero(), g2]).unwrap();
        for i in 0..2u8 {
            let d = quad_subext(&phi, &PrimePoly::linear(&fq, FqElem(i))).unwrap();
            let h = hayes_classify(&fq, &d);
            prop_assert!(h.constant_part && !h.wild_part && h.conductor(&fq) == fq.pone());
            for p in enumerate_primes(&fq, 5) {
                if let Ok(s) = sign_character(&phi, i, &p) {
                    prop_assert_eq!(s, if p.degree() % 2 == 0 { 1 } else { -1 });
                }
            }
        }
    }

    /// Twisting by c in F^* gives an isomorphic module, so the resolvent class is unchanged.
    #[test]
    fn resolvents_are_twist_invariant(seed in any::<u64>(), char2 in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (fq, f) = fields(if char2 { 2 } else { 3 });
        let phi = module(&f, &mut rng, 2);
        let c = nonzero_ratfunc(&f, &mut rng, 1);
        let psi = phi.twist(&c).unwrap();
        for l in fq.all().map(|i| PrimePoly::linear(&fq, i)) {
            match (quad_subext(&phi, &l), quad_subext(&psi, &l)) {
                (Ok(a), Ok(b)) => {
                    prop_assert!(a == b, "{} vs {}", a.display(&fq), b.display(&fq));
                    prop_assert_eq!(hayes_classify(&fq, &a), hayes_classify(&fq, &b));
                }
                (Err(x), Err(y)) => prop_assert_eq!(x, y),
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x.map(|d| d.display(&fq)), y.map(|d| d.display(&fq))),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn division_field_degree_bounds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = if rng.gen_bool(0.5) { 2 } else { 3 };
        let (fq, f) = fields(q);
        let g1 = f.from_poly(poly(&fq, &mut rng, 2));
        let g2 = f.from_poly(nonzero_poly(&fq, &mut rng, 2));
        let phi = module_over_f(&f, vec![g1, g2]).unwrap();
        let l = PrimePoly::linear(&fq, fq.random(&mut rng));
        let deg = splitting_field_degree(&phi, l.poly()).unwrap().degree;
        let gl2 = (q * q - 1) * (q * q - q);
        prop_assert_eq!(gl2 % deg, 0);
        let mut sampled = 0;
        for p in enumerate_primes(&fq, 4) {
            if sampled == 20 {
                break;
            }
            if p == l {
                continue;
            }
            let Ok(red) = reduce_mod(&phi, &p) else { continue };
            let pattern = frobenius_pattern(&red, l.poly()).unwrap();
            let order = pattern.iter().fold(1, |acc, &d| lcm(acc, d));
            prop_assert_eq!(deg % order, 0, "Frobenius order {} at {}", order, p.display(&fq));
            sampled += 1;
        }
    }
}
