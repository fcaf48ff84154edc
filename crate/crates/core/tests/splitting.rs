use drinfeld_core::algebra::{Field, Fq, FqElem, PolyRing, RationalField};
use drinfeld_core::drinfeld::{module_over_f, GlobalModule};
use drinfeld_core::splitting::splitting_field_degree;

fn flagship() -> (Fq, GlobalModule) {
    let f3 = Fq::new(3, 1).unwrap();
    let f = RationalField::new(&f3);
    let t = f.t();
    let phi = module_over_f(&f, vec![f.one(), f.neg(&f.mul(&t, &t))]).unwrap();
    (f3, phi)
}

#[test]
fn flagship_division_fields_have_degree_48() {
    let (f3, phi) = flagship();
    for c in 0..3 {
        let l = f3.poly(vec![FqElem(c), FqElem(1)]);
        let start = std::time::Instant::now();
        let rep = splitting_field_degree(&phi, &l).unwrap();
        eprintln!("T+{c}: {:?} in {:?}", rep, start.elapsed());
        assert_eq!(rep.degree, 48, "modulus T+{c}");
    }
}
