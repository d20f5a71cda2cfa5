use fourfold_core::arith::{rat, rat_int};
use fourfold_core::geometry::{
    check_zero_cycle_certificate, coordinate_vars, unirational_param_degree2, verify_degree_two_certificate,
    verify_line_in_cubic, zero_cycle_two_torsion_certificate, DegreeTwoMapCertificate, LineInSpace,
    ZeroCycleCertificate, FERMAT_LINE, FERMAT_SURFACE, FOURFOLD_LINE, FOURFOLD_WITH_LINE,
};
use fourfold_core::poly::{parse_poly, MPoly};
use fourfold_core::{Error, Rat};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn fermat() -> (MPoly, LineInSpace) {
    (parse_poly(FERMAT_SURFACE, &coordinate_vars(4)).unwrap(), LineInSpace::parse(FERMAT_LINE).unwrap())
}

fn fermat_map() -> &'static DegreeTwoMapCertificate {
    static CERT: OnceLock<DegreeTwoMapCertificate> = OnceLock::new();
    CERT.get_or_init(|| {
        let (s, l) = fermat();
        unirational_param_degree2(&s, &l).unwrap()
    })
}

fn small() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

#[test]
fn fourfold_with_line() {
    let x = parse_poly(FOURFOLD_WITH_LINE, &coordinate_vars(6)).unwrap();
    let l = LineInSpace::parse(FOURFOLD_LINE).unwrap();
    assert!(verify_line_in_cubic(&x, &l).unwrap());
    let c = unirational_param_degree2(&x, &l).unwrap();
    assert!(c.passes());
    assert_eq!(c.params.len(), 4);
    let back = DegreeTwoMapCertificate::from_json(&c.to_json()).unwrap();
    assert!(verify_degree_two_certificate(&back).unwrap());
}

#[test]
fn line_not_on_cubic() {
    let (s, _) = fermat();
    let l = LineInSpace::ints(&[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
    assert!(!verify_line_in_cubic(&s, &l).unwrap());
    assert!(matches!(unirational_param_degree2(&s, &l), Err(Error::LineNotInX)));
    assert!(matches!(LineInSpace::ints(&[1, 2, 3, 4], &[2, 4, 6, 8]), Err(Error::LineRankDeficient)));
}

#[test]
fn tampered_function_rejected() {
    let (s, l) = fermat();
    let p = [3, 4, 5, -6].map(rat_int).to_vec();
    let q = [2, -2, 3, -3].map(rat_int).to_vec();
    let mut c = zero_cycle_two_torsion_certificate(&s, &l, &p, &q).unwrap();
    assert!(check_zero_cycle_certificate(&c).accepted);
    let f = &mut c.functions[0];
    f.num = &f.num * &MPoly::var(f.num.vars(), 0);
    f.den = &f.den * &MPoly::var(f.den.vars(), 1);
    assert!(!check_zero_cycle_certificate(&c).accepted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn map_lands_on_the_surface(args in prop::collection::vec(small(), 2)) {
        let cert = fermat_map();
        let pt: Vec<Rat> = cert.map.iter().map(|m| m.eval(&args)).collect();
        prop_assert!(cert.cubic.eval(&pt).is_zero());
    }

    #[test]
    fn cycle_certificates_round_trip(args in prop::collection::vec(small(), 2), a in small(), b in small()) {
        let cert = fermat_map();
        let p: Vec<Rat> = cert.map.iter().map(|m| m.eval(&args)).collect();
        let q = vec![a.clone(), -a, b.clone(), -b];
        prop_assume!(!p.iter().all(Zero::is_zero) && !q.iter().all(Zero::is_zero));
        let (s, l) = fermat();
        match zero_cycle_two_torsion_certificate(&s, &l, &p, &q) {
            Ok(c) => {
                let back = ZeroCycleCertificate::from_json(&c.to_json()).unwrap();
                prop_assert_eq!(&back, &c);
                let chk = check_zero_cycle_certificate(&back);
                prop_assert!(chk.accepted, "{:?}", chk.detail);
            }
            Err(e) => prop_assert!(matches!(e, Error::DegenerateConic(_) | Error::PlaneInSurface), "{e}"),
        }
    }
}
