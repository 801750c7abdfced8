use seshadri_core::scalar::{decimal_places_for_bits, rat};
use seshadri_core::{approximate, field_op, is_rational, sign, sqrt_embed, Error, FieldOp, Scalar};

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

#[test]
fn basis_product() {
    assert_eq!(field_op(FieldOp::Mul, &Scalar::sqrt2(), &Scalar::sqrt3()).unwrap(), Scalar::sqrt6());
    assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt6(), s("2sqrt3"));
    assert_eq!(&Scalar::sqrt3() * &Scalar::sqrt6(), s("3sqrt2"));
    assert_eq!(Scalar::sqrt6().square(), Scalar::from_int(6));
}

#[test]
fn division_checked_by_multiplying_back() {
    let q = field_op(FieldOp::Div, &Scalar::sqrt6(), &s("sqrt2 + sqrt3")).unwrap();
    assert_eq!(q, s("3sqrt2 - 2sqrt3"));
    assert_eq!(&q * &s("sqrt2 + sqrt3"), Scalar::sqrt6());
}

#[test]
fn additive_identity() {
    let x = s("1/3 - 2sqrt2 + 5/7*sqrt6");
    assert_eq!(field_op(FieldOp::Add, &x, &Scalar::zero()).unwrap(), x);
}

#[test]
fn division_by_zero_is_an_error() {
    assert_eq!(field_op(FieldOp::Div, &Scalar::one(), &Scalar::zero()), Err(Error::DivisionByZero));
}

#[test]
fn signs_against_float() {
    assert_eq!(sign(&Scalar::zero()), 0);
    let x = s("3sqrt3 - 3sqrt2");
    assert_eq!(sign(&x), 1);
    assert!((3.0 * 3f64.sqrt() - 3.0 * 2f64.sqrt()) > 0.0);
    assert_eq!(sign(&s("15 - 6sqrt6")), 1);
    assert_eq!(sign(&s("6sqrt6 - 15")), -1);
}

#[test]
fn sign_of_tiny_unit_power() {
    // (5 − 2√6)^6 ≈ 1.06e-6, a unit so never zero
    let u = s("5 - 2sqrt6");
    let mut x = Scalar::one();
    for _ in 0..6 {
        x = &x * &u;
    }
    assert_eq!(sign(&x), 1);
    assert_eq!(sign(&(-&x)), -1);
    let e = approximate(&x, 64);
    assert!(e.lo > rat(1, 1_000_000) && e.hi < rat(11, 10_000_000));
}

#[test]
fn rationality() {
    assert!(is_rational(&s("7/3")));
    assert!(!is_rational(&s("15 - 6sqrt6")));
    assert!(is_rational(&(&Scalar::sqrt2() * &Scalar::sqrt2())));
}

#[test]
fn square_roots_in_the_field() {
    assert_eq!(sqrt_embed(&rat(2, 1)).unwrap(), Scalar::sqrt2());
    assert_eq!(sqrt_embed(&rat(9, 4)).unwrap(), Scalar::from_rational(rat(3, 2)));
    assert_eq!(sqrt_embed(&rat(8, 3)).unwrap(), s("2/3*sqrt6"));
    assert!(matches!(sqrt_embed(&rat(5, 1)), Err(Error::NotRepresentable(_))));
    assert_eq!(sqrt_embed(&rat(-1, 1)), Err(Error::NegativeInput));
}

#[test]
fn enclosures() {
    let e = approximate(&Scalar::sqrt2(), 53);
    assert!(e.lo < rat(141_421_357, 100_000_000) && e.hi > rat(141_421_356, 100_000_000));
    let (lo, hi) = e.to_decimals(decimal_places_for_bits(53));
    assert!(lo.starts_with("1.414213562373095") && hi.starts_with("1.414213562373095"), "{lo} {hi}");

    let z = approximate(&Scalar::zero(), 16);
    assert_eq!((z.lo.clone(), z.hi.clone()), (rat(0, 1), rat(0, 1)));

    let e = approximate(&s("15 - 6sqrt6"), 64);
    assert!(e.lo > rat(30, 100) && e.hi < rat(31, 100));
    assert!(e.width() <= rat(1, 1 << 60));
}

#[test]
fn json_forms() {
    let x = s("1/2 - sqrt6");
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(text, r#"["1/2","0","0","-1"]"#);
    assert_eq!(serde_json::from_str::<Scalar>(&text).unwrap(), x);
    assert_eq!(serde_json::from_str::<Scalar>(r#""7/3""#).unwrap(), s("7/3"));
}
