use seshadri_core::{builtin, DivisorClass, Error, IntersectionForm, Scalar};

fn exe_form() -> IntersectionForm {
    IntersectionForm::from_ints(&["F1", "F2", "Delta"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap()
}

fn cls(v: &[i64]) -> DivisorClass {
    DivisorClass::from_ints(v)
}

fn boundary_class() -> DivisorClass {
    DivisorClass::new(vec![Scalar::sqrt2(), Scalar::sqrt3(), "2sqrt3 - 3sqrt2".parse().unwrap()])
}

#[test]
fn pairings_on_exe() {
    let g = exe_form();
    assert_eq!(g.pair(&cls(&[1, 0, 0]), &cls(&[0, 1, 0])).unwrap(), Scalar::one());
    assert_eq!(g.pair(&boundary_class(), &boundary_class()).unwrap(), Scalar::zero());
    assert_eq!(g.pair(&cls(&[0, 0, 0]), &boundary_class()).unwrap(), Scalar::zero());
    assert!(matches!(
        g.pair(&cls(&[1, 0]), &cls(&[1, 0, 0])),
        Err(Error::DimensionMismatch { expected: 3, found: 2 })
    ));
}

#[test]
fn self_intersections() {
    let g = exe_form();
    assert_eq!(g.self_int(&cls(&[1, 1, 0])).unwrap(), Scalar::from_int(2));
    assert_eq!(g.self_int(&cls(&[1, -1, 0])).unwrap(), Scalar::from_int(-2));
    let p2 = IntersectionForm::from_ints(&["H"], &[&[1]]).unwrap();
    assert_eq!(p2.self_int(&cls(&[1])).unwrap(), Scalar::one());
}

#[test]
fn signatures() {
    let p2 = IntersectionForm::from_ints(&["H"], &[&[1]]).unwrap();
    assert!(p2.verify_signature().unwrap());
    assert!(exe_form().verify_signature().unwrap());
    assert_eq!(exe_form().signature().unwrap(), (1, 2));
    let plane = IntersectionForm::from_ints(&["x", "y"], &[&[1, 0], &[0, 1]]).unwrap();
    assert!(!plane.verify_signature().unwrap());
    let degenerate = IntersectionForm::from_ints(&["x", "y"], &[&[1, 1], &[1, 1]]).unwrap();
    assert_eq!(degenerate.signature(), Err(Error::Degenerate));
}

#[test]
fn hodge_inequality_cases() {
    let g = exe_form();
    let a = cls(&[1, 1, 0]);
    assert!(g.hodge_check(&a, &cls(&[1, 0, 0])).unwrap());
    assert!(g.hodge_check(&a, &cls(&[1, -1, 0])).unwrap());
    let p2 = IntersectionForm::from_ints(&["H"], &[&[1]]).unwrap();
    assert!(p2.hodge_check(&cls(&[1]), &cls(&[1])).unwrap());
    assert!(matches!(g.hodge_check(&cls(&[1, 0, 0]), &a), Err(Error::PreconditionFailed(_))));
}

#[test]
fn blow_up_lattice() {
    let p2 = IntersectionForm::from_ints(&["H"], &[&[1]]).unwrap();
    let bl = p2.blow_up_form().unwrap();
    assert_eq!(bl, IntersectionForm::from_ints(&["H", "E"], &[&[1, 0], &[0, -1]]).unwrap());
    assert_eq!(bl.self_int(&cls(&[1, -1])).unwrap(), Scalar::zero());
    let bl_exe = exe_form().blow_up_form().unwrap();
    assert!(bl_exe.verify_signature().unwrap());
    assert_eq!(bl_exe.rank(), 4);
    assert_eq!(builtin("P2-blowup").unwrap().form, bl);
}

#[test]
fn asymmetric_gram_rejected() {
    let r = IntersectionForm::from_ints(&["x", "y"], &[&[1, 2], &[1, -1]]);
    assert!(matches!(r, Err(Error::Validation { .. })));
}
