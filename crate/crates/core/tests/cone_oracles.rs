use seshadri_core::cone::same_ray;
use seshadri_core::{
    builtin, gamma_class, is_ample, is_big, is_nef, isotropic_nef_rays, ray_rationality, DivisorClass, RayType, Scalar,
    Status, Witness,
};

fn cls(v: &[i64]) -> DivisorClass {
    DivisorClass::from_ints(v)
}

fn boundary_class() -> DivisorClass {
    DivisorClass::new(vec![Scalar::sqrt2(), Scalar::sqrt3(), "2sqrt3 - 3sqrt2".parse().unwrap()])
}

#[test]
fn nef_verdicts() {
    let exe = builtin("ExE").unwrap();
    assert_eq!(is_nef(&exe, &boundary_class()).unwrap().status, Status::Certified);
    let v = is_nef(&exe, &cls(&[-1, 0, 0])).unwrap();
    assert_eq!(v.status, Status::Refuted);
    match v.witness {
        Some(Witness::Curve(c)) => assert_eq!(c.label, "F2"),
        other => panic!("witness {other:?}"),
    }
    let bl = builtin("P2-blowup").unwrap();
    let v = is_nef(&bl, &cls(&[1, -1])).unwrap();
    assert_eq!(v.status, Status::Certified);
    assert!(v.complete_up_to.is_some());
}

#[test]
fn ample_verdicts() {
    let exe = builtin("ExE").unwrap();
    assert!(is_ample(&exe, &cls(&[1, 1, 0])).unwrap().is_certified());
    assert!(is_ample(&exe, &boundary_class()).unwrap().is_refuted());
    let c = builtin("C1xC2").unwrap();
    assert!(is_ample(&c, &cls(&[1, 0])).unwrap().is_refuted());
}

#[test]
fn big_verdicts() {
    let exe = builtin("ExE").unwrap();
    assert!(is_big(&exe, &cls(&[1, 1, 0])).unwrap().is_certified());
    assert!(is_big(&exe, &cls(&[1, 0, 0])).unwrap().is_refuted());
    assert!(is_big(&exe, &cls(&[1, 0, 1])).unwrap().is_certified());
}

#[test]
fn ray_types() {
    assert_eq!(ray_rationality(&boundary_class()).unwrap(), RayType::Irrational);
    assert_eq!(ray_rationality(&cls(&[2, -1, 2])).unwrap(), RayType::Rational);
    let tilted = cls(&[1, 1, 0]).scale(&Scalar::sqrt2());
    assert_eq!(ray_rationality(&tilted).unwrap(), RayType::Rational);
    assert!(same_ray(&tilted, &cls(&[1, 1, 0])).unwrap());
}

#[test]
fn isotropic_scans() {
    let c = builtin("C1xC2").unwrap();
    let rays: Vec<_> = isotropic_nef_rays(&c, 5).unwrap().into_iter().map(|r| r.cls).collect();
    assert_eq!(rays.len(), 2);
    assert!(rays.contains(&cls(&[1, 0])) && rays.contains(&cls(&[0, 1])));

    let exe = builtin("ExE").unwrap();
    let rays: Vec<_> = isotropic_nef_rays(&exe, 2).unwrap().into_iter().map(|r| r.cls).collect();
    for want in [cls(&[1, 0, 0]), cls(&[0, 1, 0]), cls(&[0, 0, 1]), gamma_class(2).unwrap()] {
        assert!(rays.contains(&want), "missing {want}");
    }

    let p2 = builtin("P2").unwrap();
    for b in [1, 5, 20] {
        assert!(isotropic_nef_rays(&p2, b).unwrap().is_empty());
    }
}

#[test]
fn brute_force_scan_oracle() {
    // independent enumeration: primitive v with v² = 0 meeting every catalogued curve non-negatively
    let exe = builtin("ExE").unwrap();
    let mut expect = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                let g = [a, b, c].iter().fold(0i64, |acc, &x| num_gcd(acc, x.abs()));
                if g != 1 {
                    continue;
                }
                let sq = 2 * (a * b + a * c + b * c);
                let meets = [b + c, a + c, a + b];
                if sq == 0 && meets.iter().all(|&m| m >= 0) && meets.iter().any(|&m| m > 0) {
                    expect.push(cls(&[a, b, c]));
                }
            }
        }
    }
    let found: Vec<_> = isotropic_nef_rays(&exe, 3).unwrap().into_iter().map(|r| r.cls).collect();
    assert_eq!(found.len(), expect.len());
    for e in &expect {
        assert!(found.contains(e), "{e}");
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}
