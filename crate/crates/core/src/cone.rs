//! Catalogue-relative positivity tests and the search for isotropic nef rays.
//!
//! Nefness and ampleness are certified only against the curves a model
//! catalogues; certificates record the model's completeness bound.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalogue::{CurveRecord, SurfaceModel};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Witness {
    Class(DivisorClass),
    Curve(CurveRecord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub caveat: Option<String>,
    /// Completeness bound of the catalogue a certificate relies on.
    pub complete_up_to: Option<Scalar>,
}

impl Verdict {
    fn certified(model: &SurfaceModel) -> Self {
        Verdict {
            status: Status::Certified,
            witness: None,
            caveat: Some(format!(
                "relative to the catalogue of '{}', complete up to degree {}",
                model.name, model.catalogue_complete_up_to
            )),
            complete_up_to: Some(model.catalogue_complete_up_to.clone()),
        }
    }

    fn refuted(witness: Witness, why: String) -> Self {
        Verdict {
            status: Status::Refuted,
            witness: Some(witness),
            caveat: Some(why),
            complete_up_to: None,
        }
    }

    fn inconclusive(why: String) -> Self {
        Verdict {
            status: Status::Inconclusive,
            witness: None,
            caveat: Some(why),
            complete_up_to: None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }
}

fn check_rank(model: &SurfaceModel, d: &DivisorClass) -> Result<()> {
    if d.rank() != model.rank() {
        return Err(Error::DimensionMismatch {
            expected: model.rank(),
            found: d.rank(),
        });
    }
    Ok(())
}

pub fn is_nef(model: &SurfaceModel, d: &DivisorClass) -> Result<Verdict> {
    check_rank(model, d)?;
    let dual = model.form.dual(d)?;
    for c in &model.curves {
        let p: Scalar = c.cls.coords.iter().zip(&dual).map(|(x, y)| x * y).sum();
        if p.is_negative() {
            return Ok(Verdict::refuted(
                Witness::Curve(c.clone()),
                format!("D · {} = {p} < 0", c.label),
            ));
        }
    }
    let sq: Scalar = d.coords.iter().zip(&dual).map(|(x, y)| x * y).sum();
    let deg = model.degree(d)?;
    if !sq.is_negative() && !deg.is_negative() {
        Ok(Verdict::certified(model))
    } else {
        Ok(Verdict::inconclusive(format!(
            "no catalogued curve refutes, but D² = {sq} and D · A = {deg} leave the positive cone"
        )))
    }
}

pub fn is_ample(model: &SurfaceModel, d: &DivisorClass) -> Result<Verdict> {
    check_rank(model, d)?;
    let sq = model.self_int(d)?;
    if !sq.is_positive() {
        return Ok(Verdict::refuted(Witness::Class(d.clone()), format!("D² = {sq} ≤ 0")));
    }
    for c in &model.curves {
        let p = model.pair(d, &c.cls)?;
        if !p.is_positive() {
            return Ok(Verdict::refuted(
                Witness::Curve(c.clone()),
                format!("D · {} = {p} ≤ 0", c.label),
            ));
        }
    }
    Ok(Verdict::certified(model))
}

/// Certified iff `d² > 0` and `d·A > 0`. Refuted for nef classes of zero
/// volume and for classes of non-positive ample degree; otherwise
/// inconclusive, since a big class may have negative square.
pub fn is_big(model: &SurfaceModel, d: &DivisorClass) -> Result<Verdict> {
    check_rank(model, d)?;
    let sq = model.self_int(d)?;
    let deg = model.degree(d)?;
    if sq.is_positive() && deg.is_positive() {
        return Ok(Verdict {
            caveat: None,
            complete_up_to: None,
            ..Verdict::certified(model)
        });
    }
    if !deg.is_positive() {
        return Ok(Verdict::refuted(
            Witness::Class(d.clone()),
            format!("D · A = {deg} ≤ 0"),
        ));
    }
    if !is_nef(model, d)?.is_refuted() {
        return Ok(Verdict::refuted(
            Witness::Class(d.clone()),
            format!("nef with D² = {sq} ≤ 0"),
        ));
    }
    Ok(Verdict::inconclusive(format!("D² = {sq} ≤ 0 but D is not nef")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RayType {
    Rational,
    Irrational,
}

/// Whether the ray through `d` contains a nonzero rational vector.
pub fn ray_rationality(d: &DivisorClass) -> Result<RayType> {
    Ok(if rational_direction(d)?.is_some() {
        RayType::Rational
    } else {
        RayType::Irrational
    })
}

/// Rational vector `v` and positive sign convention such that `d = c·v`
/// with `c > 0`, when one exists.
fn rational_direction(d: &DivisorClass) -> Result<Option<Vec<Rational>>> {
    let c = d.coords.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroClass)?;
    let c = if c.is_negative() { -c } else { c.clone() };
    let inv = c.inverse()?;
    let mut out = Vec::with_capacity(d.rank());
    for x in &d.coords {
        let q = x * &inv;
        match q.to_rational() {
            Some(r) => out.push(r.clone()),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Primitive integer vector on the ray of `d` (same direction), if rational.
pub fn primitive_on_ray(d: &DivisorClass) -> Result<Option<Vec<BigInt>>> {
    let Some(v) = rational_direction(d)? else {
        return Ok(None);
    };
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(Some(ints.into_iter().map(|x| x / &g).collect()))
}

/// Whether `x` and `y` span the same ray (positive multiples of each other).
pub fn same_ray(x: &DivisorClass, y: &DivisorClass) -> Result<bool> {
    if x.rank() != y.rank() {
        return Ok(false);
    }
    let c = x.coords.iter().zip(&y.coords).find(|(a, _)| !a.is_zero());
    let Some((cx, cy)) = c else {
        return Err(Error::ZeroClass);
    };
    let lambda = cy.checked_div(cx)?;
    if !lambda.is_positive() {
        return Ok(false);
    }
    Ok(x.scale(&lambda) == *y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationCandidate {
    pub cls: DivisorClass,
    /// Whether `cls` is the primitive integer vector of its ray.
    pub primitive: bool,
    pub ray_type: RayType,
    pub degree: Scalar,
    /// Label of a catalogued moving curve on this ray, i.e. a known fibre.
    pub fiber_curve: Option<String>,
}

/// Builds a candidate from an arbitrary class, checking `d² = 0`, positive
/// degree and catalogue nefness. Rational rays are reduced to their
/// primitive integer representative.
pub fn candidate_for(model: &SurfaceModel, d: &DivisorClass) -> Result<FibrationCandidate> {
    check_rank(model, d)?;
    if d.is_zero() {
        return Err(Error::ZeroClass);
    }
    let sq = model.self_int(d)?;
    if !sq.is_zero() {
        return Err(Error::precondition(format!("candidate needs D² = 0, found {sq}")));
    }
    let deg = model.degree(d)?;
    if !deg.is_positive() {
        return Err(Error::precondition(format!("candidate needs D · A > 0, found {deg}")));
    }
    if is_nef(model, d)?.is_refuted() {
        return Err(Error::precondition("candidate must be catalogue-nef"));
    }
    let (cls, primitive, ray_type) = match primitive_on_ray(d)? {
        Some(v) => {
            let cls = DivisorClass::new(v.into_iter().map(|x| Scalar::from_rational(Rational::from_integer(x))).collect());
            (cls, true, RayType::Rational)
        }
        None => (d.clone(), false, RayType::Irrational),
    };
    let degree = model.degree(&cls)?;
    let fiber_curve = fiber_curve_on_ray(model, &cls)?;
    Ok(FibrationCandidate {
        cls,
        primitive,
        ray_type,
        degree,
        fiber_curve,
    })
}

fn fiber_curve_on_ray(model: &SurfaceModel, cls: &DivisorClass) -> Result<Option<String>> {
    for c in model.moving_curves() {
        if same_ray(cls, &c.cls)? {
            return Ok(Some(c.label.clone()));
        }
    }
    Ok(None)
}

/// Visits every integer vector in `[−bound, bound]^rank` in lexicographic order.
pub fn for_each_in_box(rank: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut v = vec![-bound; rank];
    loop {
        f(&v);
        let mut i = rank;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Integer shadow of a model, used for fast exact enumeration when the form,
/// the ample reference and every curve are integral.
pub(crate) struct IntModel {
    pub gram: Vec<Vec<i64>>,
    pub ample_dual: Vec<i64>,
    pub curves_dual: Vec<Vec<i64>>,
}

impl IntModel {
    pub fn new(model: &SurfaceModel) -> Option<IntModel> {
        let gram = model.form.int_gram()?;
        let ample = model.ample_ref.to_ints()?;
        let curves: Option<Vec<Vec<i64>>> = model.curves.iter().map(|c| c.cls.to_ints()).collect();
        let dual = |v: &[i64]| -> Vec<i64> { gram.iter().map(|row| dot(row, v)).collect() };
        let ample_dual = dual(&ample);
        let curves_dual = curves?.iter().map(|c| dual(c)).collect();
        Some(IntModel {
            gram,
            ample_dual,
            curves_dual,
        })
    }

    pub fn self_int(&self, v: &[i64]) -> i64 {
        self.gram.iter().zip(v).map(|(row, x)| x * dot(row, v)).sum()
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive integer classes in the box with `v² = 0`, positive degree and
/// no refuting catalogued curve, sorted by degree then coordinates.
pub fn isotropic_nef_rays(model: &SurfaceModel, bound: u32) -> Result<Vec<FibrationCandidate>> {
    let bound = i64::from(bound.max(1));
    let mut hits: Vec<Vec<i64>> = Vec::new();
    if let Some(im) = IntModel::new(model) {
        for_each_in_box(model.rank(), bound, |v| {
            if gcd_all(v) != 1 || dot(&im.ample_dual, v) <= 0 || im.self_int(v) != 0 {
                return;
            }
            if im.curves_dual.iter().any(|c| dot(c, v) < 0) {
                return;
            }
            hits.push(v.to_vec());
        });
    } else {
        let mut err = None;
        for_each_in_box(model.rank(), bound, |v| {
            if err.is_some() || gcd_all(v) != 1 {
                return;
            }
            let d = DivisorClass::from_ints(v);
            let keep = (|| -> Result<bool> {
                Ok(model.degree(&d)?.is_positive()
                    && model.self_int(&d)?.is_zero()
                    && !is_nef(model, &d)?.is_refuted())
            })();
            match keep {
                Ok(true) => hits.push(v.to_vec()),
                Ok(false) => {}
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    let mut out = hits
        .iter()
        .map(|v| candidate_for(model, &DivisorClass::from_ints(v)).map(|c| (v.clone(), c)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|(va, a), (vb, b)| match a.degree.cmp(&b.degree) {
        Ordering::Equal => va.cmp(vb),
        o => o,
    });
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{builtin, gamma_class};

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::from_ints(v)
    }

    fn example_d() -> DivisorClass {
        DivisorClass::new(vec![Scalar::sqrt2(), Scalar::sqrt3(), "2sqrt3 - 3sqrt2".parse().unwrap()])
    }

    #[test]
    fn nef_examples() {
        let exe = builtin("ExE").unwrap();
        assert!(is_nef(&exe, &example_d()).unwrap().is_certified());
        let v = is_nef(&exe, &cls(&[-1, 0, 0])).unwrap();
        assert!(v.is_refuted());
        match v.witness {
            Some(Witness::Curve(c)) => assert_eq!(c.label, "F2"),
            other => panic!("{other:?}"),
        }
        let bl = builtin("P2-blowup").unwrap();
        let v = is_nef(&bl, &cls(&[1, -1])).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.complete_up_to, Some(Scalar::from_int(2)));
    }

    #[test]
    fn ample_and_big_examples() {
        let exe = builtin("ExE").unwrap();
        assert!(is_ample(&exe, &cls(&[1, 1, 0])).unwrap().is_certified());
        assert!(is_ample(&exe, &example_d()).unwrap().is_refuted());
        let c = builtin("C1xC2").unwrap();
        assert!(is_ample(&c, &cls(&[1, 0])).unwrap().is_refuted());
        assert!(is_big(&exe, &cls(&[1, 1, 0])).unwrap().is_certified());
        assert!(is_big(&exe, &cls(&[1, 0, 0])).unwrap().is_refuted());
        assert!(is_big(&exe, &cls(&[1, 0, 1])).unwrap().is_certified());
        assert!(matches!(is_nef(&exe, &cls(&[1, 0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rationality_of_rays() {
        assert_eq!(ray_rationality(&example_d()).unwrap(), RayType::Irrational);
        assert_eq!(ray_rationality(&cls(&[2, -1, 2])).unwrap(), RayType::Rational);
        let s = DivisorClass::new(vec![Scalar::sqrt2(), Scalar::sqrt2(), Scalar::zero()]);
        assert_eq!(ray_rationality(&s).unwrap(), RayType::Rational);
        assert_eq!(primitive_on_ray(&s).unwrap().unwrap(), vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)]);
        let neg = cls(&[-4, -2, 0]);
        assert_eq!(primitive_on_ray(&neg).unwrap().unwrap(), vec![BigInt::from(-2), BigInt::from(-1), BigInt::from(0)]);
        assert_eq!(ray_rationality(&cls(&[0, 0, 0])), Err(Error::ZeroClass));
    }

    #[test]
    fn scans() {
        let c = builtin("C1xC2").unwrap();
        let rays: Vec<_> = isotropic_nef_rays(&c, 5).unwrap().into_iter().map(|r| r.cls).collect();
        assert_eq!(rays, vec![cls(&[0, 1]), cls(&[1, 0])]);
        assert!(isotropic_nef_rays(&builtin("P2").unwrap(), 7).unwrap().is_empty());
        let exe = builtin("ExE").unwrap();
        let rays: Vec<_> = isotropic_nef_rays(&exe, 2).unwrap().into_iter().map(|r| r.cls).collect();
        for want in [cls(&[1, 0, 0]), cls(&[0, 1, 0]), cls(&[0, 0, 1]), gamma_class(2).unwrap()] {
            assert!(rays.contains(&want), "missing {want}");
        }
        let bl = builtin("P2-blowup").unwrap();
        let rays = isotropic_nef_rays(&bl, 6).unwrap();
        assert_eq!(rays.len(), 1);
        assert_eq!(rays[0].cls, cls(&[1, -1]));
        assert_eq!(rays[0].fiber_curve.as_deref(), Some("line-through-point"));
    }

    #[test]
    fn box_visit_count() {
        let mut n = 0;
        for_each_in_box(3, 2, |_| n += 1);
        assert_eq!(n, 125);
    }
}
