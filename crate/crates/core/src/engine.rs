//! Seshadri constant bounds at a very general point, the multiplicity
//! invariant m(A), feasibility filters for exceptional curves, and the
//! fibration criteria built on them.
//!
//! Upper bounds come from catalogued moving curves and the volume cap
//! `ε ≤ √(A²)`. Lower bounds come from an exhaustive search over integer
//! classes in a box, each paired with the largest multiplicity `m` allowed by
//! `v² ≥ m(m−1)`. Values that are square roots outside Q(√2, √3) are kept in
//! squared form ([`SeshadriValue::SqrtOf`]) and compared through squares.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::catalogue::{CurveRecord, SurfaceModel};
use crate::cone::{
    candidate_for, dot, for_each_in_box, gcd_all, is_ample, is_nef, isotropic_nef_rays, same_ray,
    FibrationCandidate, IntModel, Verdict,
};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::scalar::{approximate, rat, sqrt_embed, Rational, Scalar};

/// A non-negative real that is either in the field or the square root of a
/// field element.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "form", content = "value")]
pub enum SeshadriValue {
    Exact(Scalar),
    SqrtOf(Scalar),
}

impl SeshadriValue {
    /// `√s`, embedded exactly when possible.
    pub fn sqrt_of(s: Scalar) -> SeshadriValue {
        if let Some(r) = s.to_rational() {
            if let Ok(root) = sqrt_embed(r) {
                return SeshadriValue::Exact(root);
            }
        }
        SeshadriValue::SqrtOf(s)
    }

    pub fn squared(&self) -> Scalar {
        match self {
            SeshadriValue::Exact(x) => x.square(),
            SeshadriValue::SqrtOf(s) => s.clone(),
        }
    }

    pub fn exact(&self) -> Option<&Scalar> {
        match self {
            SeshadriValue::Exact(x) => Some(x),
            SeshadriValue::SqrtOf(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.squared().is_zero()
    }

    /// Multiplies by a positive rational.
    pub fn scale(&self, t: &Rational) -> SeshadriValue {
        match self {
            SeshadriValue::Exact(x) => SeshadriValue::Exact(x.scale(t)),
            SeshadriValue::SqrtOf(s) => SeshadriValue::SqrtOf(s.scale(&(t * t))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SeshadriValue::Exact(x) => x.to_f64(),
            SeshadriValue::SqrtOf(s) => s.to_f64().sqrt(),
        }
    }

    /// Rational numbers `lo ≤ value ≤ hi`.
    pub fn rational_bounds(&self) -> (Rational, Rational) {
        match self {
            SeshadriValue::Exact(x) => {
                let e = approximate(x, 64);
                (e.lo, e.hi)
            }
            SeshadriValue::SqrtOf(s) => {
                let e = approximate(s, 128);
                (sqrt_floor(&e.lo), sqrt_ceil(&e.hi))
            }
        }
    }
}

const SQRT_BITS: u32 = 64;

fn sqrt_floor(r: &Rational) -> Rational {
    if !r.is_positive() {
        return Rational::zero();
    }
    // √(p/q) = √(p·q)/q, scaled by 2^k before the integer root
    let scale = BigInt::one() << (2 * SQRT_BITS);
    let n = r.numer() * r.denom() * scale;
    Rational::new(n.sqrt(), r.denom() << SQRT_BITS)
}

fn sqrt_ceil(r: &Rational) -> Rational {
    if !r.is_positive() {
        return Rational::zero();
    }
    let scale = BigInt::one() << (2 * SQRT_BITS);
    let n = r.numer() * r.denom() * scale;
    Rational::new(n.sqrt() + 1, r.denom() << SQRT_BITS)
}

impl PartialEq for SeshadriValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SeshadriValue {}

impl PartialOrd for SeshadriValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SeshadriValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SeshadriValue::Exact(x), SeshadriValue::Exact(y)) => x.cmp(y),
            _ => self.squared().cmp(&other.squared()),
        }
    }
}

impl std::fmt::Display for SeshadriValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeshadriValue::Exact(x) => write!(f, "{x}"),
            SeshadriValue::SqrtOf(s) => write!(f, "sqrt({s})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "curve")]
pub enum UpperWitness {
    Curve(CurveRecord),
    SurfaceItself,
}

impl UpperWitness {
    pub fn curve(&self) -> Option<&CurveRecord> {
        match self {
            UpperWitness::Curve(c) => Some(c),
            UpperWitness::SurfaceItself => None,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            UpperWitness::Curve(c) => &c.label,
            UpperWitness::SurfaceItself => "surface",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LowerSource {
    /// The volume cap `√(A²)`.
    Cap,
    Curve { label: String },
    /// A hypothetical class `cls` through the point with multiplicity `mult`.
    Pair { cls: DivisorClass, mult: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeshadriEstimate {
    pub lower: SeshadriValue,
    pub upper: SeshadriValue,
    pub upper_witness: UpperWitness,
    pub lower_source: LowerSource,
    pub certified_box: u32,
    pub exact: bool,
    /// Classes of degree above this against the input class cannot beat the
    /// lower bound, whatever their multiplicity. `None` when the lower bound
    /// already equals the cap.
    pub guarantee_degree: Option<f64>,
}

fn ensure_ample(model: &SurfaceModel, a: &DivisorClass) -> Result<Verdict> {
    let v = is_ample(model, a)?;
    if v.is_refuted() {
        return Err(Error::precondition(format!(
            "class {a} is not ample on '{}': {}",
            model.name,
            v.caveat.clone().unwrap_or_default()
        )));
    }
    Ok(v)
}

fn curve_ratio(model: &SurfaceModel, a: &DivisorClass, c: &CurveRecord) -> Result<Scalar> {
    Ok(model.pair(a, &c.cls)?.scale(&rat(1, i64::from(c.mult_eta))))
}

/// Minimum of `(a·C)/mult` over catalogued moving curves, capped by `√(a²)`.
/// Ties go to the earlier curve; the cap wins only when strictly smaller.
pub fn seshadri_upper(model: &SurfaceModel, a: &DivisorClass) -> Result<(SeshadriValue, UpperWitness)> {
    ensure_ample(model, a)?;
    let cap = SeshadriValue::sqrt_of(model.self_int(a)?);
    let mut best: Option<(Scalar, &CurveRecord)> = None;
    for c in model.moving_curves() {
        let r = curve_ratio(model, a, c)?;
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, c));
        }
    }
    match best {
        Some((r, c)) => {
            let value = SeshadriValue::Exact(r);
            if cap < value {
                Ok((cap, UpperWitness::SurfaceItself))
            } else {
                Ok((value, UpperWitness::Curve(c.clone())))
            }
        }
        None if matches!(cap, SeshadriValue::SqrtOf(_)) => Err(Error::EmptyCatalogue),
        None => Ok((cap, UpperWitness::SurfaceItself)),
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    v: Vec<i64>,
    /// Largest m with m(m−1) ≤ v².
    mult: u32,
    v_sq: Scalar,
}

/// Feasible (class, multiplicity) pairs for the lower-bound search in one box.
/// Depends only on the model and the box, so scans reuse it across classes.
pub struct SearchSpace {
    bound: u32,
    candidates: Vec<Candidate>,
}

fn max_mult(v_sq: &Scalar) -> u32 {
    // m(m−1) ≤ s  ⇔  m ≤ (1 + √(1+4s))/2
    let s = match v_sq.to_rational() {
        Some(r) => r.floor().to_integer(),
        None => approximate(v_sq, 64).lo.floor().to_integer(),
    };
    let mut m = ((BigInt::one() + BigInt::from(4) * &s).sqrt() + 1u32) / 2u32;
    while &m * (&m - 1u32) > s {
        m -= 1u32;
    }
    m.to_u32().unwrap_or(u32::MAX).max(1)
}

impl SearchSpace {
    pub fn new(model: &SurfaceModel, bound: u32) -> Result<SearchSpace> {
        let b = i64::from(bound.max(1));
        let mut candidates = Vec::new();
        if let Some(im) = IntModel::new(model) {
            for_each_in_box(model.rank(), b, |v| {
                if dot(&im.ample_dual, v) <= 0 {
                    return;
                }
                let sq = im.self_int(v);
                if sq < 0 {
                    return;
                }
                let v_sq = Scalar::from_int(sq);
                candidates.push(Candidate {
                    v: v.to_vec(),
                    mult: max_mult(&v_sq),
                    v_sq,
                });
            });
        } else {
            let mut err = None;
            for_each_in_box(model.rank(), b, |v| {
                if err.is_some() || v.iter().all(|&x| x == 0) {
                    return;
                }
                let d = DivisorClass::from_ints(v);
                let r = (|| -> Result<Option<Scalar>> {
                    let sq = model.self_int(&d)?;
                    Ok((model.degree(&d)?.is_positive() && !sq.is_negative()).then_some(sq))
                })();
                match r {
                    Ok(Some(v_sq)) => candidates.push(Candidate {
                        v: v.to_vec(),
                        mult: max_mult(&v_sq),
                        v_sq,
                    }),
                    Ok(None) => {}
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(SearchSpace { bound, candidates })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Best pair found by the search: ratio and the pair realizing it.
struct PairMin {
    ratio: Scalar,
    idx: usize,
}

fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Minimum of `(a·v)/m` over candidates passing the index inequality, using
/// 128-bit integer arithmetic when `a` is rational.
fn search_pairs(model: &SurfaceModel, space: &SearchSpace, a: &DivisorClass) -> Result<Option<PairMin>> {
    let dual = model.form.dual(a)?;
    let a_sq = model.self_int(a)?;
    let rational: Option<Vec<Rational>> = dual.iter().map(|s| s.to_rational().cloned()).collect();
    if let (Some(dual_q), Some(a_sq_q)) = (rational, a_sq.to_rational()) {
        if let Some(res) = search_pairs_int(space, &dual_q, a_sq_q) {
            return Ok(res);
        }
    }
    let mut best: Option<PairMin> = None;
    for (idx, c) in space.candidates.iter().enumerate() {
        let av: Scalar = c.v.iter().zip(&dual).map(|(&x, d)| d.scale(&Rational::from_integer(x.into()))).sum();
        if av.square() < &a_sq * &c.v_sq {
            continue;
        }
        let ratio = av.scale(&rat(1, i64::from(c.mult)));
        if best.as_ref().is_none_or(|b| ratio < b.ratio) {
            best = Some(PairMin { ratio, idx });
        }
    }
    Ok(best)
}

fn search_pairs_int(space: &SearchSpace, dual: &[Rational], a_sq: &Rational) -> Option<Option<PairMin>> {
    let l = lcm_of_denominators(dual);
    let w: Vec<i128> = dual
        .iter()
        .map(|q| (q * Rational::from_integer(l.clone())).to_integer().to_i128())
        .collect::<Option<_>>()?;
    let l128 = l.to_i128()?;
    let p = a_sq.numer().to_i128()?;
    let q = a_sq.denom().to_i128()?;
    let mut best: Option<(i128, u32, usize)> = None;
    for (idx, c) in space.candidates.iter().enumerate() {
        let mut n: i128 = 0;
        for (&x, &wi) in c.v.iter().zip(&w) {
            n = n.checked_add(i128::from(x).checked_mul(wi)?)?;
        }
        // (a·v)² ≥ a²·v²  with a·v = n/L, a² = p/q
        let v_sq = c.v_sq.to_rational()?.to_integer().to_i128()?;
        let lhs = n.checked_mul(n)?.checked_mul(q)?;
        let rhs = p.checked_mul(v_sq)?.checked_mul(l128)?.checked_mul(l128)?;
        if lhs < rhs {
            continue;
        }
        let m = c.mult;
        let better = match best {
            None => true,
            Some((bn, bm, _)) => n.checked_mul(i128::from(bm))? < bn.checked_mul(i128::from(m))?,
        };
        if better {
            best = Some((n, m, idx));
        }
    }
    Some(best.map(|(n, m, idx)| PairMin {
        ratio: Scalar::from_rational(Rational::new(BigInt::from(n), BigInt::from(m) * &l)),
        idx,
    }))
}

/// Largest certified lower bound over the box: the minimum of the cap, the
/// catalogued moving curves, and every feasible hypothetical pair.
pub fn seshadri_lower(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<(SeshadriValue, LowerSource)> {
    let space = SearchSpace::new(model, bound)?;
    seshadri_lower_in(model, &space, a)
}

pub fn seshadri_lower_in(
    model: &SurfaceModel,
    space: &SearchSpace,
    a: &DivisorClass,
) -> Result<(SeshadriValue, LowerSource)> {
    ensure_ample(model, a)?;
    let mut best = SeshadriValue::sqrt_of(model.self_int(a)?);
    let mut source = LowerSource::Cap;
    for c in model.moving_curves() {
        let r = SeshadriValue::Exact(curve_ratio(model, a, c)?);
        if r < best {
            best = r;
            source = LowerSource::Curve { label: c.label.clone() };
        }
    }
    if let Some(pm) = search_pairs(model, space, a)? {
        let r = SeshadriValue::Exact(pm.ratio);
        if r < best {
            let c = &space.candidates[pm.idx];
            best = r;
            source = LowerSource::Pair {
                cls: DivisorClass::from_ints(&c.v),
                mult: c.mult,
            };
        }
    }
    if best.exact().is_some_and(Scalar::is_negative) {
        best = SeshadriValue::Exact(Scalar::zero());
    }
    Ok((best, source))
}

pub fn seshadri_estimate(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<SeshadriEstimate> {
    let space = SearchSpace::new(model, bound)?;
    seshadri_estimate_in(model, &space, a)
}

pub fn seshadri_estimate_in(model: &SurfaceModel, space: &SearchSpace, a: &DivisorClass) -> Result<SeshadriEstimate> {
    let (upper, upper_witness) = seshadri_upper(model, a)?;
    let (lower, lower_source) = seshadri_lower_in(model, space, a)?;
    let exact = lower == upper;
    let cap = model.self_int(a)?.to_f64().sqrt();
    let t = lower.to_f64();
    let guarantee_degree = (lower_source != LowerSource::Cap && t < cap).then(|| t * cap / (cap - t));
    Ok(SeshadriEstimate {
        lower,
        upper,
        upper_witness,
        lower_source,
        certified_box: space.bound,
        exact,
        guarantee_degree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExceptionalShape {
    /// Smooth at the point with `C² = 0`: the shape of a fibre.
    FibrationShape,
    /// Passes every check but is ruled out for multiplicity ≥ 2 once
    /// m(A) > 2 + α.
    Infeasible,
    Admissible,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    /// `a·c ≤ m`: ratio at most one.
    pub e0: bool,
    /// `c² ≥ m(m−1)`.
    pub e1: bool,
    /// `(a·c)² ≥ a²c²`; `None` when `a² ≤ 0`.
    pub hodge: Option<bool>,
    pub passes: bool,
    pub shape: ExceptionalShape,
}

/// Checks whether `(c, m)` could be a Seshadri-exceptional curve of
/// multiplicity `m` for a class with ratio at most one. With `alpha`, pairs
/// with `m ≥ 2` are flagged infeasible when `(2+α)(m−1) > m`.
pub fn exceptional_filter(
    model: &SurfaceModel,
    a: &DivisorClass,
    c: &DivisorClass,
    m: u32,
    alpha: Option<&Rational>,
) -> Result<FeasibilityReport> {
    if c.is_zero() {
        return Err(Error::ZeroClass);
    }
    if m == 0 {
        return Err(Error::precondition("multiplicity must be at least 1"));
    }
    let mi = i64::from(m);
    let ac = model.pair(a, c)?;
    let cc = model.self_int(c)?;
    let aa = model.self_int(a)?;
    let e0 = ac <= Scalar::from_int(mi);
    let e1 = cc >= Scalar::from_int(mi * (mi - 1));
    let hodge = aa.is_positive().then(|| ac.square() >= &aa * &cc);
    let passes = e0 && e1 && hodge != Some(false);
    let shape = if !passes {
        ExceptionalShape::Rejected
    } else if m == 1 && cc.is_zero() {
        ExceptionalShape::FibrationShape
    } else if m >= 2
        && alpha.is_some_and(|al| (Rational::from_integer(2.into()) + al) * Rational::from_integer((mi - 1).into()) > Rational::from_integer(mi.into()))
    {
        ExceptionalShape::Infeasible
    } else {
        ExceptionalShape::Admissible
    };
    Ok(FeasibilityReport {
        e0,
        e1,
        hodge,
        passes,
        shape,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MultSource {
    Formula,
    CatalogueWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityLower {
    pub value: Scalar,
    pub source: MultSource,
    pub formula: Scalar,
    /// Best sum of distinct catalogued curves through the point dominated by
    /// the class: total multiplicity and a description.
    pub catalogue_mult: Option<u32>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityBounds {
    pub lower: Scalar,
    pub upper: Scalar,
    pub lower_source: MultSource,
    pub witness: Option<String>,
}

/// `ε + (A² − ε²)/(2ε)`, evaluated at the Seshadri upper bound. The
/// expression decreases in ε below `√(A²)`, so this stays a valid lower bound
/// for the multiplicity whatever the true ε is.
fn formula_lower(a_sq: &Scalar, eps: &SeshadriValue) -> Result<Scalar> {
    match eps {
        SeshadriValue::Exact(e) => {
            if !e.is_positive() {
                return Err(Error::precondition("Seshadri bound must be positive"));
            }
            let two_e = e.scale(&rat(2, 1));
            Ok(e + &(a_sq - &e.square()).checked_div(&two_e)?)
        }
        SeshadriValue::SqrtOf(s) => {
            // (A² + s)/(2√s) ≥ (A² + s)/(2·hi)
            let (_, hi) = eps.rational_bounds();
            if !hi.is_positive() {
                return Err(Error::precondition("Seshadri bound must be positive"));
            }
            let num = a_sq + s;
            Ok(num.scale(&(Rational::one() / (hi * rat(2, 1)))))
        }
    }
}

/// Largest total multiplicity of a sum of distinct catalogued moving curves
/// whose complement in `a` is catalogue-nef.
fn catalogue_witness(model: &SurfaceModel, a: &DivisorClass) -> Result<Option<(u32, String)>> {
    let moving: Vec<&CurveRecord> = model.moving_curves().take(16).collect();
    let mut best: Option<(u32, String)> = None;
    for mask in 1u32..(1u32 << moving.len()) {
        let chosen: Vec<&CurveRecord> = moving
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        let mult: u32 = chosen.iter().map(|c| c.mult_eta).sum();
        if best.as_ref().is_some_and(|(b, _)| *b >= mult) {
            continue;
        }
        let mut rest = a.clone();
        for c in &chosen {
            rest = &rest - &c.cls;
        }
        if is_nef(model, &rest)?.is_certified() {
            let label = chosen.iter().map(|c| c.label.as_str()).collect::<Vec<_>>().join(" + ");
            best = Some((mult, label));
        }
    }
    Ok(best)
}

fn m_lower_with_eps(model: &SurfaceModel, a: &DivisorClass, eps: &SeshadriValue) -> Result<MultiplicityLower> {
    let a_sq = model.self_int(a)?;
    let formula = formula_lower(&a_sq, eps)?;
    let cat = catalogue_witness(model, a)?;
    let (value, source, witness) = match &cat {
        Some((m, label)) if Scalar::from_int(i64::from(*m)) > formula => (
            Scalar::from_int(i64::from(*m)),
            MultSource::CatalogueWitness,
            Some(format!("{label} through the point")),
        ),
        _ => (formula.clone(), MultSource::Formula, Some(format!("formula at ε = {eps}"))),
    };
    Ok(MultiplicityLower {
        value,
        source,
        formula,
        catalogue_mult: cat.map(|(m, _)| m),
        witness,
    })
}

/// Lower bound for m(a): the larger of the volume formula and the best
/// catalogue witness.
pub fn m_lower(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<MultiplicityLower> {
    let space = SearchSpace::new(model, bound)?;
    m_lower_in(model, &space, a)
}

pub fn m_lower_in(model: &SurfaceModel, space: &SearchSpace, a: &DivisorClass) -> Result<MultiplicityLower> {
    let est = seshadri_estimate_in(model, space, a)?;
    if est.lower.is_zero() {
        return Err(Error::precondition("certified Seshadri lower bound is zero"));
    }
    m_lower_with_eps(model, a, &est.upper)
}

/// `a · B` for the very ample reference `B`.
pub fn m_upper(model: &SurfaceModel, a: &DivisorClass) -> Result<Scalar> {
    model.pair(a, &model.very_ample_ref)
}

pub fn multiplicity_bounds(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<MultiplicityBounds> {
    let lower = m_lower(model, a, bound)?;
    Ok(MultiplicityBounds {
        lower: lower.value,
        upper: m_upper(model, a)?,
        lower_source: lower.source,
        witness: lower.witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionCc {
    pub fires: bool,
    pub a_squared: Scalar,
    pub eps_upper: SeshadriValue,
    pub witness: UpperWitness,
    pub verdict: Verdict,
    pub candidate: Option<FibrationCandidate>,
    /// Fired, but no isotropic ray in the box matches the witness.
    pub needs_larger_box: bool,
}

/// Fires when `a² > 3·ε_upper²`, which implies `a² > 3ε²` for the true ε.
pub fn criterion_cc(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<CriterionCc> {
    let (eps, witness) = seshadri_upper(model, a)?;
    let a_sq = model.self_int(a)?;
    let fires = a_sq > eps.squared().scale(&rat(3, 1));
    let mut candidate = None;
    if fires {
        if let Some(c) = witness.curve() {
            for r in isotropic_nef_rays(model, bound)? {
                if same_ray(&r.cls, &c.cls)? {
                    candidate = Some(r);
                    break;
                }
            }
        }
    }
    let needs_larger_box = fires && candidate.is_none();
    let verdict = if !fires {
        Verdict {
            status: crate::cone::Status::Inconclusive,
            witness: None,
            caveat: Some(format!("A² = {a_sq} ≤ 3·ε² = {}; the criterion is only sufficient", eps.squared().scale(&rat(3, 1)))),
            complete_up_to: None,
        }
    } else if let Some(c) = &candidate {
        Verdict {
            status: crate::cone::Status::Certified,
            witness: Some(crate::cone::Witness::Class(c.cls.clone())),
            caveat: Some(format!("fibration predicted with fibre class {}", c.cls)),
            complete_up_to: Some(model.catalogue_complete_up_to.clone()),
        }
    } else {
        Verdict {
            status: crate::cone::Status::Inconclusive,
            witness: None,
            caveat: Some(format!("criterion fired but no isotropic nef ray in box {bound} matches the witness; increase box")),
            complete_up_to: None,
        }
    };
    Ok(CriterionCc {
        fires,
        a_squared: a_sq,
        eps_upper: eps,
        witness,
        verdict,
        candidate,
        needs_larger_box,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C1Row {
    pub cls: DivisorClass,
    pub a_squared: Scalar,
    pub eps_upper: SeshadriValue,
    /// `a² ≤ 4·ε_upper²`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C1Report {
    pub rows: Vec<C1Row>,
    pub violations: usize,
    pub has_isotropic_rays: bool,
    /// A violation on a model without isotropic nef rays in the box.
    pub inconsistent: bool,
}

/// Checks `√(a²) ≤ 2ε` (squared, against the upper bound) on every sample.
/// A violation predicts a fibration; without isotropic nef rays the
/// catalogue is inconsistent.
pub fn criterion_c1(model: &SurfaceModel, samples: &[DivisorClass], bound: u32) -> Result<C1Report> {
    let mut rows = Vec::with_capacity(samples.len());
    for a in samples {
        let (eps, _) = seshadri_upper(model, a)?;
        let a_sq = model.self_int(a)?;
        let holds = a_sq <= eps.squared().scale(&rat(4, 1));
        rows.push(C1Row {
            cls: a.clone(),
            a_squared: a_sq,
            eps_upper: eps,
            holds,
        });
    }
    let violations = rows.iter().filter(|r| !r.holds).count();
    let has_isotropic_rays = !isotropic_nef_rays(model, bound)?.is_empty();
    Ok(C1Report {
        rows,
        violations,
        has_isotropic_rays,
        inconsistent: violations > 0 && !has_isotropic_rays,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum T2Case {
    /// `m = 1`, `C² = 0`.
    FibrationSmooth,
    /// `(a·C)² < a²·C²`.
    HodgeExcluded { lhs: Scalar, rhs: Scalar },
    /// `m = 2`, `C² = 2` and `a ≡ C`.
    ProductLike,
    /// Smooth at the point with `C² > 0` when `3 ≤ a² < 4`.
    PositiveSmoothExcluded,
    /// `C² < m(m−1)`.
    MultiplicityExcluded,
    /// `a² ≥ 4`: handled by the volume criterion.
    DelegatedToCc,
    Unresolved,
}

/// Classifies one Seshadri-exceptional configuration from its numbers.
pub fn classify_t2(a_sq: &Scalar, a_dot_c: &Scalar, c_sq: &Scalar, m: u32) -> T2Case {
    let mi = i64::from(m);
    let lhs = a_dot_c.square();
    let rhs = a_sq * c_sq;
    if m == 1 && c_sq.is_zero() {
        return T2Case::FibrationSmooth;
    }
    if lhs < rhs {
        return T2Case::HodgeExcluded { lhs, rhs };
    }
    if *c_sq < Scalar::from_int(mi * (mi - 1)) {
        return T2Case::MultiplicityExcluded;
    }
    if m == 1 && c_sq.is_positive() && *a_sq >= Scalar::from_int(3) && *a_sq < Scalar::from_int(4) {
        return T2Case::PositiveSmoothExcluded;
    }
    if m == 2 && *c_sq == Scalar::from_int(2) {
        return T2Case::ProductLike;
    }
    T2Case::Unresolved
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T2Witness {
    pub label: String,
    pub cls: DivisorClass,
    pub mult: u32,
    pub case: T2Case,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T2Report {
    pub overall: T2Case,
    pub witnesses: Vec<T2Witness>,
    pub candidates: Vec<FibrationCandidate>,
    pub cc: Option<CriterionCc>,
}

/// Classifies the Seshadri-exceptional configurations of a class with
/// `a² > 1` and `ε = 1`. Single catalogued curves realizing ε are classified
/// one by one; sums of them with total multiplicity 2 that are numerically
/// equivalent to `a` are the product configuration, which takes precedence.
pub fn criterion_t2(model: &SurfaceModel, a: &DivisorClass, bound: u32) -> Result<T2Report> {
    let a_sq = model.self_int(a)?;
    if a_sq <= Scalar::one() {
        return Err(Error::precondition(format!("needs A² > 1, found {a_sq}")));
    }
    let est = seshadri_estimate(model, a, bound)?;
    let one = SeshadriValue::Exact(Scalar::one());
    if !est.exact || est.upper != one {
        return Err(Error::precondition(format!(
            "needs ε = 1 certified, found [{}, {}]",
            est.lower, est.upper
        )));
    }
    if a_sq >= Scalar::from_int(4) {
        let cc = criterion_cc(model, a, bound)?;
        let candidates = cc.candidate.iter().cloned().collect();
        return Ok(T2Report {
            overall: T2Case::DelegatedToCc,
            witnesses: Vec::new(),
            candidates,
            cc: Some(cc),
        });
    }

    let mut witnesses = Vec::new();
    for c in model.moving_curves() {
        let ratio = curve_ratio(model, a, c)?;
        if ratio != Scalar::one() {
            continue;
        }
        let case = classify_t2(&a_sq, &model.pair(a, &c.cls)?, &model.self_int(&c.cls)?, c.mult_eta);
        witnesses.push(T2Witness {
            label: c.label.clone(),
            cls: c.cls.clone(),
            mult: c.mult_eta,
            case,
        });
    }

    // Product configuration: tied fibres adding up to a class ≡ a with
    // multiplicity 2; a·(a−S) = 0 and (a−S)² = 0 force a ≡ S.
    let mut product: Option<Vec<usize>> = None;
    for i in 0..witnesses.len() {
        for j in (i + 1)..witnesses.len() {
            let (wi, wj) = (&witnesses[i], &witnesses[j]);
            if wi.mult + wj.mult != 2 {
                continue;
            }
            let s = &wi.cls + &wj.cls;
            let rest = a - &s;
            if model.pair(a, &rest)?.is_zero() && model.self_int(&rest)?.is_zero() {
                let case = classify_t2(&a_sq, &model.pair(a, &s)?, &model.self_int(&s)?, 2);
                if case == T2Case::ProductLike {
                    product = Some(vec![i, j]);
                    break;
                }
            }
        }
        if product.is_some() {
            break;
        }
    }

    let primary = witnesses
        .iter()
        .find(|w| Some(&w.label) == est.upper_witness.curve().map(|c| &c.label));
    let (overall, members): (T2Case, Vec<usize>) = match (&product, primary) {
        (Some(idx), _) => (T2Case::ProductLike, idx.clone()),
        (None, Some(p)) => {
            let idx = witnesses.iter().position(|w| w.label == p.label).unwrap_or(0);
            (p.case.clone(), vec![idx])
        }
        (None, None) => (T2Case::Unresolved, Vec::new()),
    };
    let mut candidates = Vec::new();
    if matches!(overall, T2Case::ProductLike | T2Case::FibrationSmooth) {
        for i in members {
            candidates.push(candidate_for(model, &witnesses[i].cls)?);
        }
    }
    Ok(T2Report {
        overall,
        witnesses,
        candidates,
        cc: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub n: u32,
    pub cls: DivisorClass,
    pub eps_upper: SeshadriValue,
    pub eps_at_most_one: bool,
    pub m_lower: Scalar,
    pub m_lower_at_least_n: bool,
}

/// Rows `α·a + n·f` for `n = 0..=n_max`: each has `ε ≤ α(a·f) ≤ 1` through
/// the fibre, and multiplicity at least `n` from `n` fibres through the point.
pub fn unbounded_family_demo(
    model: &SurfaceModel,
    f: &FibrationCandidate,
    a: &DivisorClass,
    alpha: &Rational,
    n_max: u32,
) -> Result<Vec<FamilyRow>> {
    if !model.self_int(&f.cls)?.is_zero() || is_nef(model, &f.cls)?.is_refuted() {
        return Err(Error::precondition("fibre class must be isotropic and nef"));
    }
    if !is_ample(model, a)?.is_certified() {
        return Err(Error::precondition(format!("class {a} is not certified ample")));
    }
    if !alpha.is_positive() {
        return Err(Error::precondition("alpha must be positive"));
    }
    let af = model.pair(a, &f.cls)?;
    if af.scale(alpha) > Scalar::one() {
        return Err(Error::precondition(format!("alpha · (a·f) = {} exceeds 1", af.scale(alpha))));
    }
    // Fibre through the point: a catalogued moving curve C = λ·f with λ > 0.
    let mut fibre: Option<(Scalar, &CurveRecord)> = None;
    for c in model.moving_curves() {
        if same_ray(&f.cls, &c.cls)? {
            let nz = f.cls.coords.iter().zip(&c.cls.coords).find(|(x, _)| !x.is_zero());
            if let Some((x, y)) = nz {
                fibre = Some((y.checked_div(x)?, c));
                break;
            }
        }
    }
    let Some((lambda, curve)) = fibre else {
        return Err(Error::precondition(format!(
            "no catalogued curve through the point lies on the ray of {}",
            f.cls
        )));
    };
    // n·f = (n/λ)·C has multiplicity (n/λ)·mult at the point.
    let per_copy = Scalar::from_int(i64::from(curve.mult_eta)).checked_div(&lambda)?;

    let base_cls = a.scale_rational(alpha);
    let (base_eps, _) = seshadri_upper(model, &base_cls)?;
    let base = m_lower_with_eps(model, &base_cls, &base_eps)?.value;

    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let cls = &base_cls + &f.cls.scale(&Scalar::from_int(i64::from(n)));
        let (eps, _) = seshadri_upper(model, &cls)?;
        let from_formula = m_lower_with_eps(model, &cls, &eps)?.value;
        let from_fibres = &base + &per_copy.scale(&Rational::from_integer(n.into()));
        let m = from_formula.max(from_fibres);
        rows.push(FamilyRow {
            n,
            eps_at_most_one: eps <= SeshadriValue::Exact(Scalar::one()),
            m_lower_at_least_n: m >= Scalar::from_int(i64::from(n)),
            eps_upper: eps,
            m_lower: m,
            cls,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub base: DivisorClass,
    pub scale: Scalar,
    pub cls: DivisorClass,
    pub eps_upper: SeshadriValue,
    pub witness: String,
    pub m_lower: Scalar,
    pub m_source: MultSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyScan {
    pub family: Vec<FamilyMember>,
    pub skipped: Vec<String>,
    pub best_m_lower: Scalar,
    pub best_member: Option<usize>,
    pub exceeds_two: bool,
    pub linked_candidate: Option<FibrationCandidate>,
    pub isotropic_rays: Vec<FibrationCandidate>,
    /// Rows of the fibre construction when the model has a known fibre.
    pub family_certificate: Option<Vec<FamilyRow>>,
}

/// Demo length used by [`mx_scan`] to certify growth past 2.
const MX_DEMO_ROWS: u32 = 3;

/// Scans primitive ample classes of degree at most `degree_bound` in the
/// box, rescaled to `ε_upper = 1`, for the largest multiplicity lower bound.
pub fn mx_scan(model: &SurfaceModel, degree_bound: u32, bound: u32) -> Result<FamilyScan> {
    let space = SearchSpace::new(model, bound)?;
    let b = i64::from(bound.max(1));
    let deg_cap = Scalar::from_int(i64::from(degree_bound));
    let im = IntModel::new(model);
    let mut bases = Vec::new();
    for_each_in_box(model.rank(), b, |v| {
        if gcd_all(v) != 1 {
            return;
        }
        // integer prefilter; the exact checks below still run
        if let Some(im) = &im {
            let deg = dot(&im.ample_dual, v);
            if deg <= 0 || deg > i64::from(degree_bound) || im.self_int(v) <= 0 {
                return;
            }
        }
        bases.push(DivisorClass::from_ints(v));
    });

    let mut family = Vec::new();
    let mut skipped = Vec::new();
    for base in bases {
        let deg = model.degree(&base)?;
        if !deg.is_positive() || deg > deg_cap || !is_ample(model, &base)?.is_certified() {
            continue;
        }
        let (eps, witness) = seshadri_upper(model, &base)?;
        let t = match eps.exact().and_then(Scalar::to_rational) {
            Some(e) if e.is_positive() => e.recip(),
            _ => {
                skipped.push(format!("{base}: ε upper bound {eps} is not rational"));
                continue;
            }
        };
        let cls = base.scale_rational(&t);
        let m = m_lower_in(model, &space, &cls)?;
        family.push(FamilyMember {
            base,
            scale: Scalar::from_rational(t.clone()),
            cls,
            eps_upper: eps.scale(&t),
            witness: witness.label().to_string(),
            m_lower: m.value,
            m_source: m.source,
        });
    }

    let mut best_member = None;
    let mut best = Scalar::zero();
    for (i, m) in family.iter().enumerate() {
        if best_member.is_none() || m.m_lower > best {
            best = m.m_lower.clone();
            best_member = Some(i);
        }
    }

    let rays = isotropic_nef_rays(model, bound)?;
    let mut family_certificate = None;
    let mut demo_fibre = None;
    if let Some(f) = rays.iter().find(|r| r.fiber_curve.is_some()) {
        let af = model.degree(&f.cls)?;
        if let Some(alpha) = af.to_rational().filter(|q| q.is_positive()).map(|q| q.recip()) {
            let rows = unbounded_family_demo(model, f, &model.ample_ref, &alpha, MX_DEMO_ROWS)?;
            if let Some(last) = rows.last() {
                if last.m_lower > best {
                    best = last.m_lower.clone();
                    demo_fibre = Some(f.clone());
                }
            }
            family_certificate = Some(rows);
        }
    }

    let exceeds_two = best > Scalar::from_int(2);
    let linked_candidate = if !exceeds_two {
        None
    } else if let Some(f) = demo_fibre {
        Some(f)
    } else {
        let witness_cls = best_member
            .and_then(|i| model.curve(&family[i].witness))
            .map(|c| c.cls.clone());
        let mut found = None;
        if let Some(w) = witness_cls {
            for r in &rays {
                if same_ray(&r.cls, &w)? {
                    found = Some(r.clone());
                    break;
                }
            }
        }
        found.or_else(|| rays.first().cloned())
    };

    Ok(FamilyScan {
        family,
        skipped,
        best_m_lower: best,
        best_member,
        exceeds_two,
        linked_candidate,
        isotropic_rays: rays,
        family_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{builtin, gamma_class};

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::from_ints(v)
    }

    fn exact(n: i64, d: i64) -> SeshadriValue {
        SeshadriValue::Exact(Scalar::from_rational(rat(n, d)))
    }

    #[test]
    fn value_ordering() {
        let s2 = SeshadriValue::sqrt_of(Scalar::from_int(2));
        assert!(matches!(s2, SeshadriValue::Exact(_)));
        let s5 = SeshadriValue::sqrt_of(Scalar::from_int(5));
        assert!(matches!(s5, SeshadriValue::SqrtOf(_)));
        assert!(exact(2, 1) < s5 && s5 < exact(3, 1));
        assert_eq!(s5.scale(&rat(2, 1)), SeshadriValue::sqrt_of(Scalar::from_int(20)));
        let (lo, hi) = s5.rational_bounds();
        assert!(lo < hi && lo > rat(2236, 1000) && hi < rat(2237, 1000));
    }

    #[test]
    fn max_mult_table() {
        for (s, m) in [(0, 1), (1, 1), (2, 2), (5, 2), (6, 3), (11, 3), (12, 4), (20, 5)] {
            assert_eq!(max_mult(&Scalar::from_int(s)), m, "v² = {s}");
        }
    }

    #[test]
    fn upper_examples() {
        let exe = builtin("ExE").unwrap();
        let (v, w) = seshadri_upper(&exe, &cls(&[1, 1, 0])).unwrap();
        assert_eq!(v, exact(1, 1));
        assert_eq!(w.label(), "F1");
        let (v, w) = seshadri_upper(&exe, &cls(&[1, 2, 0])).unwrap();
        assert_eq!(v, exact(1, 1));
        assert_eq!(w.label(), "F2");
        let (v, w) = seshadri_upper(&builtin("P2").unwrap(), &cls(&[1])).unwrap();
        assert_eq!(v, exact(1, 1));
        assert_eq!(w.label(), "line");
        assert!(seshadri_upper(&exe, &cls(&[1, 0, 0])).is_err());
    }

    #[test]
    fn estimate_examples() {
        let p2 = builtin("P2").unwrap();
        assert_eq!(seshadri_lower(&p2, &cls(&[1]), 10).unwrap().0, exact(1, 1));
        let e = seshadri_estimate(&p2, &cls(&[2]), 10).unwrap();
        assert!(e.exact && e.upper == exact(2, 1));

        let exe = builtin("ExE").unwrap();
        let e = seshadri_estimate(&exe, &cls(&[1, 1, 0]), 10).unwrap();
        assert!(e.exact);
        assert_eq!(e.lower, exact(1, 1));
        assert_eq!(e.upper_witness.label(), "F1");

        let c = builtin("C1xC2").unwrap();
        let e = seshadri_estimate(&c, &cls(&[1, 4]), 10).unwrap();
        assert!(e.exact && e.lower == exact(1, 1));

        let bl = builtin("P2-blowup").unwrap();
        for b in [6, 10] {
            let e = seshadri_estimate(&bl, &cls(&[3, -1]), b).unwrap();
            assert!(e.exact, "box {b}: {e:?}");
            assert_eq!(e.upper, exact(2, 1));
        }
    }

    #[test]
    fn irrational_class_takes_slow_path() {
        let exe = builtin("ExE").unwrap();
        let a = DivisorClass::new(vec![Scalar::sqrt2(), Scalar::one(), Scalar::zero()]);
        let e = seshadri_estimate(&exe, &a, 3).unwrap();
        assert!(e.lower <= e.upper);
        assert_eq!(e.upper, SeshadriValue::Exact(Scalar::one()));
    }

    #[test]
    fn filter_examples() {
        let exe = builtin("ExE").unwrap();
        let a = cls(&[1, 1, 0]);
        let r = exceptional_filter(&exe, &a, &cls(&[1, 0, 0]), 1, None).unwrap();
        assert!(r.passes && r.shape == ExceptionalShape::FibrationShape);
        let r = exceptional_filter(&exe, &a, &cls(&[0, 0, 1]), 2, None).unwrap();
        assert!(!r.e1 && r.shape == ExceptionalShape::Rejected);
        let p2 = builtin("P2").unwrap();
        let r = exceptional_filter(&p2, &cls(&[1]), &cls(&[1]), 1, None).unwrap();
        assert!(r.passes && r.shape == ExceptionalShape::Admissible);
        let r = exceptional_filter(&exe, &a, &cls(&[1, 1, 0]), 2, Some(&rat(1, 10))).unwrap();
        assert!(r.passes && r.shape == ExceptionalShape::Infeasible);
    }

    #[test]
    fn multiplicity_examples() {
        let exe = builtin("ExE").unwrap();
        let m = m_lower(&exe, &cls(&[1, 1, 0]), 10).unwrap();
        assert_eq!(m.formula, Scalar::from_rational(rat(3, 2)));
        assert_eq!(m.value, Scalar::from_int(2));
        assert_eq!(m.source, MultSource::CatalogueWitness);
        let m = m_lower(&exe, &cls(&[1, 4, 0]), 10).unwrap();
        assert_eq!(m.formula, Scalar::from_rational(rat(9, 2)));
        let p2 = builtin("P2").unwrap();
        assert_eq!(m_lower(&p2, &cls(&[1]), 10).unwrap().value, Scalar::one());
        assert_eq!(m_upper(&exe, &cls(&[1, 1, 0])).unwrap(), Scalar::from_int(4));
        assert_eq!(m_upper(&p2, &cls(&[1])).unwrap(), Scalar::from_int(3));
    }

    #[test]
    fn cc_examples() {
        let exe = builtin("ExE").unwrap();
        assert!(!criterion_cc(&exe, &cls(&[1, 1, 0]), 5).unwrap().fires);
        let r = criterion_cc(&exe, &cls(&[1, 2, 0]), 5).unwrap();
        assert!(r.fires && r.candidate.unwrap().cls == cls(&[0, 1, 0]));
        assert!(!criterion_cc(&builtin("P2").unwrap(), &cls(&[1]), 5).unwrap().fires);
    }

    #[test]
    fn c1_examples() {
        let p2 = builtin("P2").unwrap();
        let r = criterion_c1(&p2, &[cls(&[1]), cls(&[2]), cls(&[5])], 5).unwrap();
        assert_eq!(r.violations, 0);
        let exe = builtin("ExE").unwrap();
        let r = criterion_c1(&exe, &[cls(&[1, 8, 0])], 3).unwrap();
        assert_eq!(r.violations, 1);
        assert!(r.has_isotropic_rays && !r.inconsistent);
        let c = builtin("C1xC2").unwrap();
        assert_eq!(criterion_c1(&c, &[cls(&[1, 1])], 3).unwrap().violations, 0);
    }

    #[test]
    fn t2_examples() {
        let c = builtin("C1xC2").unwrap();
        let r = criterion_t2(&c, &cls(&[1, 1]), 5).unwrap();
        assert_eq!(r.overall, T2Case::ProductLike);
        let comps: Vec<_> = r.candidates.iter().map(|c| c.cls.clone()).collect();
        assert_eq!(comps, vec![cls(&[1, 0]), cls(&[0, 1])]);

        let exe = builtin("ExE").unwrap();
        let r = criterion_t2(&exe, &cls(&[1, 1, 0]), 5).unwrap();
        assert_eq!(r.witnesses[0].label, "F1");
        assert_eq!(r.witnesses[0].case, T2Case::FibrationSmooth);

        let hyp = classify_t2(&Scalar::from_int(2), &Scalar::one(), &Scalar::one(), 1);
        assert!(matches!(hyp, T2Case::HodgeExcluded { .. }));

        let r = criterion_t2(&exe, &cls(&[1, 2, 0]), 5).unwrap();
        assert_eq!(r.overall, T2Case::DelegatedToCc);
        assert!(criterion_t2(&builtin("P2").unwrap(), &cls(&[1]), 5).is_err());
    }

    #[test]
    fn family_demo_rows() {
        let c = builtin("C1xC2").unwrap();
        let f = candidate_for(&c, &cls(&[1, 0])).unwrap();
        let rows = unbounded_family_demo(&c, &f, &cls(&[1, 1]), &rat(1, 2), 10).unwrap();
        assert_eq!(rows.len(), 11);
        for r in &rows {
            assert!(r.eps_at_most_one && r.m_lower_at_least_n);
            assert_eq!(r.eps_upper, exact(1, 2));
        }
        assert_eq!(rows[0].m_lower, Scalar::from_rational(rat(3, 4)));

        let exe = builtin("ExE").unwrap();
        let g = gamma_class(2).unwrap();
        let grown = exe.add_curve(CurveRecord::new("Gamma2", g.clone(), 1, true)).unwrap();
        let f = candidate_for(&grown, &g).unwrap();
        let rows = unbounded_family_demo(&grown, &f, &cls(&[1, 1, 0]), &rat(1, 5), 8).unwrap();
        assert!(rows.iter().all(|r| r.eps_at_most_one && r.m_lower_at_least_n));
        let f = candidate_for(&exe, &g).unwrap();
        assert!(unbounded_family_demo(&exe, &f, &cls(&[1, 1, 0]), &rat(1, 5), 3).is_err());
    }
}
