//! The bundled scenario suite behind `verify-paper`. Everything here uses
//! the built-in fixtures and fixed seeds, so two runs print the same lines.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use seshadri_core::engine::{m_lower_in, seshadri_estimate_in, ExceptionalShape, MultSource, SearchSpace, T2Case};
use seshadri_core::scalar::rat;
use seshadri_core::{
    approximate, builtin, candidate_for, criterion_cc, criterion_t2, exceptional_filter, field_op, gamma_class, is_ample,
    is_nef, is_rational, isotropic_nef_rays, m_lower, m_upper, mx_scan, ray_rationality, seshadri_estimate,
    unbounded_family_demo, DivisorClass, FieldOp, IntersectionForm, Rational, RayType, Scalar, SeshadriValue,
    SurfaceModel, BUILTIN_NAMES,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Sample counts for the property scenario.
#[derive(Clone, Copy, Debug)]
pub struct Sizes {
    pub scalars: usize,
    pub hodge_pairs: usize,
    pub ample_per_surface: usize,
}

pub const FULL: Sizes = Sizes {
    scalars: 10_000,
    hodge_pairs: 10_000,
    ample_per_surface: 1_000,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cls(v: &[i64]) -> DivisorClass {
    DivisorClass::from_ints(v)
}

fn sc(s: &str) -> Scalar {
    s.parse().expect("literal scalar")
}

pub const NAMES: [&str; 9] = [
    "irrational nef boundary class on ExE",
    "fibre family Gamma_m on ExE",
    "product case on C1xC2",
    "volume criterion on ExE",
    "m(X) > 2 against fibrations",
    "unbounded multiplicity family",
    "nef isotropic class on the blow-up of P2",
    "property suites",
    "exceptional curve filter",
];

pub fn run_all(sizes: Sizes) -> Vec<Outcome> {
    (1..=9).map(|id| run_one(id, sizes)).collect()
}

pub fn run_one(id: u32, sizes: Sizes) -> Outcome {
    let result = match id {
        1 => irrational_boundary(),
        2 => gamma_family(),
        3 => product_case(),
        4 => volume_criterion(),
        5 => mx_equivalence(),
        6 => unbounded_family(),
        7 => blowup_pencil(),
        8 => properties(sizes),
        9 => filter_soundness(),
        _ => Err(format!("no scenario {id}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
    }
}

fn irrational_boundary() -> Check {
    let exe = builtin("ExE").map_err(err)?;
    let d = DivisorClass::new(vec![Scalar::sqrt2(), Scalar::sqrt3(), sc("2sqrt3 - 3sqrt2")]);
    let f1 = exe.curve("F1").ok_or("no F1")?.cls.clone();
    let f2 = exe.curve("F2").ok_or("no F2")?.cls.clone();
    let delta = exe.curve("Delta").ok_or("no Delta")?.cls.clone();

    let sq = exe.self_int(&d).map_err(err)?;
    ensure(sq.is_zero(), || format!("D² = {sq}"))?;
    let df1 = exe.pair(&d, &f1).map_err(err)?;
    let df2 = exe.pair(&d, &f2).map_err(err)?;
    let dd = exe.pair(&d, &delta).map_err(err)?;
    ensure(df1 == sc("3sqrt3 - 3sqrt2") && df1.is_positive(), || format!("D·F1 = {df1}"))?;
    ensure(df2 == sc("2sqrt3 - 2sqrt2") && df2.is_positive(), || format!("D·F2 = {df2}"))?;
    ensure(dd == sc("sqrt2 + sqrt3") && dd.is_positive(), || format!("D·Δ = {dd}"))?;
    let nef = is_nef(&exe, &d).map_err(err)?;
    ensure(nef.is_certified(), || format!("is_nef: {:?}", nef.status))?;

    let ratio = field_op(FieldOp::Div, &df1, &dd).map_err(err)?;
    ensure(ratio == sc("15 - 6sqrt6"), || format!("ratio = {ratio}"))?;
    ensure(!is_rational(&ratio), || "ratio reported rational".into())?;
    let ray = ray_rationality(&d).map_err(err)?;
    ensure(ray == RayType::Irrational, || format!("ray type {ray:?}"))?;

    let coeff = sc("3sqrt2 - 2sqrt3");
    let back = field_op(FieldOp::Mul, &coeff, &sc("sqrt2 + sqrt3")).map_err(err)?;
    ensure(back == Scalar::sqrt6(), || format!("back-multiplication gives {back}"))?;
    let quotient = field_op(FieldOp::Div, &Scalar::sqrt6(), &sc("sqrt2 + sqrt3")).map_err(err)?;
    ensure(quotient == coeff, || format!("quotient {quotient}"))?;
    Ok(format!("D² = 0, D nef, (D·F1)/(D·Δ) = {ratio} irrational"))
}

fn gamma_family() -> Check {
    let exe = builtin("ExE").map_err(err)?;
    let f1 = DivisorClass::new(vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
    let mut worst = Rational::from_integer(0.into());
    for m in 1..=1000u64 {
        let g = gamma_class(m).map_err(err)?;
        let sq = exe.self_int(&g).map_err(err)?;
        ensure(sq.is_zero(), || format!("Γ_{m}² = {sq}"))?;
        if m < 2 {
            continue;
        }
        let deg = exe.degree(&g).map_err(err)?;
        let expected = Scalar::from_int(1 + (m * m) as i64);
        ensure(deg == expected, || format!("deg Γ_{m} = {deg}"))?;
        let normalized = g.scale(&deg.inverse().map_err(err)?);
        let bound = rat(2, m as i64);
        for (x, y) in normalized.coords.iter().zip(&f1.coords) {
            let diff = (x - y).abs();
            let q = diff.to_rational().ok_or("irrational coordinate")?.clone();
            ensure(q <= bound, || format!("m = {m}: coordinate error {q} > 2/{m}"))?;
            if m == 1000 && q > worst {
                worst = q;
            }
        }
    }
    Ok(format!("Γ_m² = 0 for m ≤ 1000; error at m = 1000 is {worst}"))
}

fn product_case() -> Check {
    let c = builtin("C1xC2").map_err(err)?;
    let a = cls(&[1, 1]);
    let est = seshadri_estimate(&c, &a, 10).map_err(err)?;
    let one = SeshadriValue::Exact(Scalar::one());
    ensure(est.exact && est.lower == one && est.upper == one, || {
        format!("estimate [{}, {}]", est.lower, est.upper)
    })?;
    let w = est.upper_witness.curve().ok_or("witness is not a curve")?;
    let wsq = c.self_int(&w.cls).map_err(err)?;
    ensure(wsq.is_zero(), || format!("witness {} has C² = {wsq}", w.label))?;

    let m = m_lower(&c, &a, 10).map_err(err)?;
    ensure(m.value >= Scalar::from_int(2) && m.source == MultSource::CatalogueWitness, || {
        format!("m_lower = {} via {:?}", m.value, m.source)
    })?;

    let t2 = criterion_t2(&c, &a, 10).map_err(err)?;
    ensure(t2.overall == T2Case::ProductLike, || format!("t2 gives {:?}", t2.overall))?;
    for f in [cls(&[1, 0]), cls(&[0, 1])] {
        ensure(t2.candidates.iter().any(|k| k.cls == f), || format!("component {f} missing"))?;
    }
    Ok(format!("ε = 1 via {}, m ≥ {}, product-like with both fibres", w.label, m.value))
}

fn volume_criterion() -> Check {
    let exe = builtin("ExE").map_err(err)?;
    let f2 = cls(&[0, 1, 0]);
    for n in 1..=12 {
        let a = cls(&[1, n, 0]);
        let r = criterion_cc(&exe, &a, 10).map_err(err)?;
        ensure(r.fires == (n >= 2), || format!("n = {n}: fires = {}", r.fires))?;
        if n >= 2 {
            let cand = r.candidate.as_ref().ok_or_else(|| format!("n = {n}: no candidate"))?;
            ensure(cand.cls == f2, || format!("n = {n}: candidate {}", cand.cls))?;
        } else {
            ensure(r.verdict.status == seshadri_core::Status::Inconclusive, || {
                format!("n = 1 gives {:?}", r.verdict.status)
            })?;
        }
    }
    Ok("fires exactly for 2 ≤ n ≤ 12 with candidate F2; n = 1 inconclusive".into())
}

fn mx_equivalence() -> Check {
    let mut parts = Vec::new();
    for name in BUILTIN_NAMES {
        let model = builtin(name).map_err(err)?;
        let scan = mx_scan(&model, 5, 10).map_err(err)?;
        let has_rays = !isotropic_nef_rays(&model, 10).map_err(err)?.is_empty();
        let expected = name != "P2";
        ensure(scan.exceeds_two == expected && has_rays == expected, || {
            format!("{name}: exceeds_two = {}, rays = {has_rays}", scan.exceeds_two)
        })?;
        if scan.exceeds_two {
            ensure(scan.linked_candidate.is_some(), || format!("{name}: no linked candidate"))?;
        }
        parts.push(format!("{name}:{}", scan.best_m_lower));
    }
    Ok(format!("best m_lower {}", parts.join(" ")))
}

fn unbounded_family() -> Check {
    let c = builtin("C1xC2").map_err(err)?;
    let f = candidate_for(&c, &cls(&[1, 0])).map_err(err)?;
    let rows = unbounded_family_demo(&c, &f, &cls(&[1, 1]), &rat(1, 2), 50).map_err(err)?;
    ensure(rows.len() == 51, || format!("{} rows", rows.len()))?;
    for r in &rows {
        ensure(r.eps_upper <= SeshadriValue::Exact(Scalar::one()), || format!("n = {}: ε ≤ {}", r.n, r.eps_upper))?;
        ensure(r.m_lower >= Scalar::from_int(i64::from(r.n)), || format!("n = {}: m ≥ {}", r.n, r.m_lower))?;
    }
    Ok(format!("51 rows, m_lower at n = 50 is {}", rows[50].m_lower))
}

fn blowup_pencil() -> Check {
    let bl = builtin("P2-blowup").map_err(err)?;
    let l = cls(&[1, -1]);
    let sq = bl.self_int(&l).map_err(err)?;
    ensure(sq.is_zero(), || format!("L² = {sq}"))?;
    ensure(is_nef(&bl, &l).map_err(err)?.is_certified(), || "L not certified nef".into())?;
    let rays = isotropic_nef_rays(&bl, 10).map_err(err)?;
    ensure(rays.iter().any(|r| r.cls == l), || "H − E missing from the scan".into())?;
    Ok(format!("L² = 0, nef, found among {} isotropic ray(s)", rays.len()))
}

fn filter_soundness() -> Check {
    let exe = builtin("ExE").map_err(err)?;
    let a = cls(&[1, 1, 0]);
    let r = exceptional_filter(&exe, &a, &cls(&[0, 0, 1]), 2, None).map_err(err)?;
    ensure(!r.e1 && r.shape == ExceptionalShape::Rejected, || format!("(Δ, 2): {r:?}"))?;
    let r = exceptional_filter(&exe, &a, &cls(&[1, 0, 0]), 1, None).map_err(err)?;
    ensure(r.passes && r.shape == ExceptionalShape::FibrationShape, || format!("(F1, 1): {r:?}"))?;
    Ok("(Δ, 2) rejected by C² ≥ m(m−1); (F1, 1) fibration-shape".into())
}

fn random_scalar(rng: &mut StdRng) -> Scalar {
    let coord = |rng: &mut StdRng| {
        if rng.gen_bool(0.3) {
            Rational::from_integer(0.into())
        } else {
            rat(rng.gen_range(-20..=20), rng.gen_range(1..=9))
        }
    };
    Scalar::new(coord(rng), coord(rng), coord(rng), coord(rng))
}

fn field_axioms(n: usize) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0x5e5_4ad1);
    for i in 0..n {
        let (x, y, z) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        ensure(&x + &y == &y + &x && &x * &y == &y * &x, || format!("#{i}: commutativity"))?;
        ensure(&(&x + &y) + &z == &x + &(&y + &z), || format!("#{i}: additive associativity"))?;
        ensure(&(&x * &y) * &z == &x * &(&y * &z), || format!("#{i}: multiplicative associativity"))?;
        ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || format!("#{i}: distributivity"))?;
        ensure((&x + &(-&x)).is_zero(), || format!("#{i}: additive inverse"))?;
        if !x.is_zero() {
            let inv = x.inverse().map_err(err)?;
            ensure(&x * &inv == Scalar::one(), || format!("#{i}: inverse of {x}"))?;
        }
        let s = x.sign();
        let e = approximate(&x, 53);
        ensure(e.lo <= e.hi, || format!("#{i}: empty enclosure"))?;
        let zero = Rational::from_integer(0.into());
        let consistent = match s {
            1 => e.hi > zero,
            -1 => e.lo < zero,
            _ => e.contains(&zero),
        };
        ensure(consistent, || format!("#{i}: sign {s} against [{}, {}]", e.lo, e.hi))?;
        ensure((-&x).sign() == -s && (&x - &y).sign() == -(&y - &x).sign(), || format!("#{i}: sign symmetry"))?;
    }
    Ok(())
}

fn random_form(rng: &mut StdRng, rank: usize) -> IntersectionForm {
    loop {
        let p: Vec<Vec<i64>> = (0..rank).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let diag: Vec<i64> = (0..rank).map(|i| if i == 0 { 1 } else { -1 }).collect();
        // G = Pᵀ diag P has signature (1, rank − 1) whenever P is invertible
        let g: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| (0..rank).map(|k| p[k][i] * diag[k] * p[k][j]).sum()).collect())
            .collect();
        let labels: Vec<String> = (0..rank).map(|i| format!("e{i}")).collect();
        let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
        if let Ok(form) = IntersectionForm::from_ints(&label_refs, &rows) {
            if form.signature().ok() == Some((1, rank - 1)) {
                return form;
            }
        }
    }
}

fn hodge_pairs(n: usize) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0x40d6e);
    let mut done = 0;
    while done < n {
        let rank = rng.gen_range(2..=3);
        let form = random_form(&mut rng, rank);
        for _ in 0..50 {
            let a = DivisorClass::from_ints(&(0..rank).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>());
            if !form.self_int(&a).map_err(err)?.is_positive() {
                continue;
            }
            let d = DivisorClass::from_ints(&(0..rank).map(|_| rng.gen_range(-6..=6)).collect::<Vec<_>>());
            let lhs = form.pair(&a, &d).map_err(err)?.square();
            let rhs = &form.self_int(&a).map_err(err)? * &form.self_int(&d).map_err(err)?;
            ensure(lhs >= rhs, || format!("Hodge fails for {a}, {d}"))?;
            ensure(form.hodge_check(&a, &d).map_err(err)?, || "hodge_check disagrees".into())?;
            done += 1;
            if done == n {
                break;
            }
        }
    }
    Ok(())
}

fn random_ample(rng: &mut StdRng, model: &SurfaceModel) -> Result<DivisorClass, String> {
    loop {
        let v: Vec<i64> = (0..model.rank()).map(|_| rng.gen_range(-4..=6)).collect();
        let d = DivisorClass::from_ints(&v);
        if is_ample(model, &d).map_err(err)?.is_certified() {
            return Ok(d);
        }
    }
}

/// Box used by the per-class property checks.
const PROPERTY_BOX: u32 = 3;

fn estimate_properties(per_surface: usize) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0xe5717);
    for name in BUILTIN_NAMES {
        let model = builtin(name).map_err(err)?;
        let space = SearchSpace::new(&model, PROPERTY_BOX).map_err(err)?;
        for i in 0..per_surface {
            let a = random_ample(&mut rng, &model)?;
            let est = seshadri_estimate_in(&model, &space, &a).map_err(err)?;
            ensure(est.lower <= est.upper, || format!("{name} #{i}: lower > upper for {a}"))?;

            let t = rat(rng.gen_range(1..=7), rng.gen_range(1..=5));
            let scaled = seshadri_estimate_in(&model, &space, &a.scale_rational(&t)).map_err(err)?;
            ensure(scaled.lower == est.lower.scale(&t) && scaled.upper == est.upper.scale(&t), || {
                format!("{name} #{i}: scaling {a} by {t} is not linear")
            })?;

            if !est.lower.is_zero() {
                let lo = m_lower_in(&model, &space, &a).map_err(err)?;
                let hi = m_upper(&model, &a).map_err(err)?;
                ensure(lo.value <= hi, || format!("{name} #{i}: m_lower {} > m_upper {hi} for {a}", lo.value))?;
            }
        }
    }
    Ok(())
}

fn scan_properties() -> Result<(), String> {
    for name in BUILTIN_NAMES {
        let model = builtin(name).map_err(err)?;
        let first = isotropic_nef_rays(&model, 6).map_err(err)?;
        let again = isotropic_nef_rays(&model, 6).map_err(err)?;
        ensure(first == again, || format!("{name}: scan not deterministic"))?;
        let mut prev = Vec::new();
        for b in 1..=6 {
            let rays = isotropic_nef_rays(&model, b).map_err(err)?;
            ensure(prev.iter().all(|r| rays.contains(r)), || format!("{name}: box {b} lost a ray"))?;
            prev = rays;
        }
    }
    Ok(())
}

fn properties(sizes: Sizes) -> Check {
    field_axioms(sizes.scalars).map_err(|e| format!("field: {e}"))?;
    hodge_pairs(sizes.hodge_pairs).map_err(|e| format!("hodge: {e}"))?;
    estimate_properties(sizes.ample_per_surface).map_err(|e| format!("estimates: {e}"))?;
    scan_properties().map_err(|e| format!("scans: {e}"))?;
    Ok(format!(
        "{} scalars, {} Hodge pairs, {} ample classes per surface",
        sizes.scalars, sizes.hodge_pairs, sizes.ample_per_surface
    ))
}
