//! Command-line front end: parses arguments, runs one analysis on a surface
//! and renders a report as JSON or text.

pub mod report;
pub mod verify;

use std::path::Path;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seshadri_core::catalogue::fixture_json;
use seshadri_core::engine::{
    C1Report, CriterionCc, FamilyRow, FamilyScan, LowerSource, T2Report,
};
use seshadri_core::scalar::parse_rational;
use seshadri_core::{
    builtin, candidate_for, criterion_c1, criterion_cc, criterion_t2, is_ample, is_big, is_nef, isotropic_nef_rays,
    load, m_lower, m_upper, mx_scan, ray_rationality, seshadri_estimate, unbounded_family_demo, DivisorClass, Error,
    FibrationCandidate, Scalar, SurfaceModel, BUILTIN_NAMES,
};

use report::{class, scalar, seshadri_value, verdict, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "seshadri", version, about = "Seshadri constants, multiplicities and fibration detection on surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positivity verdicts and self-intersection of a class.
    Analyze {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Certified Seshadri bounds at a very general point.
    Seshadri {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Bounds on the multiplicity invariant m(A).
    Mult {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Nef isotropic rays: candidate fibre classes.
    FibrationScan {
        #[arg(long)]
        surface: String,
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Volume, ratio and trichotomy criteria for one class.
    Criteria {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Scan normalized ample classes for multiplicity above 2.
    MxScan {
        #[arg(long)]
        surface: String,
        #[arg(long, default_value_t = 5)]
        degree: u32,
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Classes alpha·A + n·F with bounded Seshadri constant and growing m.
    FamilyDemo {
        #[arg(long)]
        surface: String,
        #[arg(long, allow_hyphen_values = true)]
        fiber: String,
        #[arg(long, allow_hyphen_values = true)]
        ample: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Blow up one very general point and write the new surface file.
    Blowup {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        out: String,
    },
    /// Run the bundled scenario suite.
    VerifyPaper,
}

/// Exit code and the text destined for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure before a report exists.
struct Fail {
    code: i32,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_INPUT,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Fail {
    Fail {
        code: EXIT_INPUT,
        msg: msg.into(),
    }
}

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli.command) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => {
                    let color = std::env::var_os("NO_COLOR").is_none();
                    report.to_text(color, Some(start.elapsed().as_millis()))
                }
            };
            let stderr = if report.exit == EXIT_INCONSISTENT {
                format!("seshadri: consistency check failed: {}\n", report.caveats.join("; "))
            } else {
                String::new()
            };
            Output {
                code: report.exit,
                stdout,
                stderr,
            }
        }
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: format!("seshadri: {}\n", f.msg),
        },
    }
}

/// A builtin name, a path to a surface file, or the file name of a bundled
/// fixture.
fn resolve_surface(arg: &str) -> Result<SurfaceModel, Fail> {
    if BUILTIN_NAMES.contains(&arg) {
        return Ok(builtin(arg)?);
    }
    let path = Path::new(arg);
    if path.exists() {
        return Ok(load(path)?);
    }
    let file = path.file_name().and_then(|f| f.to_str()).unwrap_or_default();
    for name in BUILTIN_NAMES {
        let bundled = match name {
            "P2" => "p2.surface.json",
            "C1xC2" => "c1xc2.surface.json",
            "ExE" => "exe.surface.json",
            _ => "p2blowup.surface.json",
        };
        if file == bundled && fixture_json(name).is_some() {
            return Ok(builtin(name)?);
        }
    }
    Err(Fail {
        code: EXIT_IO,
        msg: format!("cannot read surface '{arg}': no such file or builtin"),
    })
}

/// Comma-separated scalar expressions, or a JSON array of scalars.
fn parse_divisor(model: &SurfaceModel, text: &str) -> Result<DivisorClass, Fail> {
    let trimmed = text.trim();
    let d = if trimmed.starts_with('[') {
        serde_json::from_str::<DivisorClass>(trimmed).map_err(|e| input_error(format!("bad divisor '{text}': {e}")))?
    } else {
        let coords = trimmed
            .split(',')
            .map(|s| s.trim().parse::<Scalar>())
            .collect::<Result<Vec<_>, _>>()?;
        DivisorClass::new(coords)
    };
    if d.rank() != model.rank() {
        return Err(Error::DimensionMismatch {
            expected: model.rank(),
            found: d.rank(),
        }
        .into());
    }
    Ok(d)
}

fn completeness_caveat(model: &SurfaceModel) -> String {
    format!(
        "catalogue of '{}' complete up to degree {}",
        model.name, model.catalogue_complete_up_to
    )
}

fn execute(cmd: &Command) -> Result<Report, Fail> {
    match cmd {
        Command::Analyze { surface, divisor } => {
            let model = resolve_surface(surface)?;
            let d = parse_divisor(&model, divisor)?;
            let mut r = Report::new(&model.name, "analyze");
            r.inputs = json!({ "divisor": class(&d) });
            r.results = json!({
                "self_intersection": scalar(&model.self_int(&d)?),
                "degree": scalar(&model.degree(&d)?),
                "nef": verdict(&is_nef(&model, &d)?),
                "ample": verdict(&is_ample(&model, &d)?),
                "big": verdict(&is_big(&model, &d)?),
                "ray": format!("{:?}", ray_rationality(&d)?),
            });
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::Seshadri { surface, divisor, bound } => {
            let model = resolve_surface(surface)?;
            let d = parse_divisor(&model, divisor)?;
            let est = seshadri_estimate(&model, &d, *bound)?;
            let mut r = Report::new(&model.name, "seshadri");
            r.inputs = json!({ "divisor": class(&d), "box": bound });
            r.results = json!({
                "lower": seshadri_value(&est.lower),
                "upper": seshadri_value(&est.upper),
                "witness": est.upper_witness.label(),
                "lower_source": lower_source(&est.lower_source),
                "exact": est.exact,
                "certified_box": est.certified_box,
                "guarantee_degree": est.guarantee_degree.map(|g| format!("{g:.6}")),
            });
            r.caveats.push(format!("lower bound certified over integer classes in box {bound}"));
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::Mult { surface, divisor, bound } => {
            let model = resolve_surface(surface)?;
            let d = parse_divisor(&model, divisor)?;
            let lower = m_lower(&model, &d, *bound)?;
            let mut r = Report::new(&model.name, "mult");
            r.inputs = json!({ "divisor": class(&d), "box": bound });
            r.results = json!({
                "lower": scalar(&lower.value),
                "upper": scalar(&m_upper(&model, &d)?),
                "lower_source": format!("{:?}", lower.source),
                "formula": scalar(&lower.formula),
                "catalogue_mult": lower.catalogue_mult,
                "witness": lower.witness,
            });
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::FibrationScan { surface, bound } => {
            let model = resolve_surface(surface)?;
            let rays = isotropic_nef_rays(&model, *bound)?;
            let mut r = Report::new(&model.name, "fibration-scan");
            r.inputs = json!({ "box": bound });
            r.results = json!({ "candidates": rays.iter().map(candidate).collect::<Vec<_>>() });
            r.caveats.push(format!("primitive integer classes with coordinates in [-{bound}, {bound}]"));
            Ok(r)
        }
        Command::Criteria { surface, divisor, bound } => {
            let model = resolve_surface(surface)?;
            let d = parse_divisor(&model, divisor)?;
            let cc = criterion_cc(&model, &d, *bound)?;
            let c1 = criterion_c1(&model, std::slice::from_ref(&d), *bound)?;
            let t2 = criterion_t2(&model, &d, *bound);
            let mut r = Report::new(&model.name, "criteria");
            r.inputs = json!({ "divisor": class(&d), "box": bound });
            r.results = json!({
                "cc": cc_json(&cc),
                "c1": c1_json(&c1),
                "t2": match &t2 {
                    Ok(t) => t2_json(t),
                    Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
                },
            });
            if cc.needs_larger_box {
                r.caveats.push(format!("volume criterion fired with no candidate in box {bound}; increase box"));
                r.exit = EXIT_INCONSISTENT;
            }
            if c1.inconsistent {
                r.caveats.push("ratio criterion violated but no isotropic nef ray found; increase box".into());
                r.exit = EXIT_INCONSISTENT;
            }
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::MxScan { surface, degree, bound } => {
            let model = resolve_surface(surface)?;
            let scan = mx_scan(&model, *degree, *bound)?;
            let mut r = Report::new(&model.name, "mx-scan");
            r.inputs = json!({ "degree": degree, "box": bound });
            r.results = mx_json(&scan);
            if scan.exceeds_two && scan.linked_candidate.is_none() {
                r.caveats.push(format!("m > 2 found but no isotropic nef ray in box {bound}; increase box"));
                r.exit = EXIT_INCONSISTENT;
            }
            r.caveats.push(format!("degree ≤ {degree}, box {bound}"));
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::FamilyDemo {
            surface,
            fiber,
            ample,
            alpha,
            n,
        } => {
            let model = resolve_surface(surface)?;
            let f = parse_divisor(&model, fiber)?;
            let a = parse_divisor(&model, ample)?;
            let alpha_q = parse_rational(alpha)?;
            let cand = candidate_for(&model, &f)?;
            let rows = unbounded_family_demo(&model, &cand, &a, &alpha_q, *n)?;
            let mut r = Report::new(&model.name, "family-demo");
            r.inputs = json!({ "fiber": class(&f), "ample": class(&a), "alpha": alpha_q.to_string(), "n": n });
            r.results = json!({ "rows": rows.iter().map(row_json).collect::<Vec<_>>() });
            r.caveats.push(completeness_caveat(&model));
            Ok(r)
        }
        Command::Blowup { surface, out } => {
            let model = resolve_surface(surface)?;
            let blown = model.blow_up()?;
            std::fs::write(out, blown.to_json()).map_err(|e| Fail {
                code: EXIT_IO,
                msg: format!("cannot write '{out}': {e}"),
            })?;
            let mut r = Report::new(&model.name, "blowup");
            r.inputs = json!({ "out": out });
            r.results = json!({
                "name": blown.name,
                "rank": blown.rank(),
                "basis": blown.form.basis_labels(),
                "ample_ref": class(&blown.ample_ref),
                "curves": blown.curves.len(),
            });
            r.caveats.push("curve catalogue of the blow-up is complete only up to degree 0".into());
            Ok(r)
        }
        Command::VerifyPaper => {
            let outcomes = verify::run_all(verify::FULL);
            let mut r = Report::new("bundled", "verify-paper");
            let all = outcomes.iter().all(|o| o.passed);
            r.results = json!({
                "scenarios": outcomes.iter().map(|o| json!({
                    "id": o.id,
                    "name": o.name,
                    "status": if o.passed { "PASS" } else { "FAIL" },
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
                "passed": outcomes.iter().filter(|o| o.passed).count(),
                "total": outcomes.len(),
            });
            if !all {
                r.caveats.push("some scenarios failed".into());
                r.exit = EXIT_INCONSISTENT;
            }
            Ok(r)
        }
    }
}

fn lower_source(s: &LowerSource) -> Value {
    match s {
        LowerSource::Cap => json!({ "kind": "cap" }),
        LowerSource::Curve { label } => json!({ "kind": "curve", "label": label }),
        LowerSource::Pair { cls, mult } => json!({ "kind": "pair", "class": class(cls), "mult": mult }),
    }
}

fn candidate(c: &FibrationCandidate) -> Value {
    json!({
        "class": class(&c.cls),
        "primitive": c.primitive,
        "ray": format!("{:?}", c.ray_type),
        "degree": scalar(&c.degree),
        "fiber_curve": c.fiber_curve,
    })
}

fn cc_json(cc: &CriterionCc) -> Value {
    json!({
        "fires": cc.fires,
        "a_squared": scalar(&cc.a_squared),
        "eps_upper": seshadri_value(&cc.eps_upper),
        "witness": cc.witness.label(),
        "status": format!("{:?}", cc.verdict.status),
        "candidate": cc.candidate.as_ref().map(candidate),
        "note": cc.verdict.caveat,
    })
}

fn c1_json(c1: &C1Report) -> Value {
    json!({
        "holds": c1.violations == 0,
        "violations": c1.violations,
        "has_isotropic_rays": c1.has_isotropic_rays,
        "inconsistent": c1.inconsistent,
    })
}

fn t2_json(t: &T2Report) -> Value {
    json!({
        "applicable": true,
        "overall": serde_json::to_value(&t.overall).expect("case serializes"),
        "witnesses": t.witnesses.iter().map(|w| json!({
            "label": w.label,
            "class": class(&w.cls),
            "mult": w.mult,
            "case": serde_json::to_value(&w.case).expect("case serializes"),
        })).collect::<Vec<_>>(),
        "candidates": t.candidates.iter().map(candidate).collect::<Vec<_>>(),
    })
}

fn row_json(row: &FamilyRow) -> Value {
    json!({
        "n": row.n,
        "class": class(&row.cls),
        "eps_upper": seshadri_value(&row.eps_upper),
        "eps_at_most_one": row.eps_at_most_one,
        "m_lower": scalar(&row.m_lower),
        "m_lower_at_least_n": row.m_lower_at_least_n,
    })
}

fn mx_json(scan: &FamilyScan) -> Value {
    let best = scan.best_member.map(|i| {
        let m = &scan.family[i];
        json!({
            "base": class(&m.base),
            "class": class(&m.cls),
            "witness": m.witness,
            "m_lower": scalar(&m.m_lower),
        })
    });
    json!({
        "members": scan.family.len(),
        "skipped": scan.skipped,
        "best_member": best,
        "best_m_lower": scalar(&scan.best_m_lower),
        "exceeds_two": scan.exceeds_two,
        "linked_candidate": scan.linked_candidate.as_ref().map(candidate),
        "isotropic_rays": scan.isotropic_rays.iter().map(candidate).collect::<Vec<_>>(),
        "family_certificate": scan.family_certificate.as_ref().map(|rows| rows.iter().map(row_json).collect::<Vec<_>>()),
    })
}
