//! Surface models: a lattice, its intersection form, and a catalogue of known
//! curve classes together with declared ample and very ample references.
//!
//! A very general point is not a data object. A curve record says how its
//! family meets such a point through `mult_eta` (multiplicity of the member
//! through the point) and `moving` (whether the family covers the surface).
//! Records with `moving = false` take part in positivity tests but never in
//! very-general-point computations.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionForm};
use crate::scalar::Scalar;

pub const BUILTIN_NAMES: [&str; 4] = ["P2", "C1xC2", "ExE", "P2-blowup"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    pub cls: DivisorClass,
    pub mult_eta: u32,
    pub irreducible: bool,
    pub moving: bool,
}

impl CurveRecord {
    pub fn new(label: impl Into<String>, cls: DivisorClass, mult_eta: u32, moving: bool) -> Self {
        CurveRecord {
            label: label.into(),
            cls,
            mult_eta,
            irreducible: true,
            moving,
        }
    }

    /// Record-level invariants against a form.
    pub fn validate(&self, form: &IntersectionForm, location: &str) -> Result<()> {
        if self.cls.rank() != form.rank() {
            return Err(Error::validation(
                format!("curve class must have {} coordinates", form.rank()),
                location,
            ));
        }
        if self.mult_eta < 1 {
            return Err(Error::validation("mult_eta must be at least 1", location));
        }
        if self.cls.is_zero() {
            return Err(Error::validation("curve class must be nonzero", location));
        }
        if self.moving {
            let m = i64::from(self.mult_eta);
            let sq = form.self_int(&self.cls)?;
            if sq < Scalar::from_int(m * (m - 1)) {
                return Err(Error::validation(
                    format!(
                        "a moving curve of multiplicity m at a very general point needs C² ≥ m(m−1); \
                         here C² = {sq} < {}",
                        m * (m - 1)
                    ),
                    location,
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub form: IntersectionForm,
    pub curves: Vec<CurveRecord>,
    pub ample_ref: DivisorClass,
    pub very_ample_ref: DivisorClass,
    /// Every irreducible curve through a very general point whose degree
    /// against `ample_ref` is at most this bound appears in `curves`.
    pub catalogue_complete_up_to: Scalar,
}

impl SurfaceModel {
    /// Validates every model invariant, including the signature of the form.
    pub fn new(
        name: impl Into<String>,
        form: IntersectionForm,
        curves: Vec<CurveRecord>,
        ample_ref: DivisorClass,
        very_ample_ref: DivisorClass,
        catalogue_complete_up_to: Scalar,
    ) -> Result<Self> {
        let model = SurfaceModel {
            name: name.into(),
            form,
            curves,
            ample_ref,
            very_ample_ref,
            catalogue_complete_up_to,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match self.form.verify_signature() {
            Ok(true) => {}
            Ok(false) => {
                let (p, n) = self.form.signature()?;
                return Err(Error::validation(
                    format!("intersection form must have signature (1, ρ−1), found ({p}, {n})"),
                    "gram",
                ));
            }
            Err(Error::Degenerate) => {
                return Err(Error::validation("intersection form must be nondegenerate", "gram"))
            }
            Err(e) => return Err(e),
        }
        let rank = self.form.rank();
        for (what, d) in [("ample_ref", &self.ample_ref), ("very_ample_ref", &self.very_ample_ref)] {
            if d.rank() != rank {
                return Err(Error::validation(format!("class must have {rank} coordinates"), what));
            }
        }
        if !self.form.self_int(&self.ample_ref)?.is_positive() {
            return Err(Error::validation("ample_ref² > 0", "ample_ref"));
        }
        let diff = &self.very_ample_ref - &self.ample_ref;
        for (i, c) in self.curves.iter().enumerate() {
            let loc = format!("curves[{i}] ({})", c.label);
            c.validate(&self.form, &loc)?;
            if !self.form.pair(&self.ample_ref, &c.cls)?.is_positive() {
                return Err(Error::validation("ample_ref · C > 0 for every catalogued curve", loc));
            }
            if self.form.pair(&diff, &c.cls)?.is_negative() {
                return Err(Error::validation(
                    "(very_ample_ref − ample_ref) · C ≥ 0 for every catalogued curve",
                    loc,
                ));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// Curves whose families pass through a very general point.
    pub fn moving_curves(&self) -> impl Iterator<Item = &CurveRecord> {
        self.curves.iter().filter(|c| c.moving)
    }

    pub fn curve(&self, label: &str) -> Option<&CurveRecord> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Scalar> {
        self.form.pair(a, b)
    }

    pub fn self_int(&self, a: &DivisorClass) -> Result<Scalar> {
        self.form.self_int(a)
    }

    /// Degree against the ample reference.
    pub fn degree(&self, d: &DivisorClass) -> Result<Scalar> {
        self.form.pair(d, &self.ample_ref)
    }

    /// Returns a new model with `record` appended.
    pub fn add_curve(&self, record: CurveRecord) -> Result<SurfaceModel> {
        let mut curves = self.curves.clone();
        curves.push(record);
        SurfaceModel::new(
            self.name.clone(),
            self.form.clone(),
            curves,
            self.ample_ref.clone(),
            self.very_ample_ref.clone(),
            self.catalogue_complete_up_to.clone(),
        )
    }

    /// Blow-up at a very general point. Old curves pull back unchanged (their
    /// general members avoid the centre); the exceptional curve is added as a
    /// non-moving record. The ample reference becomes `2A − E` and the
    /// completeness bound drops to zero, since curves through the centre are
    /// not catalogued.
    pub fn blow_up(&self) -> Result<SurfaceModel> {
        let form = self.form.blow_up_form()?;
        let rank = form.rank();
        let mut curves: Vec<CurveRecord> = self
            .curves
            .iter()
            .map(|c| CurveRecord {
                cls: c.cls.extend_zero(),
                ..c.clone()
            })
            .collect();
        let e = DivisorClass::basis(rank, rank - 1);
        let e_label = form.basis_labels()[rank - 1].clone();
        curves.push(CurveRecord::new(e_label, e.clone(), 1, false));
        let ample = self.ample_ref.extend_zero();
        let ample_ref = &ample.scale(&Scalar::from_int(2)) - &e;
        let very_ample_ref = &(&self.very_ample_ref.extend_zero() + &ample) - &e;
        SurfaceModel::new(
            format!("{}-blowup", self.name),
            form,
            curves,
            ample_ref,
            very_ample_ref,
            Scalar::zero(),
        )
    }

    pub fn to_file(&self) -> SurfaceFile {
        SurfaceFile {
            name: self.name.clone(),
            rank: self.rank(),
            basis: self.form.basis_labels().to_vec(),
            gram: self.form.gram().to_vec(),
            curves: self.curves.clone(),
            ample_ref: self.ample_ref.clone(),
            very_ample_ref: self.very_ample_ref.clone(),
            complete_up_to: self.catalogue_complete_up_to.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("surface serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<SurfaceModel> {
        let file: SurfaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_model()
    }
}

/// On-disk surface description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub name: String,
    pub rank: usize,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Scalar>>,
    pub curves: Vec<CurveRecord>,
    pub ample_ref: DivisorClass,
    pub very_ample_ref: DivisorClass,
    pub complete_up_to: Scalar,
}

impl SurfaceFile {
    pub fn into_model(self) -> Result<SurfaceModel> {
        if self.rank != self.basis.len() {
            return Err(Error::validation(
                format!("rank {} must equal the number of basis labels", self.rank),
                "rank",
            ));
        }
        let form = IntersectionForm::new(self.basis, self.gram)?;
        SurfaceModel::new(
            self.name,
            form,
            self.curves,
            self.ample_ref,
            self.very_ample_ref,
            self.complete_up_to,
        )
    }
}

/// Reads and validates a surface file.
pub fn load(path: impl AsRef<Path>) -> Result<SurfaceModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    SurfaceModel::from_json(&text)
}

/// Shipped fixture text for a builtin name.
pub fn fixture_json(name: &str) -> Option<&'static str> {
    match name {
        "P2" => Some(include_str!("../fixtures/p2.surface.json")),
        "C1xC2" => Some(include_str!("../fixtures/c1xc2.surface.json")),
        "ExE" => Some(include_str!("../fixtures/exe.surface.json")),
        "P2-blowup" => Some(include_str!("../fixtures/p2blowup.surface.json")),
        _ => None,
    }
}

fn curve(label: &str, v: &[i64]) -> CurveRecord {
    CurveRecord::new(label, DivisorClass::from_ints(v), 1, true)
}

pub fn builtin(name: &str) -> Result<SurfaceModel> {
    let ints = DivisorClass::from_ints;
    match name {
        "P2" => SurfaceModel::new(
            "P2",
            IntersectionForm::from_ints(&["H"], &[&[1]])?,
            vec![curve("line", &[1])],
            ints(&[1]),
            ints(&[3]),
            Scalar::from_int(3),
        ),
        "C1xC2" => SurfaceModel::new(
            "C1xC2",
            IntersectionForm::from_ints(&["F1", "F2"], &[&[0, 1], &[1, 0]])?,
            vec![curve("F1", &[1, 0]), curve("F2", &[0, 1])],
            ints(&[1, 1]),
            ints(&[3, 3]),
            Scalar::from_int(2),
        ),
        "ExE" => SurfaceModel::new(
            "ExE",
            IntersectionForm::from_ints(&["F1", "F2", "Delta"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])?,
            vec![curve("F1", &[1, 0, 0]), curve("F2", &[0, 1, 0]), curve("Delta", &[0, 0, 1])],
            ints(&[1, 1, 0]),
            ints(&[1, 1, 1]),
            Scalar::from_int(1),
        ),
        "P2-blowup" => {
            let form = IntersectionForm::from_ints(&["H"], &[&[1]])?.blow_up_form()?;
            SurfaceModel::new(
                "P2-blowup",
                form,
                vec![
                    curve("line-through-point", &[1, -1]),
                    curve("line", &[1, 0]),
                    CurveRecord::new("exceptional", ints(&[0, 1]), 1, false),
                ],
                ints(&[2, -1]),
                ints(&[3, -1]),
                Scalar::from_int(2),
            )
        }
        other => Err(Error::UnknownSurface(other.to_string())),
    }
}

/// Class of a fibre of `(x, y) ↦ m·x − y` on E×E, in the basis (F1, F2, Δ).
///
/// It is the unique class with `Γ·F1 = 1`, `Γ·F2 = m²` and `Γ·Δ = (m−1)²`,
/// namely `m(m−1)·F1 + (1−m)·F2 + m·Δ`.
pub fn gamma_class(m: u64) -> Result<DivisorClass> {
    if m == 0 {
        return Err(Error::precondition("gamma_class needs m ≥ 1"));
    }
    let m = i64::try_from(m).map_err(|_| Error::precondition("m too large"))?;
    Ok(DivisorClass::from_ints(&[m * (m - 1), 1 - m, m]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate_and_match_fixtures() {
        for name in BUILTIN_NAMES {
            let b = builtin(name).unwrap();
            b.validate().unwrap();
            let from_fixture = SurfaceModel::from_json(fixture_json(name).unwrap()).unwrap();
            assert_eq!(from_fixture, b, "fixture for {name}");
            assert_eq!(SurfaceModel::from_json(&b.to_json()).unwrap(), b);
        }
        assert!(matches!(builtin("K3"), Err(Error::UnknownSurface(_))));
    }

    #[test]
    fn builtin_pairings() {
        let exe = builtin("ExE").unwrap();
        assert_eq!(
            exe.form,
            IntersectionForm::from_ints(&["F1", "F2", "Delta"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap()
        );
        let c = builtin("C1xC2").unwrap();
        assert_eq!(c.pair(&c.curves[0].cls, &c.curves[1].cls).unwrap(), Scalar::one());
        let b = builtin("P2-blowup").unwrap();
        assert!(b.self_int(&DivisorClass::from_ints(&[1, -1])).unwrap().is_zero());
    }

    #[test]
    fn gamma_small_cases() {
        assert_eq!(gamma_class(1).unwrap(), DivisorClass::from_ints(&[0, 0, 1]));
        assert_eq!(gamma_class(2).unwrap(), DivisorClass::from_ints(&[2, -1, 2]));
        let exe = builtin("ExE").unwrap();
        assert!(exe.self_int(&gamma_class(2).unwrap()).unwrap().is_zero());
        assert!(gamma_class(0).is_err());
    }

    #[test]
    fn add_curve_checks() {
        let exe = builtin("ExE").unwrap();
        let g2 = CurveRecord::new("Gamma2", gamma_class(2).unwrap(), 1, true);
        let grown = exe.add_curve(g2).unwrap();
        assert_eq!(grown.curves.len(), 4);
        assert_eq!(grown.catalogue_complete_up_to, exe.catalogue_complete_up_to);

        let bad = CurveRecord::new("Delta2", DivisorClass::from_ints(&[0, 0, 1]), 2, true);
        let err = exe.add_curve(bad).unwrap_err();
        match err {
            Error::Validation { invariant, location } => {
                assert!(invariant.contains("C² ≥ m(m−1)"), "{invariant}");
                assert!(location.contains("Delta2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let zero = CurveRecord::new("zero", DivisorClass::zero(3), 1, true);
        assert!(exe.add_curve(zero).is_err());
    }

    #[test]
    fn generic_blow_up_is_valid() {
        for name in BUILTIN_NAMES {
            let m = builtin(name).unwrap().blow_up().unwrap();
            assert_eq!(m.rank(), builtin(name).unwrap().rank() + 1);
            assert!(!m.curves.last().unwrap().moving);
        }
    }

    #[test]
    fn asymmetric_file_rejected() {
        let text = fixture_json("C1xC2").unwrap().replacen("\"1\"", "\"2\"", 1);
        let err = SurfaceModel::from_json(&text).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }), "{err:?}");
    }
}
