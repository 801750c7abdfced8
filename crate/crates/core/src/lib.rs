//! Exact intersection theory on surfaces: a quartic number field for
//! coordinates, Néron–Severi lattices with their intersection forms, a
//! catalogue of test surfaces, nef/ample cone checks and Seshadri constant
//! bounds with the fibration criteria built on them.

pub mod catalogue;
pub mod cone;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod scalar;

pub use catalogue::{builtin, gamma_class, load, CurveRecord, SurfaceModel, BUILTIN_NAMES};
pub use cone::{
    candidate_for, is_ample, is_big, is_nef, isotropic_nef_rays, ray_rationality, FibrationCandidate, RayType,
    Status, Verdict, Witness,
};
pub use engine::{
    criterion_c1, criterion_cc, criterion_t2, exceptional_filter, m_lower, m_upper, mx_scan, seshadri_estimate,
    seshadri_lower, seshadri_upper, unbounded_family_demo, SeshadriEstimate, SeshadriValue, UpperWitness,
};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, IntersectionForm};
pub use scalar::{approximate, field_op, is_rational, sign, sqrt_embed, Enclosure, FieldOp, Rational, Scalar};
