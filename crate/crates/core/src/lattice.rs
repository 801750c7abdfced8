//! Divisor classes and the intersection pairing on a Néron–Severi lattice.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Coordinates of a (real) divisor class over the basis of a form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    pub coords: Vec<Scalar>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Scalar>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        DivisorClass::new(v.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass::new(vec![Scalar::zero(); rank])
    }

    /// The i-th basis vector of a rank-`rank` lattice.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut d = DivisorClass::zero(rank);
        d.coords[i] = Scalar::one();
        d
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Whether every coordinate is rational.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(Scalar::is_rational)
    }

    /// Integer coordinates, when every coordinate is an integer that fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coords
            .iter()
            .map(|c| c.to_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64()))
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn scale_rational(&self, q: &Rational) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|c| c.scale(q)).collect())
    }

    /// Appends a zero coordinate (pull-back to a blow-up).
    pub fn extend_zero(&self) -> DivisorClass {
        let mut coords = self.coords.clone();
        coords.push(Scalar::zero());
        DivisorClass::new(coords)
    }

    fn check_same_rank(&self, other: &DivisorClass) {
        assert_eq!(self.rank(), other.rank(), "divisor classes of different rank");
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.check_same_rank(rhs);
        DivisorClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.check_same_rank(rhs);
        DivisorClass::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Symmetric intersection pairing on a lattice of rank ρ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    basis_labels: Vec<String>,
    gram: Vec<Vec<Scalar>>,
}

impl IntersectionForm {
    /// Checks shape and exact symmetry. The signature is checked separately
    /// by [`IntersectionForm::verify_signature`].
    pub fn new(basis_labels: Vec<String>, gram: Vec<Vec<Scalar>>) -> Result<Self> {
        let rank = basis_labels.len();
        if rank == 0 {
            return Err(Error::validation("rank must be positive", "basis"));
        }
        if gram.len() != rank {
            return Err(Error::validation(
                format!("gram must have {rank} rows"),
                format!("gram ({} rows)", gram.len()),
            ));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::validation(
                    format!("gram rows must have {rank} entries"),
                    format!("gram[{i}]"),
                ));
            }
        }
        for i in 0..rank {
            for j in (i + 1)..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::validation(
                        "gram must be symmetric",
                        format!("gram[{i}][{j}] != gram[{j}][{i}]"),
                    ));
                }
            }
        }
        Ok(IntersectionForm { basis_labels, gram })
    }

    /// Convenience constructor from an integer matrix.
    pub fn from_ints(labels: &[&str], gram: &[&[i64]]) -> Result<Self> {
        IntersectionForm::new(
            labels.iter().map(|s| s.to_string()).collect(),
            gram.iter()
                .map(|row| row.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    /// The gram matrix as machine integers, when all entries are integral.
    pub fn int_gram(&self) -> Option<Vec<Vec<i64>>> {
        self.gram
            .iter()
            .map(|row| DivisorClass::new(row.clone()).to_ints())
            .collect()
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<()> {
        if d.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: d.rank(),
            });
        }
        Ok(())
    }

    /// `gram · d`, so that `pair(c, d) = c · (gram · d)` for any c.
    pub fn dual(&self, d: &DivisorClass) -> Result<Vec<Scalar>> {
        self.check_rank(d)?;
        Ok(self
            .gram
            .iter()
            .map(|row| row.iter().zip(&d.coords).map(|(g, x)| g * x).sum())
            .collect())
    }

    pub fn pair(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<Scalar> {
        self.check_rank(d1)?;
        let dual = self.dual(d2)?;
        Ok(d1.coords.iter().zip(&dual).map(|(x, y)| x * y).sum())
    }

    pub fn self_int(&self, d: &DivisorClass) -> Result<Scalar> {
        self.pair(d, d)
    }

    /// Counts of positive and negative diagonal entries after exact symmetric
    /// elimination by congruence. A zero pivot that cannot be repaired means
    /// the form is singular.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let n = self.rank();
        let mut m: Vec<Vec<Scalar>> = self.gram.clone();
        let mut pos = 0;
        let mut neg = 0;
        for k in 0..n {
            if m[k][k].is_zero() {
                if let Some(j) = ((k + 1)..n).find(|&j| !m[j][j].is_zero()) {
                    swap_sym(&mut m, k, j);
                } else if let Some(j) = ((k + 1)..n).find(|&j| !m[k][j].is_zero()) {
                    // e_k ← e_k + e_j makes the pivot 2·m[k][j] ≠ 0
                    add_sym(&mut m, k, j);
                } else {
                    return Err(Error::Degenerate);
                }
            }
            let pivot = m[k][k].clone();
            match pivot.sign() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => unreachable!("pivot repaired above"),
            }
            let inv = pivot.inverse()?;
            for i in (k + 1)..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = &m[i][k] * &inv;
                for j in k..n {
                    let delta = &f * &m[k][j];
                    m[i][j] -= &delta;
                }
                for j in k..n {
                    let delta = &f * &m[j][k];
                    m[j][i] -= &delta;
                }
            }
        }
        Ok((pos, neg))
    }

    /// True iff the signature is (1, ρ−1).
    pub fn verify_signature(&self) -> Result<bool> {
        let (pos, neg) = self.signature()?;
        Ok(pos == 1 && neg == self.rank() - 1)
    }

    /// Squared index inequality `(a·d)² ≥ a²·d²`; requires `a² > 0`.
    pub fn hodge_check(&self, a: &DivisorClass, d: &DivisorClass) -> Result<bool> {
        let aa = self.self_int(a)?;
        if !aa.is_positive() {
            return Err(Error::precondition("hodge_check needs a² > 0"));
        }
        let ad = self.pair(a, d)?;
        let dd = self.self_int(d)?;
        Ok(ad.square() >= &aa * &dd)
    }

    /// Orthogonal extension by a class `E` with `E² = −1`.
    pub fn blow_up_form(&self) -> Result<IntersectionForm> {
        if !self.verify_signature()? {
            return Err(Error::precondition("blow-up needs a signature (1, ρ−1) form"));
        }
        let n = self.rank();
        let mut gram: Vec<Vec<Scalar>> = self
            .gram
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(Scalar::zero());
                r
            })
            .collect();
        let mut last = vec![Scalar::zero(); n];
        last.push(Scalar::from_int(-1));
        gram.push(last);
        let mut labels = self.basis_labels.clone();
        let mut label = "E".to_string();
        while labels.contains(&label) {
            label.push('\'');
        }
        labels.push(label);
        IntersectionForm::new(labels, gram)
    }
}

fn swap_sym(m: &mut [Vec<Scalar>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn add_sym(m: &mut [Vec<Scalar>], target: usize, src: usize) {
    let n = m.len();
    for j in 0..n {
        let v = m[src][j].clone();
        m[target][j] += &v;
    }
    for i in 0..n {
        let v = m[i][src].clone();
        m[i][target] += &v;
    }
}
