//! Exact arithmetic in the biquadratic field Q(√2, √3).
//!
//! Every value is stored on the basis (1, √2, √3, √6) with rational
//! coordinates. Coordinates are `BigRational`, which keeps itself reduced, so
//! equality is coordinate equality. Ordering goes through [`Scalar::sign`],
//! which shortcuts exact zeros and rationals and otherwise refines a rigorous
//! interval enclosure until it excludes zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form.
pub type Rational = BigRational;

/// Radicands of the basis elements, in basis order.
pub const RADICANDS: [u32; 4] = [1, 2, 3, 6];

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        Rational::new(n, d)
    } else {
        Rational::from_integer(t.parse().map_err(|_| bad_rational(s))?)
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> Error {
    Error::Parse(format!("not a rational number: '{s}'"))
}

/// Element `c0 + c1·√2 + c2·√3 + c3·√6` of Q(√2, √3).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    c: [Rational; 4],
}

/// The four field operations, for callers that dispatch on an operator tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies one field operation. Division by zero is the only failure.
pub fn field_op(kind: FieldOp, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    match kind {
        FieldOp::Add => Ok(x + y),
        FieldOp::Sub => Ok(x - y),
        FieldOp::Mul => Ok(x * y),
        FieldOp::Div => x.checked_div(y),
    }
}

impl Scalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        Scalar { c: [c0, c1, c2, c3] }
    }

    pub fn from_coords(c: [Rational; 4]) -> Self {
        Scalar { c }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    /// `q·√k` for `k` in {1, 2, 3, 6}.
    pub fn surd(q: Rational, k: u32) -> Self {
        let idx = RADICANDS
            .iter()
            .position(|&r| r == k)
            .unwrap_or_else(|| panic!("radicand {k} is not a basis element"));
        let mut s = Scalar::zero();
        s.c[idx] = q;
        s
    }

    pub fn sqrt2() -> Self {
        Scalar::surd(Rational::one(), 2)
    }

    pub fn sqrt3() -> Self {
        Scalar::surd(Rational::one(), 3)
    }

    pub fn sqrt6() -> Self {
        Scalar::surd(Rational::one(), 6)
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when there is no irrational part.
    pub fn to_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.c[0])
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] * q),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Multiplicative inverse, by solving `self · z = 1` with the 4×4
    /// multiplication matrix of `self`.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Scalar::from_rational(r.recip()));
        }
        let [y0, y1, y2, y3] = &self.c;
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        // Row i gives coordinate i of self·z as a linear form in z.
        let mut m: Vec<Vec<Rational>> = vec![
            vec![y0.clone(), &two * y1, &three * y2, &six * y3, Rational::one()],
            vec![y1.clone(), y0.clone(), &three * y3, &three * y2, Rational::zero()],
            vec![y2.clone(), &two * y3, y0.clone(), &two * y1, Rational::zero()],
            vec![y3.clone(), y2.clone(), y1.clone(), y0.clone(), Rational::zero()],
        ];
        solve_augmented(&mut m).ok_or(Error::DivisionByZero)?;
        Ok(Scalar {
            c: std::array::from_fn(|i| m[i][4].clone()),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inverse()?)
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return signum(&self.c[0]);
        }
        let mut bits = 64;
        loop {
            let enc = approximate(self, bits);
            if enc.lo.is_positive() {
                return 1;
            }
            if enc.hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating-point value for display and heuristics; never used for decisions.
    pub fn to_f64(&self) -> f64 {
        let enc = approximate(self, 64);
        let mid = (enc.lo + enc.hi) / rat(2, 1);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// The four coordinates as rational strings, in basis order.
    pub fn to_strings(&self) -> [String; 4] {
        std::array::from_fn(|i| self.c[i].to_string())
    }
}

fn signum(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Gauss–Jordan on an n×(n+1) augmented matrix. Returns `None` when singular;
/// on success the last column holds the solution.
pub(crate) fn solve_augmented(m: &mut [Vec<Rational>]) -> Option<()> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pivot_row, row) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    Some(())
}

/// Returns whether `q²·k = r` has a solution with `k ∈ {1,2,3,6}`, and if so
/// the non-negative root as a [`Scalar`].
pub fn sqrt_embed(r: &Rational) -> Result<Scalar> {
    if r.is_negative() {
        return Err(Error::NegativeInput);
    }
    if r.is_zero() {
        return Ok(Scalar::zero());
    }
    // √(p/q) = √(p·q) / q
    let den = r.denom().clone();
    let mut n = r.numer() * &den;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let mut e2 = 0u32;
    while (&n % &two).is_zero() {
        n /= &two;
        e2 += 1;
    }
    let mut e3 = 0u32;
    while (&n % &three).is_zero() {
        n /= &three;
        e3 += 1;
    }
    let s = n.sqrt();
    if &s * &s != n {
        return Err(Error::NotRepresentable(r.to_string()));
    }
    let root = s * two.pow(e2 / 2) * three.pow(e3 / 2);
    let k = 2u32.pow(e2 % 2) * 3u32.pow(e3 % 2);
    Ok(Scalar::surd(Rational::new(root, den), k))
}

/// A closed rational interval known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Outward-rounded decimal endpoints with `places` fractional digits.
    pub fn to_decimals(&self, places: usize) -> (String, String) {
        (
            decimal_string(&self.lo, places, false),
            decimal_string(&self.hi, places, true),
        )
    }
}

/// Fractional digits that keep decimal rendering inside the width guarantee
/// of [`approximate`] at `bits` bits.
pub fn decimal_places_for_bits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// Renders `r` with `places` fractional digits, rounding down (or up).
pub fn decimal_string(r: &Rational, places: usize, round_up: bool) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = r * Rational::from_integer(scale);
    let int = if round_up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let negative = int.sign() == Sign::Minus;
    let digits = int.magnitude().to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (whole, frac) = digits.split_at(digits.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

/// Bits of the cached roots; lower precisions are obtained by shifting.
const CACHED_SQRT_BITS: u32 = 1024;

/// `⌊√k · 2^prec⌋` for `k ∈ {2, 3, 6}`.
fn sqrt_floor_scaled(k: u32, prec: u32) -> BigInt {
    static CACHE: OnceLock<[BigInt; 3]> = OnceLock::new();
    if prec > CACHED_SQRT_BITS {
        return (BigInt::from(k) << (2 * prec)).sqrt();
    }
    let roots = CACHE.get_or_init(|| [2u32, 3, 6].map(|k| (BigInt::from(k) << (2 * CACHED_SQRT_BITS)).sqrt()));
    let idx = match k {
        2 => 0,
        3 => 1,
        _ => 2,
    };
    // ⌊⌊x·2^N⌋ / 2^(N−p)⌋ = ⌊x·2^p⌋
    &roots[idx] >> (CACHED_SQRT_BITS - prec)
}

fn bit_length(r: &Rational) -> u32 {
    let ceil = r.abs().ceil().to_integer();
    u32::try_from(ceil.bits()).unwrap_or(u32::MAX)
}

/// Rigorous enclosure of `x` of width at most `2^(1−bits)·max(1, |x|)`.
pub fn approximate(x: &Scalar, bits: u32) -> Enclosure {
    debug_assert!(bits >= 16, "approximate needs at least 16 bits");
    let bits = bits.max(16);
    let c = x.coords();
    if x.is_rational() {
        return Enclosure {
            lo: c[0].clone(),
            hi: c[0].clone(),
        };
    }
    let mass: Rational = c[1..].iter().map(|q| q.abs()).sum();
    let prec = bits + bit_length(&mass) + 1;
    // Work over the common denominator L·2^prec so only the endpoints
    // get reduced.
    let l = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let num = |q: &Rational| q.numer() * (&l / q.denom());
    let base = num(&c[0]) << prec;
    let mut lo = base.clone();
    let mut hi = base;
    for (q, &k) in c.iter().zip(RADICANDS.iter()).skip(1) {
        if q.is_zero() {
            continue;
        }
        let n = num(q);
        let s = sqrt_floor_scaled(k, prec);
        if n.is_positive() {
            lo += &n * &s;
            hi += &n * (&s + 1u32);
        } else {
            lo += &n * (&s + 1u32);
            hi += &n * &s;
        }
    }
    let den = l << prec;
    Enclosure {
        lo: Rational::new(lo, den.clone()),
        hi: Rational::new(hi, den),
    }
}

/// Free-function form of [`Scalar::sign`].
pub fn sign(x: &Scalar) -> i8 {
    x.sign()
}

/// Free-function form of [`Scalar::is_rational`].
pub fn is_rational(x: &Scalar) -> bool {
    x.is_rational()
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.c[0].cmp(&other.c[0]);
        }
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_rational() {
            return rhs.scale(&self.c[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.c[0]);
        }
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &rhs.c;
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        // √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2
        let r0 = a0 * b0 + &two * a1 * b1 + &three * a2 * b2 + &six * a3 * b3;
        let r1 = a0 * b1 + a1 * b0 + &three * (a2 * b3 + a3 * b2);
        let r2 = a0 * b2 + a2 * b0 + &two * (a1 * b3 + a3 * b1);
        let r3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        Scalar::new(r0, r1, r2, r3)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

/// Human-readable form, e.g. `-3*sqrt2 + 3*sqrt3`. Accepted back by `FromStr`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, &k) in self.c.iter().zip(RADICANDS.iter()) {
            if q.is_zero() {
                continue;
            }
            let mag = q.abs();
            if first {
                if q.is_negative() {
                    write!(f, "-")?;
                }
            } else if q.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (1, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "sqrt{k}")?,
                (_, false) => write!(f, "{mag}*sqrt{k}")?,
            }
        }
        Ok(())
    }
}

/// Parses sums of terms such as `2sqrt3 - 3*sqrt2`, `1/2*√6` or `7/3`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut out = Scalar::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            let (coef, k) = match body.find("sqrt").map(|p| (p, 4)).or_else(|| body.find('√').map(|p| (p, '√'.len_utf8()))) {
                Some((pos, len)) => {
                    let coef = body[..pos].trim_end_matches('*');
                    let k: u32 = body[pos + len..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radicand in '{s}'")))?;
                    if !RADICANDS[1..].contains(&k) {
                        return Err(Error::Parse(format!(
                            "radicand {k} outside Q(sqrt2, sqrt3) basis in '{s}'"
                        )));
                    }
                    let coef = if coef.is_empty() { Rational::one() } else { parse_rational(coef)? };
                    (coef, k)
                }
                None => (parse_rational(body)?, 1),
            };
            let coef = if negative { -coef } else { coef };
            out += &Scalar::surd(coef, k);
        }
        Ok(out)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for q in &self.c {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;

        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a rational string or an array of four rational strings")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_rational(Rational::from_integer(v.into())))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Scalar, A::Error> {
                let mut c: [Rational; 4] = Default::default();
                for (i, slot) in c.iter_mut().enumerate() {
                    let s: String = seq
                        .next_element()?
                        .ok_or_else(|| de::Error::invalid_length(i, &self))?;
                    *slot = parse_rational(&s).map_err(|e| de::Error::custom(e.to_string()))?;
                }
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(5, &self));
                }
                Ok(Scalar::from_coords(c))
            }
        }

        deserializer.deserialize_any(ScalarVisitor)
    }
}
