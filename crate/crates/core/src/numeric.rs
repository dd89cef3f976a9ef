//! Number types for walk counts and betweenness scores.
//!
//! [`Exact`] uses arbitrary-precision integers and rationals. [`Fast`] uses
//! checked `u128` counts and `f64` scores and reports overflow as an error.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Numeric: Send + Sync + 'static {
    type Count: Clone + fmt::Debug + PartialEq + Send + Sync;
    type Score: Clone + fmt::Debug + PartialEq + Send + Sync;
    const MODE: Mode;

    fn zero_count() -> Self::Count;
    fn one() -> Self::Count;
    fn is_zero(c: &Self::Count) -> bool;
    fn add_count(acc: &mut Self::Count, x: &Self::Count) -> Result<()>;
    /// `acc -= x`, with `x <= acc`.
    fn sub_count(acc: &mut Self::Count, x: &Self::Count);

    fn zero_score() -> Self::Score;
    fn add_score(acc: &mut Self::Score, x: &Self::Score);
    fn sub_score(acc: &mut Self::Score, x: &Self::Score);
    fn sub_one(acc: &mut Self::Score);
    /// `num / den` for `den > 0`.
    fn fraction(num: &Self::Count, den: &Self::Count) -> Self::Score;
    /// `s / den` for `den > 0`.
    fn divide(s: &Self::Score, den: &Self::Count) -> Self::Score;
    /// `c * s`
    fn scale(c: &Self::Count, s: &Self::Score) -> Self::Score;

    fn count_value(c: &Self::Count) -> BigUint;
    fn collect(scores: Vec<Self::Score>) -> Scores;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Exact,
    Fast,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Fast => "fast",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "fast" => Ok(Mode::Fast),
            _ => Err(Error::Config(format!("unknown mode {s:?} (expected exact or fast)"))),
        }
    }
}

pub struct Exact;
pub struct Fast;

impl Numeric for Exact {
    type Count = BigUint;
    type Score = BigRational;
    const MODE: Mode = Mode::Exact;

    fn zero_count() -> BigUint {
        BigUint::zero()
    }
    fn one() -> BigUint {
        BigUint::from(1u8)
    }
    #[inline]
    fn is_zero(c: &BigUint) -> bool {
        c.is_zero()
    }
    #[inline]
    fn add_count(acc: &mut BigUint, x: &BigUint) -> Result<()> {
        *acc += x;
        Ok(())
    }
    #[inline]
    fn sub_count(acc: &mut BigUint, x: &BigUint) {
        *acc -= x;
    }

    fn zero_score() -> BigRational {
        BigRational::zero()
    }
    fn add_score(acc: &mut BigRational, x: &BigRational) {
        if !x.is_zero() {
            *acc += x;
        }
    }
    fn sub_score(acc: &mut BigRational, x: &BigRational) {
        if !x.is_zero() {
            *acc -= x;
        }
    }
    fn sub_one(acc: &mut BigRational) {
        *acc -= BigRational::from_integer(BigInt::from(1));
    }
    fn fraction(num: &BigUint, den: &BigUint) -> BigRational {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }
    fn divide(s: &BigRational, den: &BigUint) -> BigRational {
        if s.is_zero() {
            return BigRational::zero();
        }
        s / BigInt::from(den.clone())
    }
    fn scale(c: &BigUint, s: &BigRational) -> BigRational {
        if s.is_zero() {
            return BigRational::zero();
        }
        s * BigInt::from(c.clone())
    }

    fn count_value(c: &BigUint) -> BigUint {
        c.clone()
    }
    fn collect(scores: Vec<BigRational>) -> Scores {
        Scores::Exact(scores)
    }
}

impl Numeric for Fast {
    type Count = u128;
    type Score = f64;
    const MODE: Mode = Mode::Fast;

    fn zero_count() -> u128 {
        0
    }
    fn one() -> u128 {
        1
    }
    #[inline]
    fn is_zero(c: &u128) -> bool {
        *c == 0
    }
    #[inline]
    fn add_count(acc: &mut u128, x: &u128) -> Result<()> {
        *acc = acc.checked_add(*x).ok_or(Error::Overflow("walk count exceeds 128 bits"))?;
        Ok(())
    }
    #[inline]
    fn sub_count(acc: &mut u128, x: &u128) {
        *acc -= *x;
    }

    fn zero_score() -> f64 {
        0.0
    }
    #[inline]
    fn add_score(acc: &mut f64, x: &f64) {
        *acc += *x;
    }
    #[inline]
    fn sub_score(acc: &mut f64, x: &f64) {
        *acc -= *x;
    }
    fn sub_one(acc: &mut f64) {
        *acc -= 1.0;
    }
    #[inline]
    fn fraction(num: &u128, den: &u128) -> f64 {
        *num as f64 / *den as f64
    }
    #[inline]
    fn divide(s: &f64, den: &u128) -> f64 {
        *s / *den as f64
    }
    #[inline]
    fn scale(c: &u128, s: &f64) -> f64 {
        *c as f64 * *s
    }

    fn count_value(c: &u128) -> BigUint {
        BigUint::from(*c)
    }
    fn collect(scores: Vec<f64>) -> Scores {
        Scores::Fast(scores)
    }
}

/// A score vector in either numeric mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Scores {
    Exact(Vec<BigRational>),
    Fast(Vec<f64>),
}

impl Scores {
    pub fn len(&self) -> usize {
        match self {
            Scores::Exact(v) => v.len(),
            Scores::Fast(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scores::Exact(_) => Mode::Exact,
            Scores::Fast(_) => Mode::Fast,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Scores::Exact(v) => v.iter().map(rational_to_f64).collect(),
            Scores::Fast(v) => v.clone(),
        }
    }

    /// The exact values; `None` in fast mode.
    pub fn exact(&self) -> Option<&[BigRational]> {
        match self {
            Scores::Exact(v) => Some(v),
            Scores::Fast(_) => None,
        }
    }

    /// Formats entry `i` for CSV output.
    pub fn format(&self, i: usize) -> String {
        match self {
            Scores::Exact(v) => format_rational(&v[i]),
            Scores::Fast(v) => format_fixed(v[i]),
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` for non-integers, `p` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed point with 12 decimals; negative zero printed as zero.
pub fn format_fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Parses `p`, `p/q` or a decimal number into a rational.
pub fn parse_score(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Some(BigRational::from_integer(p));
    }
    let x: f64 = s.parse().ok()?;
    BigRational::from_float(x)
}
