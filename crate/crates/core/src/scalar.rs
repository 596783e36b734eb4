//! Arithmetic backends.
//!
//! Every model type is generic over [`Scalar`]. Two backends exist: `f64`,
//! where comparisons take an explicit slack, and [`Rational`], arbitrary
//! precision fractions where every comparison is exact and slack is ignored.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact arbitrary-precision fraction.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Float,
    Rational,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Rational => "rational",
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown mode {0:?} (expected rational or float)")]
pub struct UnknownMode(pub String);

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            _ => Err(UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("not a number: {0:?} (expected a decimal or a fraction a/b)")]
pub struct ParseNumberError(pub String);

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const MODE: Mode;

    fn from_frac(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_frac(n, 1)
    }

    fn to_f64(&self) -> f64;

    /// Parses a decimal (`0.25`, `-3`, `1e-3`) or a fraction (`9/13`).
    /// Decimals are read exactly in rational mode.
    fn parse(s: &str) -> Result<Self, ParseNumberError>;

    /// Canonical text form: reduced `a/b` (or `a`) for rationals, shortest
    /// round-trip decimal for floats.
    fn format(&self) -> String;

    /// `self >= other - slack`; the slack is ignored by exact backends.
    fn ge_tol(&self, other: &Self, slack: f64) -> bool;

    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.clone() * b.clone();
    }

    fn div_assign_by(&mut self, d: &Self) {
        *self = self.clone() / d.clone();
    }

    fn approx_eq(&self, other: &Self, slack: f64) -> bool {
        self.ge_tol(other, slack) && other.ge_tol(self, slack)
    }

    fn is_exact() -> bool {
        Self::MODE == Mode::Rational
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(s: &str) -> Result<Self, ParseNumberError> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| ParseNumberError(s.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| ParseNumberError(s.into()))?;
            if d == 0.0 {
                return Err(ParseNumberError(s.into()));
            }
            return Ok(n / d);
        }
        let x: f64 = s.parse().map_err(|_| ParseNumberError(s.into()))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(ParseNumberError(s.into()))
        }
    }

    fn format(&self) -> String {
        format!("{self}")
    }

    fn ge_tol(&self, other: &Self, slack: f64) -> bool {
        *self >= *other - slack
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Rational;

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn div_assign_by(&mut self, d: &Self) {
        *self /= d;
    }

    fn from_frac(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse(s: &str) -> Result<Self, ParseNumberError> {
        let s = s.trim();
        let err = || ParseNumberError(s.into());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::new(n, d));
        }
        parse_decimal(s).ok_or_else(err)
    }

    fn format(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn ge_tol(&self, other: &Self, _slack: f64) -> bool {
        self >= other
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Exact decimal parse: `[-+]digits[.digits][e[-+]digits]`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(all);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -value } else { value })
}

pub(crate) fn sum<T: Scalar>(iter: impl IntoIterator<Item = T>) -> T {
    iter.into_iter().fold(T::zero(), |acc, x| acc + x)
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    sum(a.iter().zip(b).map(|(x, y)| x.clone() * y.clone()))
}
