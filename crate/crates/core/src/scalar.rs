//! Exact scalar types for level values.
//!
//! Level values must compare exactly, so the scalar bound requires a total
//! order and hashing. Floating point types are deliberately not implementors.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, the default level type.
pub type Rational = BigRational;

/// A scalar usable as a level value.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Send + Sync + num_traits::Num + Signed + 'static
{
    /// Parses a decimal (`-1.25`, `3`) or fraction (`7/3`) literal.
    fn parse_decimal(text: &str) -> Option<Self>;

    /// Canonical text: a terminating decimal when one exists, else `p/q`.
    fn to_decimal(&self) -> String;

    /// Exact conversion into an arbitrary-precision rational.
    fn to_rational(&self) -> Rational;

    /// Midpoint between two values, if representable.
    fn halfway(&self, other: &Self) -> Option<Self>;

    fn from_i64(value: i64) -> Self;

    fn approx_f64(&self) -> f64 {
        let r = self.to_rational();
        match (r.numer().to_f64(), r.denom().to_f64()) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    }
}

/// Parses `[-]digits[.digits]` or `[-]int/int` into a big rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = parse_int(n)?;
        let d: BigInt = parse_int(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

fn parse_int(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Formats a rational as a terminating decimal if its reduced denominator
/// has only factors 2 and 5, otherwise as `p/q`.
pub fn format_rational(value: &Rational) -> String {
    let numer = value.numer();
    let denom = value.denom();
    if denom.is_one() {
        return numer.to_string();
    }
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let mut rest = denom.clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{numer}/{denom}");
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10u8), places);
    let scaled = (numer.abs() * &scale) / denom;
    let digits = format!("{:0>width$}", scaled.to_string(), width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if numer.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

impl Scalar for BigRational {
    fn parse_decimal(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn to_decimal(&self) -> String {
        format_rational(self)
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn halfway(&self, other: &Self) -> Option<Self> {
        Some((self + other) / BigRational::from_integer(BigInt::from(2u8)))
    }

    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

impl Scalar for Ratio<i64> {
    fn parse_decimal(text: &str) -> Option<Self> {
        let r = parse_rational(text)?;
        Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
    }

    fn to_decimal(&self) -> String {
        format_rational(&self.to_rational())
    }

    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn halfway(&self, other: &Self) -> Option<Self> {
        let sum = CheckedAdd::checked_add(self, other)?;
        CheckedDiv::checked_div(&sum, &Ratio::from_integer(2))
    }

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(value)
    }
}

impl Scalar for i64 {
    fn parse_decimal(text: &str) -> Option<Self> {
        let r = parse_rational(text)?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    fn to_decimal(&self) -> String {
        self.to_string()
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }

    fn halfway(&self, other: &Self) -> Option<Self> {
        let sum = i64::checked_add(*self, *other)?;
        if sum % 2 == 0 {
            Some(sum / 2)
        } else {
            None
        }
    }

    fn from_i64(value: i64) -> Self {
        value
    }
}
