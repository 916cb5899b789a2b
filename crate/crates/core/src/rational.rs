//! Exact rational numbers used for capacities, game values and payoffs.
//!
//! Everything in this crate is computed over [`BigRational`]; there is no
//! floating point anywhere on the decision path.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A signed exact rational. Used for payoffs and dividends, which can be
/// negative on non-convex games.
pub type Rational = BigRational;

/// Parses `"7"`, `"-3"`, `"1/3"`, `"2.5"` or `"-0.125"` into an exact rational.
///
/// Returns `None` for anything else, including a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_integer(num)?;
        let den = parse_integer(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        let (negative, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if !all_digits(int_digits, true) || !all_digits(frac_part, true) {
            return None;
        }
        if int_digits.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num = BigInt::from_str(&digits).ok()?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
        return Some(BigRational::new(num, den));
    }
    Some(BigRational::from_integer(parse_integer(text)?))
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text
        .strip_prefix('-')
        .or_else(|| text.strip_prefix('+'))
        .unwrap_or(text);
    if !all_digits(digits, false) {
        return None;
    }
    BigInt::from_str(text.strip_prefix('+').unwrap_or(text)).ok()
}

fn all_digits(text: &str, allow_empty: bool) -> bool {
    (allow_empty || !text.is_empty()) && text.bytes().all(|b| b.is_ascii_digit())
}

/// Renders a rational as `"p/q"`, or as a bare integer when `q = 1`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// An exact non-negative arc capacity.
///
/// The wrapped value is always in lowest terms with a positive denominator
/// (guaranteed by [`BigRational`]'s normalisation) and never negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Capacity(Rational);

impl Capacity {
    pub fn zero() -> Self {
        Capacity(Rational::zero())
    }

    /// Wraps a rational, rejecting negative values.
    pub fn new(value: Rational) -> Option<Self> {
        if value.is_negative() {
            None
        } else {
            Some(Capacity(value))
        }
    }

    pub fn from_integer(value: u64) -> Self {
        Capacity(Rational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`; panics if `denom == 0`.
    pub fn from_ratio(numer: u64, denom: u64) -> Self {
        Capacity(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// `self - other`, clamped at zero.
    pub fn saturating_sub(&self, other: &Capacity) -> Capacity {
        if self.0 <= other.0 {
            Capacity::zero()
        } else {
            Capacity(&self.0 - &other.0)
        }
    }

    /// Multiplies by a non-negative rational.
    pub fn scale(&self, factor: &Rational) -> Option<Capacity> {
        Capacity::new(&self.0 * factor)
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Capacity({self})")
    }
}

impl FromStr for Capacity {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).and_then(Capacity::new).ok_or(())
    }
}

impl Add for Capacity {
    type Output = Capacity;
    fn add(self, rhs: Capacity) -> Capacity {
        Capacity(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Capacity> for &'a Capacity {
    type Output = Capacity;
    fn add(self, rhs: &'a Capacity) -> Capacity {
        Capacity(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Capacity> for Capacity {
    fn add_assign(&mut self, rhs: &Capacity) {
        self.0 += &rhs.0;
    }
}

impl Sub<&Capacity> for &Capacity {
    type Output = Rational;
    fn sub(self, rhs: &Capacity) -> Rational {
        &self.0 - &rhs.0
    }
}

impl Mul<&Rational> for &Capacity {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        &self.0 * rhs
    }
}

impl Sum for Capacity {
    fn sum<I: Iterator<Item = Capacity>>(iter: I) -> Capacity {
        iter.fold(Capacity::zero(), |acc, c| acc + c)
    }
}

impl<'a> Sum<&'a Capacity> for Capacity {
    fn sum<I: Iterator<Item = &'a Capacity>>(iter: I) -> Capacity {
        iter.fold(Capacity::zero(), |mut acc, c| {
            acc += c;
            acc
        })
    }
}
