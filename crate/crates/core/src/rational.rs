//! Exact rational numbers over `i128`.
//!
//! A thin newtype around [`num_rational::Ratio`], which already keeps values
//! in lowest terms with a positive denominator. The wrapper fixes the integer
//! width used everywhere in the crate and adds the handful of helpers the
//! geometry needs (floor, ceil, nearest integer).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational number in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i128, denom: i128) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the rational is integral.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then(|| self.numer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(&self) -> i128 {
        -Integer::div_floor(&-self.numer(), &self.denom())
    }

    /// Nearest integer; exact halves round away from zero.
    pub fn round_half_away(&self) -> i128 {
        let twice = self.numer() * 2;
        let d = self.denom() * 2;
        // |x| + 1/2, floored, then sign restored
        let mag = Integer::div_floor(&(twice.abs() + self.denom()), &d);
        if self.is_negative() {
            -mag
        } else {
            mag
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i128> for Rational {
    fn from(n: i128) -> Self {
        Rational::from_int(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n as i128)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_int(n as i128)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_int(n as i128)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<i128> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i128) -> Rational {
                Rational(self.0.$method(Ratio::from_integer(rhs)))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl PartialEq<i128> for Rational {
    fn eq(&self, other: &i128) -> bool {
        self.denom() == 1 && self.numer() == *other
    }
}

impl PartialOrd<i128> for Rational {
    fn partial_cmp(&self, other: &i128) -> Option<Ordering> {
        Some(self.0.cmp(&Ratio::from_integer(*other)))
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl std::str::FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<i128>().map_err(|e| format!("{t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err("zero denominator".into());
                }
                Ok(Rational::new(parse(n)?, d))
            }
            None => Ok(Rational::from_int(parse(s)?)),
        }
    }
}

// Serialized as the exact "p/q" string.
impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_positive_denominator() {
        let q = Rational::new(6, -4);
        assert_eq!((q.numer(), q.denom()), (-3, 2));
        assert_eq!(q.to_string(), "-3/2");
    }

    #[test]
    fn floor_ceil() {
        let q = Rational::new(-7, 2);
        assert_eq!(q.floor(), -4);
        assert_eq!(q.ceil(), -3);
        assert_eq!(Rational::new(94, 3).floor(), 31);
        assert_eq!(Rational::new(94, 3).ceil(), 32);
        assert_eq!(Rational::from_int(5).ceil(), 5);
    }

    #[test]
    fn nearest() {
        assert_eq!(Rational::new(94, 3).round_half_away(), 31);
        assert_eq!(Rational::from_int(28).round_half_away(), 28);
        assert_eq!(Rational::new(-7, 2).round_half_away(), -4);
        assert_eq!(Rational::new(7, 2).round_half_away(), 4);
        assert_eq!(Rational::new(-5, 3).round_half_away(), -2);
        assert_eq!(Rational::new(2, 3).round_half_away(), 1);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3/2", "51/4", "106"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
    }
}
