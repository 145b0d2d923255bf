//! Half-integers, stored exactly as twice their value.
//!
//! The spin label `l` and the tower index `alpha` live in `(1/2)Z`. Storing
//! `2*value` as an `i32` keeps every quantity exact and hashable and makes
//! the step-by-one tower arithmetic (`alpha + n` for integer `n`) trivial.

use crate::{Error, Rational, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

/// An element of `(1/2)Z`: integers and half-odd-integers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    /// Builds from twice the value, so `from_twice(3)` is `3/2`.
    pub fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    /// Builds from an integer value.
    pub fn from_int(n: i32) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// Twice the value, always an integer.
    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if this is an integer.
    pub fn as_int(self) -> Option<i32> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice.into(), 2.into())
    }

    /// `(-1)^self`; errors when `self` is not an integer.
    pub fn neg_one_pow(self) -> Result<i32> {
        let n = self
            .as_int()
            .ok_or_else(|| Error::Domain(format!("(-1)^({self}) is not defined")))?;
        Ok(if n % 2 == 0 { 1 } else { -1 })
    }

    /// `self!`; errors when `self` is not a non-negative integer.
    pub fn factorial(self) -> Result<BigInt> {
        let n = self
            .as_int()
            .filter(|n| *n >= 0)
            .ok_or_else(|| Error::Domain(format!("({self})! is not defined")))?;
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        Ok(acc)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Add<i32> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i32) -> HalfInt {
        HalfInt::from_twice(self.twice + 2 * rhs)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"p"` (integer) or `"p/2"` (half-odd form), e.g. `"3/2"`, `"-2"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected an integer or p/2, got {s:?}"));
        match s.split_once('/') {
            None => {
                let n: i32 = s.trim().parse().map_err(|_| bad())?;
                Ok(HalfInt::from_int(n))
            }
            Some((p, q)) => {
                if q.trim() != "2" {
                    return Err(bad());
                }
                let p: i32 = p.trim().parse().map_err(|_| bad())?;
                Ok(HalfInt::from_twice(p))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips() {
        for twice in -9..=9 {
            let h = HalfInt::from_twice(twice);
            let back: HalfInt = h.to_string().parse().unwrap();
            assert_eq!(h, back);
        }
        assert_eq!(HalfInt::from_twice(1).to_string(), "1/2");
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
    }

    #[test]
    fn parse_rejects_other_denominators() {
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("1/2/2".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert_eq!("5/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(5));
    }

    #[test]
    fn factorial_and_sign() {
        assert_eq!(HalfInt::from_int(0).factorial().unwrap(), BigInt::from(1));
        assert_eq!(HalfInt::from_int(4).factorial().unwrap(), BigInt::from(24));
        assert!(HalfInt::from_twice(1).factorial().is_err());
        assert!(HalfInt::from_int(-1).factorial().is_err());
        assert_eq!(HalfInt::from_int(3).neg_one_pow().unwrap(), -1);
        assert!(HalfInt::from_twice(1).neg_one_pow().is_err());
    }

    #[test]
    fn arithmetic() {
        let l = HalfInt::from_twice(3);
        assert_eq!(l + 1, HalfInt::from_twice(5));
        assert_eq!(-l + l, HalfInt::ZERO);
        assert_eq!((l - HalfInt::from_twice(1)).as_int(), Some(1));
        assert_eq!(l.to_rational(), crate::rational(3, 2));
    }
}
