//! Exact rationals for densities and experiment parameters.
//!
//! Values are kept in lowest terms with a positive denominator. They
//! serialize as strings (`"3/2"`, `"1"`) so JSON output never loses
//! exactness, and parse from fractions, integers or finite decimals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(Ratio::from_integer(v))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational::from_integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }

    /// `self * k` rounded up, for subset-size thresholds like `ceil(eps * |A|)`.
    pub fn ceil_mul(&self, k: usize) -> i64 {
        (*self * Rational::from_integer(k as i64)).ceil()
    }

    pub fn floor_mul(&self, k: usize) -> i64 {
        (*self * Rational::from_integer(k as i64)).floor()
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

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse rational from {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Rational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if frac.is_empty() || frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let whole: i64 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| bad())?
            };
            let scale = 10i64.pow(frac.len() as u32);
            let frac_val: i64 = frac.parse().map_err(|_| bad())?;
            let numer = whole
                .checked_mul(scale)
                .and_then(|w| w.checked_add(frac_val))
                .ok_or_else(bad)?;
            return Ok(Rational::new(if negative { -numer } else { numer }, scale));
        }
        s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(i) => Ok(Rational::from_integer(i)),
            // Floats go through their shortest decimal representation.
            Repr::Float(x) => format!("{x}").parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_op!(Add, add);
forward_op!(Sub, sub);
forward_op!(Mul, mul);
forward_op!(Div, div);

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

/// Compares `a / b` against a rational without leaving integers.
pub fn cmp_fraction(numer: u64, denom: u64, r: Rational) -> Ordering {
    debug_assert!(denom > 0);
    let lhs = numer as i128 * r.denom() as i128;
    let rhs = r.numer() as i128 * denom as i128;
    lhs.cmp(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::new(4, 4).to_string(), "1");
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn parses_fraction_decimal_integer() {
        assert_eq!("1/4".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!("0.25".parse::<Rational>().unwrap(), Rational::new(1, 4));
        assert_eq!(".5".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("-1.5".parse::<Rational>().unwrap(), Rational::new(-3, 2));
        assert_eq!("8".parse::<Rational>().unwrap(), Rational::from_integer(8));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::new(2, 3);
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"2/3\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let from_num: Rational = serde_json::from_str("0.3").unwrap();
        assert_eq!(from_num, Rational::new(3, 10));
    }

    #[test]
    fn fraction_comparison() {
        assert_eq!(cmp_fraction(1, 2, Rational::new(2, 4)), Ordering::Equal);
        assert_eq!(cmp_fraction(1, 3, Rational::new(1, 2)), Ordering::Less);
        assert_eq!(Rational::new(1, 4).ceil_mul(10), 3);
        assert_eq!(Rational::new(1, 4).floor_mul(10), 2);
    }
}
