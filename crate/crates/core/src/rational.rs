//! Exact rationals and the extended value `Infinite` used for the
//! disconnection cost of disconnected networks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn int(value: i128) -> Rational {
    Rational::from_integer(value)
}

pub fn frac(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

/// Parses `"p/q"`, `"-p/q"` or a plain integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => text.parse::<i128>().map(int).map_err(|_| bad()),
    }
}

/// Canonical `"p/q"` form; integers keep the `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_alpha(text: &str) -> Result<Rational> {
    let alpha = parse_rational(text)?;
    if !alpha.is_positive() {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    Ok(alpha)
}

/// A finite exact rational, or `Infinite`, which dominates every finite value
/// and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinite,
}

impl ExtendedRational {
    pub fn zero() -> Self {
        ExtendedRational::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            ExtendedRational::Finite(v) => Some(*v),
            ExtendedRational::Infinite => None,
        }
    }

    /// Ratio of two extended values: `inf / finite = inf`; a finite
    /// numerator over an infinite denominator is 0.
    pub fn ratio(&self, denominator: &ExtendedRational) -> ExtendedRational {
        match (self, denominator) {
            (ExtendedRational::Infinite, _) => ExtendedRational::Infinite,
            (ExtendedRational::Finite(_), ExtendedRational::Infinite) => Self::zero(),
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => {
                if b.is_zero() {
                    ExtendedRational::Infinite
                } else {
                    ExtendedRational::Finite(a / b)
                }
            }
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(value: Rational) -> Self {
        ExtendedRational::Finite(value)
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtendedRational::Finite(a), ExtendedRational::Finite(b)) => ExtendedRational::Finite(a + b),
            _ => ExtendedRational::Infinite,
        }
    }
}

impl Add<Rational> for ExtendedRational {
    type Output = ExtendedRational;

    fn add(self, rhs: Rational) -> Self::Output {
        self + ExtendedRational::Finite(rhs)
    }
}

impl std::iter::Sum for ExtendedRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExtendedRational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(v) => f.write_str(&format_rational(v)),
            ExtendedRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            Ok(ExtendedRational::Infinite)
        } else {
            parse_rational(s).map(ExtendedRational::Finite)
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// serde adapter for plain `Rational` fields as `"p/q"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}
