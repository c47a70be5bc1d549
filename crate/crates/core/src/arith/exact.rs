use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact nonnegative count of arbitrary size.
///
/// Serializes as a decimal string so that 64-bit JSON consumers do not lose
/// digits.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCount(BigUint);

impl ExactCount {
    pub fn new(value: BigUint) -> Self {
        ExactCount(value)
    }

    pub fn zero() -> Self {
        ExactCount(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_biguint(&self) -> BigUint {
        self.0.clone()
    }

    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    /// Converts a signed total that must be nonnegative.
    pub fn from_signed(value: BigInt) -> Option<Self> {
        value.to_biguint().map(ExactCount)
    }
}

impl From<u64> for ExactCount {
    fn from(v: u64) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<u128> for ExactCount {
    fn from(v: u128) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid count literal {0:?}: expected decimal digits")]
pub struct ParseCountError(String);

impl FromStr for ExactCount {
    type Err = ParseCountError;

    /// Accepts plain ASCII decimal digits only: no sign, no exponent.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseCountError(s.chars().take(40).collect()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(ExactCount)
            .ok_or_else(|| ParseCountError(s.chars().take(40).collect()))
    }
}

impl Add for ExactCount {
    type Output = ExactCount;
    fn add(self, rhs: Self) -> Self {
        ExactCount(self.0 + rhs.0)
    }
}

impl AddAssign for ExactCount {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Mul for ExactCount {
    type Output = ExactCount;
    fn mul(self, rhs: Self) -> Self {
        ExactCount(self.0 * rhs.0)
    }
}

impl Sum for ExactCount {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactCount::zero(), |a, b| a + b)
    }
}

impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
