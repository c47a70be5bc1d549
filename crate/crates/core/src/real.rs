//! Rigorous real arithmetic.
//!
//! [`Fixed`] is a binary fixed-point number with [`FRAC_BITS`] fractional
//! bits over an arbitrary-precision mantissa (about 38 decimal digits after
//! the point). Every inexact operation takes an explicit [`Rounding`], so
//! lower and upper bounds can be accumulated separately.
//!
//! [`Interval`] is an `f64` interval whose endpoints are pushed outward after
//! every operation. It is used for transcendental quantities (`e`, `π`,
//! `log`, `exp`) in the error-bound right-hand sides.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const FRAC_BITS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

fn div_round(num: &BigInt, den: &BigInt, rounding: Rounding) -> BigInt {
    debug_assert!(den.is_positive());
    match rounding {
        Rounding::Down => num.div_floor(den),
        Rounding::Up => -((-num).div_floor(den)),
    }
}

fn shr_round(x: &BigInt, bits: u32, rounding: Rounding) -> BigInt {
    let den = BigInt::one() << bits;
    div_round(x, &den, rounding)
}

/// Fixed-point real `mantissa / 2^FRAC_BITS`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed {
    mantissa: BigInt,
}

impl Fixed {
    pub fn zero() -> Self {
        Fixed {
            mantissa: BigInt::zero(),
        }
    }

    pub fn one() -> Self {
        Fixed::from_integer(&BigInt::one())
    }

    pub fn from_integer(v: &BigInt) -> Self {
        Fixed {
            mantissa: v << FRAC_BITS,
        }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, rounding: Rounding) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        Fixed {
            mantissa: div_round(&(num << FRAC_BITS), &den, rounding),
        }
    }

    pub fn from_rational(r: &BigRational, rounding: Rounding) -> Self {
        Fixed::from_ratio(r.numer(), r.denom(), rounding)
    }

    /// Exact when `x` is a multiple of `2^-FRAC_BITS`, directed otherwise.
    /// Panics on non-finite input.
    pub fn from_f64(x: f64, rounding: Rounding) -> Self {
        let r = BigRational::from_float(x).expect("finite float");
        Fixed::from_rational(&r, rounding)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        Fixed {
            mantissa: &self.mantissa + &other.mantissa,
        }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        Fixed {
            mantissa: &self.mantissa - &other.mantissa,
        }
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            mantissa: self.mantissa.abs(),
        }
    }

    pub fn mul(&self, other: &Fixed, rounding: Rounding) -> Fixed {
        Fixed {
            mantissa: shr_round(&(&self.mantissa * &other.mantissa), FRAC_BITS, rounding),
        }
    }

    /// `self · num / den` with a single rounding.
    pub fn mul_ratio(&self, num: &BigInt, den: &BigInt, rounding: Rounding) -> Fixed {
        assert!(den.is_positive(), "denominator must be positive");
        Fixed {
            mantissa: div_round(&(&self.mantissa * num), den, rounding),
        }
    }

    pub fn mul_rational(&self, r: &BigRational, rounding: Rounding) -> Fixed {
        self.mul_ratio(r.numer(), r.denom(), rounding)
    }

    /// Exact rational value.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), BigInt::one() << FRAC_BITS)
    }

    pub fn to_f64(&self) -> f64 {
        // Scale in two steps so that huge mantissas do not overflow early.
        let bits = self.mantissa.bits();
        if bits <= 1000 {
            self.mantissa.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(FRAC_BITS as i32))
        } else {
            let shift = bits - 900;
            let head = (&self.mantissa >> shift).to_f64().unwrap_or(f64::NAN);
            head * 2f64.powi(shift as i32 - FRAC_BITS as i32)
        }
    }

    /// Decimal rendering with `places` digits after the point, rounded in
    /// the given direction.
    pub fn to_decimal(&self, places: u32, rounding: Rounding) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let scaled = shr_round(&(&self.mantissa * &scale), FRAC_BITS, rounding);
        let negative = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let places = places as usize;
        let (int_part, frac_part) = if digits.len() > places {
            let (a, b) = digits.split_at(digits.len() - places);
            (a.to_string(), b.to_string())
        } else {
            ("0".to_string(), format!("{digits:0>places$}"))
        };
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Scientific notation with `digits` significant digits, truncated
    /// toward zero, in the style of `{:e}` (`3.2263e-1`).
    pub fn to_scientific(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.mantissa.is_zero() {
            return format!("0.{}e0", "0".repeat(digits as usize - 1));
        }
        let magnitude = self.mantissa.abs();
        let ten = BigInt::from(10u32);
        let low = ten.pow(digits - 1);
        let high = &low * 10;
        let mut exp = self.to_f64().abs().log10().floor() as i64;
        let leading = loop {
            let shift = i64::from(digits) - 1 - exp;
            let (num, den) = if shift >= 0 {
                (&magnitude * ten.pow(shift as u32), BigInt::one() << FRAC_BITS)
            } else {
                (magnitude.clone(), (BigInt::one() << FRAC_BITS) * ten.pow((-shift) as u32))
            };
            let q = num / den;
            if q >= high {
                exp += 1;
            } else if q < low {
                exp -= 1;
            } else {
                break q;
            }
        };
        let text = leading.to_string();
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let (head, tail) = text.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }

    /// Parses a plain decimal literal (`-12.5`, `0.001`, `3`), rounding to
    /// the fixed grid in the given direction. No exponents.
    pub fn parse_decimal(s: &str, rounding: Rounding) -> Result<Fixed, ParseFixedError> {
        let err = || ParseFixedError(s.chars().take(40).collect());
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((a, b)) => (a, b),
            None => (body, ""),
        };
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || (body.contains('.') && frac_part.is_empty())
            || frac_part.len() > 4096
        {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(err)?;
        if negative {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        Ok(Fixed::from_ratio(&num, &den, rounding))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal literal {0:?}")]
pub struct ParseFixedError(String);

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(24, Rounding::Down))
    }
}

impl FromStr for Fixed {
    type Err = ParseFixedError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixed::parse_decimal(s, Rounding::Down)
    }
}

/// Compares an exact rational with a fixed-point value.
pub fn cmp_rational_fixed(r: &BigRational, x: &Fixed) -> Ordering {
    // r.numer / r.denom  vs  mantissa / 2^FRAC_BITS, denominators positive.
    let lhs = r.numer() << FRAC_BITS;
    let rhs = x.mantissa() * r.denom();
    lhs.cmp(&rhs)
}

/// Closed `f64` interval with outward rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

// Widening applied to results of library transcendental functions, which are
// not guaranteed to be correctly rounded.
const LIBM_ULPS: u32 = 2;

fn widen(lo: f64, hi: f64, ulps: u32) -> Interval {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..ulps {
        lo = lo.next_down();
        hi = hi.next_up();
    }
    Interval { lo, hi }
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if x as u128 == u128::from(n) {
            Interval::point(x)
        } else {
            widen(x, x, 1)
        }
    }

    pub fn e() -> Self {
        widen(std::f64::consts::E, std::f64::consts::E, 1)
    }

    pub fn pi() -> Self {
        widen(std::f64::consts::PI, std::f64::consts::PI, 1)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn add(self, o: Interval) -> Interval {
        widen(self.lo + o.lo, self.hi + o.hi, 1)
    }

    pub fn sub(self, o: Interval) -> Interval {
        widen(self.lo - o.hi, self.hi - o.lo, 1)
    }

    pub fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        widen(lo, hi, 1)
    }

    /// Division by an interval that excludes zero.
    pub fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by interval containing 0");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        widen(lo, hi, 1)
    }

    pub fn powi(self, k: u32) -> Interval {
        assert!(self.lo >= 0.0, "powi implemented for nonnegative intervals");
        let mut acc = Interval::point(1.0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sqrt(self) -> Interval {
        assert!(self.lo >= 0.0);
        // IEEE sqrt is correctly rounded.
        widen(self.lo.sqrt(), self.hi.sqrt(), 1)
    }

    pub fn ln(self) -> Interval {
        assert!(self.lo > 0.0);
        widen(self.lo.ln(), self.hi.ln(), LIBM_ULPS)
    }

    pub fn exp(self) -> Interval {
        widen(self.lo.exp(), self.hi.exp(), LIBM_ULPS)
    }
}
