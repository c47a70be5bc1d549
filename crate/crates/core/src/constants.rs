//! Multiplicative objects attached to the main terms.
//!
//! The local factors `Θ_{k,n}(d)`, `Ξ_{k,n}(d)`, `f_k(n)` and `g_k(n)` are
//! exact. The Euler products
//!
//! ```text
//! C_k = Π_p (1 − ψ_k(p)/p^k)        D_k = Π_p δ_k(p)/p^(k−1)
//! ```
//!
//! are enclosed rigorously. Each factor has the form `1 − t_p` with
//! `0 ≤ t_p ≤ c/p²`, where `c = k` for `C` and `c = k·2^(k−1)` for `D`.
//! The product over `p ≤ P` is accumulated twice in fixed point, once
//! rounding down and once rounding up. For the tail,
//! `Π_{p>P}(1 − t_p) ≥ 1 − Σ_{p>P} t_p > 1 − c/P`, because
//! `Σ_{n>P} 1/n² < 1/P`; the tail never exceeds `1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{squarefree_primes, FactorTable, SegmentedSieve, MAX_TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::polyfam::{FamilyTag, PolyFamily};
use crate::real::{Fixed, Rounding};

/// Primes are processed in fixed windows of this many integers, and the
/// window products are combined in ascending order. The result therefore
/// depends on the cutoff alone, not on the thread count.
const BLOCK: u64 = 1 << 16;

/// Decimal places in the serialized record.
const RECORD_PLACES: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstantKind {
    C,
    D,
}

impl ConstantKind {
    pub fn min_k(self) -> u32 {
        match self {
            ConstantKind::C => 1,
            ConstantKind::D => 2,
        }
    }

    /// Slope `c` of the tail bound `t_p ≤ c/p²`.
    fn tail_slope(self, k: u32) -> u64 {
        match self {
            ConstantKind::C => u64::from(k),
            ConstantKind::D => u64::from(k) << (k - 1),
        }
    }

    /// `(numerator, denominator)` of the local factor at `p`.
    fn local_factor(self, k: u32, p: u64) -> (BigInt, BigInt) {
        let x = BigInt::from(p);
        match self {
            ConstantKind::C => {
                let den = x.pow(k);
                let psi = PolyFamily::with_k_max(FamilyTag::Psi, k, u32::MAX)
                    .expect("k validated")
                    .eval_big(&x);
                (&den - psi, den)
            }
            ConstantKind::D => {
                let delta = PolyFamily::with_k_max(FamilyTag::Delta, k, u32::MAX)
                    .expect("k validated")
                    .eval_big(&x);
                (delta, x.pow(k - 1))
            }
        }
    }

    fn is_exactly_one(self, k: u32) -> bool {
        k == self.min_k()
    }
}

impl fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantKind::C => "C",
            ConstantKind::D => "D",
        })
    }
}

impl FromStr for ConstantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(ConstantKind::C),
            "D" | "d" => Ok(ConstantKind::D),
            other => Err(Error::Argument(format!("unknown constant kind `{other}`"))),
        }
    }
}

/// Rigorous interval `[lo, hi]` for `C_k` or `D_k`, with the truncated
/// product as point value. A cutoff of `0` marks an exact value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantEnclosure {
    pub kind: ConstantKind,
    pub k: u32,
    pub point: Fixed,
    pub lo: Fixed,
    pub hi: Fixed,
    pub cutoff: u64,
}

impl ConstantEnclosure {
    fn exact_one(kind: ConstantKind, k: u32) -> Self {
        ConstantEnclosure {
            kind,
            k,
            point: Fixed::one(),
            lo: Fixed::one(),
            hi: Fixed::one(),
            cutoff: 0,
        }
    }

    pub fn width(&self) -> Fixed {
        self.hi.sub(&self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn contains(&self, x: &Fixed) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether the closed interval meets `[a, b]`.
    pub fn meets(&self, a: &Fixed, b: &Fixed) -> bool {
        &self.lo <= b && a <= &self.hi
    }

    pub fn record(&self) -> EnclosureRecord {
        EnclosureRecord {
            kind: self.kind,
            k: self.k,
            point: self.point.to_decimal(RECORD_PLACES, Rounding::Down),
            lo: self.lo.to_decimal(RECORD_PLACES, Rounding::Down),
            hi: self.hi.to_decimal(RECORD_PLACES, Rounding::Up),
            cutoff_p: self.cutoff,
            width: self.width().to_decimal(RECORD_PLACES, Rounding::Up),
        }
    }
}

/// Serialized form of a [`ConstantEnclosure`]. Reals are decimal strings;
/// `lo` and `width` round outward with `hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnclosureRecord {
    pub kind: ConstantKind,
    pub k: u32,
    pub point: String,
    pub lo: String,
    pub hi: String,
    #[serde(rename = "cutoff_P")]
    pub cutoff_p: u64,
    pub width: String,
}

impl EnclosureRecord {
    /// Reads the record back. The decimal strings must parse and satisfy
    /// `lo ≤ point ≤ hi`.
    pub fn to_enclosure(&self) -> Result<ConstantEnclosure> {
        let parse = |s: &str, r| Fixed::parse_decimal(s, r).map_err(|e| Error::Argument(e.to_string()));
        let enclosure = ConstantEnclosure {
            kind: self.kind,
            k: self.k,
            point: parse(&self.point, Rounding::Down)?,
            lo: parse(&self.lo, Rounding::Down)?,
            hi: parse(&self.hi, Rounding::Up)?,
            cutoff: self.cutoff_p,
        };
        if !(enclosure.lo <= enclosure.point && enclosure.point <= enclosure.hi) {
            return Err(Error::Argument("enclosure record is not ordered".into()));
        }
        Ok(enclosure)
    }
}

fn check_kind(kind: ConstantKind, k: u32) -> Result<()> {
    let max = crate::polyfam::DEFAULT_K_MAX;
    if k < kind.min_k() || k > max {
        return Err(Error::Argument(format!(
            "{kind}_k needs k in [{}, {max}], got {k}",
            kind.min_k()
        )));
    }
    Ok(())
}

/// Lower and upper products of the local factors over primes in `[lo, hi)`.
fn window_product(kind: ConstantKind, k: u32, sieve: &SegmentedSieve, lo: u64, hi: u64) -> (Fixed, Fixed) {
    let mut down = Fixed::one();
    let mut up = Fixed::one();
    for p in sieve.primes_in(lo, hi) {
        let (num, den) = kind.local_factor(k, p);
        down = down.mul_ratio(&num, &den, Rounding::Down);
        up = up.mul_ratio(&num, &den, Rounding::Up);
    }
    (down, up)
}

/// Running truncated product, extended window by window.
struct Accumulator<'a> {
    kind: ConstantKind,
    k: u32,
    sieve: &'a SegmentedSieve,
    /// Every prime `< next` is included.
    next: u64,
    down: Fixed,
    up: Fixed,
}

impl<'a> Accumulator<'a> {
    fn new(kind: ConstantKind, k: u32, sieve: &'a SegmentedSieve) -> Self {
        Accumulator {
            kind,
            k,
            sieve,
            next: 2,
            down: Fixed::one(),
            up: Fixed::one(),
        }
    }

    /// Includes every prime `≤ cutoff`.
    fn extend_to(&mut self, cutoff: u64) {
        let end = cutoff + 1;
        if end <= self.next {
            return;
        }
        let mut windows = Vec::new();
        let mut lo = self.next;
        while lo < end {
            let hi = ((lo / BLOCK + 1) * BLOCK).min(end);
            windows.push((lo, hi));
            lo = hi;
        }
        let products: Vec<(Fixed, Fixed)> = windows
            .par_iter()
            .map(|&(lo, hi)| window_product(self.kind, self.k, self.sieve, lo, hi))
            .collect();
        for (down, up) in products {
            self.down = self.down.mul(&down, Rounding::Down);
            self.up = self.up.mul(&up, Rounding::Up);
        }
        self.next = end;
    }

    fn enclosure(&self) -> ConstantEnclosure {
        let cutoff = self.next - 1;
        let slope = BigInt::from(self.kind.tail_slope(self.k));
        let p = BigInt::from(cutoff);
        let lo = self.down.mul_ratio(&(&p - &slope), &p, Rounding::Down);
        ConstantEnclosure {
            kind: self.kind,
            k: self.k,
            point: self.down.clone(),
            lo,
            hi: self.up.clone(),
            cutoff,
        }
    }
}

fn smallest_cutoff(kind: ConstantKind, k: u32) -> u64 {
    1024u64.max(2 * kind.tail_slope(k))
}

/// Enclosure from the primes `p ≤ cutoff`.
pub fn euler_constant_at(kind: ConstantKind, k: u32, cutoff: u64) -> Result<ConstantEnclosure> {
    check_kind(kind, k)?;
    if kind.is_exactly_one(k) {
        return Ok(ConstantEnclosure::exact_one(kind, k));
    }
    let least = smallest_cutoff(kind, k);
    if cutoff < least {
        return Err(Error::Argument(format!("cutoff must be at least {least} for {kind}_{k}")));
    }
    if cutoff > MAX_TABLE_LIMIT {
        return Err(Error::OutOfRange {
            value: cutoff,
            limit: MAX_TABLE_LIMIT,
        });
    }
    let sieve = SegmentedSieve::new(cutoff);
    let mut acc = Accumulator::new(kind, k, &sieve);
    acc.extend_to(cutoff);
    Ok(acc.enclosure())
}

/// Enclosure of width at most `target_width`, growing the prime cutoff as
/// needed but never past `max_cutoff`.
///
/// Cutoffs are multiples of an internal window size, so a given
/// `(kind, k, target_width)` always lands on the same cutoff.
pub fn euler_constant(kind: ConstantKind, k: u32, target_width: f64, max_cutoff: u64) -> Result<ConstantEnclosure> {
    check_kind(kind, k)?;
    if !(target_width.is_finite() && target_width > 0.0) {
        return Err(Error::Argument(format!("target width must be positive, got {target_width}")));
    }
    if kind.is_exactly_one(k) {
        return Ok(ConstantEnclosure::exact_one(kind, k));
    }
    let max_cutoff = max_cutoff.min(MAX_TABLE_LIMIT);
    let least = smallest_cutoff(kind, k);
    if max_cutoff < least {
        return Err(Error::Argument(format!("cutoff limit must be at least {least} for {kind}_{k}")));
    }
    let round_up = |p: u64| p.div_ceil(BLOCK).saturating_mul(BLOCK).min(max_cutoff);
    let sieve = SegmentedSieve::new(max_cutoff);
    let mut acc = Accumulator::new(kind, k, &sieve);
    let mut cutoff = round_up(least);
    loop {
        acc.extend_to(cutoff);
        let enclosure = acc.enclosure();
        let achieved = enclosure.width_f64();
        if achieved <= target_width {
            return Ok(enclosure);
        }
        if cutoff >= max_cutoff {
            return Err(Error::WidthUnreachable {
                target: target_width,
                achieved,
                enclosure: Box::new(enclosure),
            });
        }
        // The width is close to hi·c/P, so scale P by the shortfall.
        let scale = (achieved / target_width * 1.25).min(1e6);
        let grown = (cutoff as f64 * scale).min(u64::MAX as f64 / 2.0) as u64;
        cutoff = round_up(grown.max(cutoff + 1));
    }
}

/// Product over the primes of `d` of `on(p)` when `p ∣ n`, else `off(p)`.
fn product_over(d: u64, n: u64, table: &FactorTable, on: FamilyTag, off: FamilyTag, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let on = PolyFamily::with_k_max(on, k, u32::MAX)?;
    let off = PolyFamily::with_k_max(off, k, u32::MAX)?;
    let mut out = BigUint::one();
    for p in squarefree_primes(d, table)? {
        out *= if n % p == 0 { on.eval(p)? } else { off.eval(p)? };
    }
    Ok(out)
}

/// `Θ_{k,n}(d)`: the local count `φ_k(p)` for `p ∣ n`, `ψ_k(p)` otherwise.
pub fn theta_factor(k: u32, n: u64, d: u64, table: &FactorTable) -> Result<BigUint> {
    product_over(d, n, table, FamilyTag::Phi, FamilyTag::Psi, k)
}

/// `Ξ_{k,n}(d)`: the local count `η_k(p)` for `p ∣ n`, `δ_k(p)` otherwise.
pub fn xi_factor(k: u32, n: u64, d: u64, table: &FactorTable) -> Result<BigUint> {
    product_over(d, n, table, FamilyTag::Eta, FamilyTag::Delta, k)
}

fn sign(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `f_k(n) = Π_{p ∣ n} (1 + (−1)^k / (p^k − ψ_k(p)))`, exactly.
pub fn f_factor(k: u32, n: u64, table: &FactorTable) -> Result<BigRational> {
    let psi = PolyFamily::new(FamilyTag::Psi, k)?;
    let mut out = BigRational::one();
    for p in table.distinct_primes(n)? {
        let x = BigInt::from(p);
        let den = x.pow(k) - psi.eval_big(&x);
        out *= BigRational::one() + BigRational::new(sign(k), den);
    }
    Ok(out)
}

/// `g_k(n) = Π_{p ∣ n} (1 + (−1)^(k−1)(k−1) / δ_k(p))`, exactly.
pub fn g_factor(k: u32, n: u64, table: &FactorTable) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::Argument(format!("g_k needs k ≥ 2, got {k}")));
    }
    let delta = PolyFamily::new(FamilyTag::Delta, k)?;
    let mut out = BigRational::one();
    for p in table.distinct_primes(n)? {
        let num = sign(k - 1) * BigInt::from(k - 1);
        out *= BigRational::one() + BigRational::new(num, delta.eval_big(&BigInt::from(p)));
    }
    Ok(out)
}

fn check_omega_args(k: u32, x: u64, table: &FactorTable) -> Result<()> {
    if k == 0 || x == 0 {
        return Err(Error::Argument("Ω_k(x) needs k ≥ 1 and x ≥ 1".into()));
    }
    table.check(x.max(2))
}

/// `Ω_k(x) = Σ k^ω(d)/d` over square-free `d ≤ x`, exactly. The common
/// denominator grows like `lcm(1..x)`, so this is meant for small `x`.
pub fn omega_partial_sum(k: u32, x: u64, table: &FactorTable) -> Result<BigRational> {
    check_omega_args(k, x, table)?;
    let mut sum = BigRational::zero();
    for sf in crate::arith::squarefree_range(x, table)? {
        let weight = BigInt::from(k).pow(sf.omega);
        sum += BigRational::new(weight, BigInt::from(sf.d));
    }
    Ok(sum)
}

/// Upper bounds for `Ω_k(m)` at every `m` in `1..=x`, rounded upward.
pub fn omega_partial_sums_upper(k: u32, x: u64, table: &FactorTable) -> Result<Vec<Fixed>> {
    check_omega_args(k, x, table)?;
    let mut out = Vec::with_capacity(x as usize);
    let mut sum = Fixed::zero();
    let mut squarefree = crate::arith::squarefree_range(x, table)?.peekable();
    for m in 1..=x {
        if let Some(sf) = squarefree.next_if(|sf| sf.d == m) {
            let weight = BigInt::from(k).pow(sf.omega);
            sum = sum.add(&Fixed::from_ratio(&weight, &BigInt::from(m), Rounding::Up));
        }
        out.push(sum.clone());
    }
    Ok(out)
}

/// `lo < r < hi` for rationals.
pub fn strictly_between(r: &BigRational, lo: &BigRational, hi: &BigRational) -> bool {
    lo < r && r < hi
}

/// Sign of `f_k(n) − 1`: positive for even `k`, negative for odd `k`, when
/// `n > 1`.
pub fn f_factor_side(k: u32, n: u64, table: &FactorTable) -> Result<std::cmp::Ordering> {
    let f = f_factor(k, n, table)?;
    Ok((f - BigRational::one()).signum().cmp(&BigRational::zero()))
}
