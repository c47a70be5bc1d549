//! Prime sieving, factorization and multiplicative-function utilities.

mod exact;
mod sieve;

pub use exact::ExactCount;
pub use sieve::{FactorTable, Factorization, SegmentedSieve, MAX_TABLE_LIMIT};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Möbius function `μ(m)` for `1 ≤ m ≤ table.limit()`.
pub fn moebius(m: u64, table: &FactorTable) -> Result<i8> {
    let f = table.factorize(m)?;
    Ok(if !f.is_square_free() {
        0
    } else if f.omega() % 2 == 0 {
        1
    } else {
        -1
    })
}

/// A square-free integer with its Möbius value and number of prime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFree {
    pub d: u64,
    pub mu: i8,
    pub omega: u32,
    pub primes: Vec<u64>,
}

/// Square-free `d` in `[1, limit]`, ascending.
pub fn squarefree_range(
    limit: u64,
    table: &FactorTable,
) -> Result<impl Iterator<Item = SquareFree> + '_> {
    table.check(limit)?;
    Ok((1..=limit).filter_map(move |d| {
        let f = table.factorize(d).expect("d within table range");
        f.is_square_free().then(|| {
            let omega = f.omega() as u32;
            SquareFree {
                d,
                mu: if omega % 2 == 0 { 1 } else { -1 },
                omega,
                primes: f.primes().collect(),
            }
        })
    }))
}

/// Checks that `d` is square-free and returns its distinct primes.
pub fn squarefree_primes(d: u64, table: &FactorTable) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::Argument("d must be positive".into()));
    }
    let f = table.factorize(d)?;
    if !f.is_square_free() {
        return Err(Error::NotSquareFree(d));
    }
    Ok(f.primes().collect())
}

/// The square-free divisors of the product of `primes`, with Möbius signs.
pub fn signed_divisors(primes: &[u64]) -> Vec<(u64, i8)> {
    let mut out = vec![(1u64, 1i8)];
    for &p in primes {
        let extra: Vec<_> = out.iter().map(|&(g, s)| (g * p, -s)).collect();
        out.extend(extra);
    }
    out
}

/// Euler's totient `φ(m)`.
pub fn totient(m: u64, table: &FactorTable) -> Result<ExactCount> {
    let f = table.factorize(m)?;
    let mut value = m;
    for p in f.primes() {
        value = value / p * (p - 1);
    }
    Ok(ExactCount::from(value))
}

/// Binomial coefficient `a choose b`; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> ExactCount {
    if b > a {
        return ExactCount::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    // acc = C(a-b+i, i) after step i, always an integer.
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    ExactCount::new(acc)
}

/// Binomial coefficient in `u128`, or `None` on overflow.
pub fn binomial_u128(a: u64, b: u64) -> Option<u128> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(b) {
        let num = u128::from(a - b) + i;
        // acc * num / i stays exact; split through the gcd to delay overflow.
        let g = num_integer::gcd(acc, i);
        let (acc_r, i_r) = (acc / g, i / g);
        let num_r = num / i_r;
        debug_assert_eq!(num % i_r, 0);
        acc = acc_r.checked_mul(num_r)?;
    }
    Some(acc)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}
