use crate::error::{Error, Result};

/// Largest limit accepted by [`FactorTable::build`].
///
/// The table stores the least prime factor of every composite as a `u16`
/// (composites up to `limit` have a factor `≤ √limit < 2^16`) plus the list
/// of primes as `u32`, so memory is roughly `2·limit + 4·π(limit)` bytes:
/// about 460 MB at the ceiling.
pub const MAX_TABLE_LIMIT: u64 = 200_000_000;

/// Least-prime-factor table and prime list for `2..=limit`.
#[derive(Clone, Debug)]
pub struct FactorTable {
    limit: u64,
    // 0 marks a prime (or 0/1); otherwise the least prime factor.
    lpf: Vec<u16>,
    primes: Vec<u32>,
}

impl FactorTable {
    pub fn build(limit: u64) -> Result<Self> {
        if !(2..=MAX_TABLE_LIMIT).contains(&limit) {
            return Err(Error::Config(format!(
                "factor table limit must lie in [2, {MAX_TABLE_LIMIT}], got {limit}"
            )));
        }
        let len = limit as usize + 1;
        let mut lpf = vec![0u16; len];
        let mut p = 2usize;
        while p * p < len {
            if lpf[p] == 0 {
                let mut m = p * p;
                while m < len {
                    if lpf[m] == 0 {
                        lpf[m] = p as u16;
                    }
                    m += p;
                }
            }
            p += 1;
        }
        let primes = (2..len)
            .filter(|&m| lpf[m] == 0)
            .map(|m| m as u32)
            .collect();
        Ok(FactorTable { limit, lpf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes `≤ limit`, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, m: u64) -> bool {
        m >= 2 && m <= self.limit && self.lpf[m as usize] == 0
    }

    /// Least prime factor of `m`, for `2 ≤ m ≤ limit`.
    pub fn smallest_prime_factor(&self, m: u64) -> Result<u64> {
        self.check(m)?;
        if m < 2 {
            return Err(Error::Argument(format!("{m} has no prime factor")));
        }
        let f = self.lpf[m as usize];
        Ok(if f == 0 { m } else { u64::from(f) })
    }

    pub(crate) fn check(&self, m: u64) -> Result<()> {
        if m > self.limit {
            Err(Error::OutOfRange {
                value: m,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Prime factorization of `m`; `1` yields the empty factorization.
    pub fn factorize(&self, m: u64) -> Result<Factorization> {
        if m == 0 {
            return Err(Error::Argument("cannot factorize 0".into()));
        }
        self.check(m)?;
        let mut prime_powers: Vec<(u64, u32)> = Vec::new();
        let mut rest = m;
        while rest > 1 {
            let p = self.smallest_prime_factor(rest)?;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_powers.push((p, e));
        }
        Ok(Factorization {
            value: m,
            prime_powers,
        })
    }

    /// Distinct primes dividing `m`, ascending.
    pub fn distinct_primes(&self, m: u64) -> Result<Vec<u64>> {
        Ok(self
            .factorize(m)?
            .prime_powers
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }
}

/// Prime factorization with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub prime_powers: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn omega(&self) -> usize {
        self.prime_powers.len()
    }

    pub fn radical(&self) -> u64 {
        self.prime_powers.iter().map(|&(p, _)| p).product()
    }

    pub fn is_square_free(&self) -> bool {
        self.prime_powers.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_powers.iter().map(|&(p, _)| p)
    }
}

/// Sieve for primes in arbitrary windows `[lo, hi)` without a factor array.
///
/// Only the base primes up to `√upper` are held in memory; each window is
/// sieved independently, so windows can be processed in parallel.
#[derive(Clone, Debug)]
pub struct SegmentedSieve {
    upper: u64,
    base: Vec<u64>,
}

impl SegmentedSieve {
    /// Prepares base primes for windows ending at or below `upper`.
    pub fn new(upper: u64) -> Self {
        let root = integer_sqrt(upper) + 1;
        let mut flags = vec![true; root as usize + 1];
        let mut base = Vec::new();
        for i in 2..=root as usize {
            if flags[i] {
                base.push(i as u64);
                let mut m = i * i;
                while m <= root as usize {
                    flags[m] = false;
                    m += i;
                }
            }
        }
        SegmentedSieve { upper, base }
    }

    pub fn upper(&self) -> u64 {
        self.upper
    }

    /// Primes in `[lo, hi)`, ascending. Requires `hi ≤ upper + 1`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        assert!(hi <= self.upper + 1, "window beyond sieve upper bound");
        if hi <= lo {
            return Vec::new();
        }
        let lo = lo.max(2);
        if hi <= lo {
            return Vec::new();
        }
        let len = (hi - lo) as usize;
        let mut composite = vec![false; len];
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m < hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo + i as u64)
            .collect()
    }
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
