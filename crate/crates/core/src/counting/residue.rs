//! Exact `K_{k,d}(n)` through the distribution of residue tuples mod `d`,
//! and `A_k(n)` through the signed divisor sum over square-free `d`.
//!
//! Write `x = dX` and `y_j = y_j* + dY_j` with `y_j* ∈ [0, d)`. Every prime
//! of `d` must divide some `y_j*`. Once the residues are fixed with integer
//! sum `s` and `z` zero entries, the remaining freedom is a generalized
//! composition of `(n - s)/d - 1 - z` into `k + 1` parts, because `X ≥ 1`
//! and `Y_j ≥ 1` whenever `y_j* = 0`. The residue distribution depends on
//! `k` and `d` only, so a single table serves every `n`.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::Budget;
use crate::arith::{binomial, binomial_u128, signed_divisors, squarefree_primes, squarefree_range};
use crate::arith::{ExactCount, FactorTable};
use crate::error::{Error, Result};

/// Headroom kept below `i128::MAX` for intermediate sums.
const I128_BITS: u32 = 120;

/// Number of residue tuples in `[0, d)^k` covering every prime of `d`,
/// indexed by zero count and integer sum.
#[derive(Clone, Debug)]
pub struct ResidueDistribution {
    k: u32,
    d: u64,
    counts: Vec<Vec<u128>>,
}

/// Multiplies `a` by `Σ_g μ(g) Σ_{1 ≤ j < d/g} x^{jg}`, the generating
/// polynomial of residues in `[1, d)` coprime to a fixed square-free `e`.
fn mul_window(a: &[i128], d: usize, signed: &[(u64, i8)]) -> Vec<i128> {
    let len = a.len() + d - 1;
    let mut out = vec![0i128; len];
    let mut prefix = vec![0i128; len];
    for &(g, mu) in signed {
        let g = g as usize;
        for s in 0..len {
            let own = a.get(s).copied().unwrap_or(0);
            prefix[s] = own + if s >= g { prefix[s - g] } else { 0 };
        }
        for s in g..len {
            let window = prefix[s - g] - if s >= d { prefix[s - d] } else { 0 };
            out[s] += i128::from(mu) * window;
        }
    }
    out
}

fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

impl ResidueDistribution {
    pub fn new(k: u32, d: u64, table: &FactorTable) -> Result<Self> {
        let primes = squarefree_primes(d, table)?;
        Self::from_primes(k, d, &primes)
    }

    /// `primes` must be the prime factors of the square-free `d`.
    pub(crate) fn from_primes(k: u32, d: u64, primes: &[u64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("k must be positive".into()));
        }
        if u64::from(k) * u64::from(bit_len(d)) + primes.len() as u64 + 2 > u64::from(I128_BITS) {
            return Err(Error::Overflow("residue distribution exceeds 120-bit range"));
        }
        let du = usize::try_from(d).map_err(|_| Error::Overflow("modulus too large"))?;
        let ku = k as usize;
        let len = ku * (du - 1) + 1;

        let unit = [(1u64, 1i8)];
        let mut bounded: Vec<Vec<i128>> = vec![vec![1]];
        for j in 1..=ku {
            let next = mul_window(&bounded[j - 1], du, &unit);
            bounded.push(next);
        }

        let mut counts = vec![vec![0u128; len]; ku + 1];
        for z in 1..=ku {
            let choose = binomial_u128(u64::from(k), z as u64).expect("small binomial") as i128;
            for (s, &v) in bounded[ku - z].iter().enumerate() {
                counts[z][s] = u128::try_from(choose * v).expect("nonnegative count");
            }
        }

        let mut zero_row = vec![0i128; len];
        for (e, mu_e) in signed_divisors(primes) {
            let e_primes: Vec<u64> = primes.iter().copied().filter(|p| e % p == 0).collect();
            let signed = signed_divisors(&e_primes);
            let mut acc = vec![1i128];
            for _ in 0..k {
                acc = mul_window(&acc, du, &signed);
            }
            for (s, v) in acc.into_iter().enumerate() {
                zero_row[s] += i128::from(mu_e) * v;
            }
        }
        for (s, v) in zero_row.into_iter().enumerate() {
            counts[0][s] = u128::try_from(v).expect("inclusion-exclusion yields a count");
        }
        Ok(Self { k, d, counts })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.d
    }

    /// Tuples with `z` zero residues summing to `s`.
    pub fn get(&self, zeros: u32, sum: u64) -> u128 {
        self.counts
            .get(zeros as usize)
            .and_then(|row| row.get(sum as usize))
            .copied()
            .unwrap_or(0)
    }

    fn congruent_sums(&self, n: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let r0 = n % self.d;
        (0..u64::from(self.k))
            .map(move |t| (t, r0 + t * self.d))
            .filter(move |&(_, s)| (s as usize) < self.counts[0].len())
    }

    /// Residue tuples whose sum is congruent to `n` mod `d`, ignoring the
    /// lift to positive parts.
    pub fn congruent_tuples(&self, n: u64) -> u128 {
        let mut total = 0u128;
        for (_, s) in self.congruent_sums(n) {
            for z in 0..=self.k {
                total += self.get(z, s);
            }
        }
        total
    }

    /// `K_{k,d}(n)`; zero when `d > n`.
    pub fn kd_count(&self, n: u64) -> ExactCount {
        if self.d > n {
            return ExactCount::zero();
        }
        let q = n / self.d;
        let k = u64::from(self.k);
        let mut small = 0u128;
        let mut total = ExactCount::zero();
        for (t, s) in self.congruent_sums(n) {
            for z in 0..=self.k {
                let c = self.get(z, s);
                if c == 0 || q < t + 1 + u64::from(z) {
                    continue;
                }
                let free = q - t - 1 - u64::from(z);
                match binomial_u128(free + k, k).and_then(|b| b.checked_mul(c)) {
                    Some(v) if small.checked_add(v).is_some() => small += v,
                    _ => total += binomial(free + k, k) * ExactCount::from(c),
                }
            }
        }
        total + ExactCount::from(small)
    }
}

fn check_fast_budget(k: u32, n: u64, budget: &Budget) -> Result<()> {
    if k > budget.fast_k_max || n > budget.fast_n_max {
        return Err(Error::Budget {
            what: "fast exact count",
            needed: format!("k={k}, n={n}"),
            budget: format!("k ≤ {}, n ≤ {}", budget.fast_k_max, budget.fast_n_max),
        });
    }
    Ok(())
}

fn check_states(k: u32, d: u64, omega: usize, budget: &Budget) -> Result<()> {
    let states = u128::from(k) * u128::from(d) << omega.min(64);
    if states > u128::from(budget.dp_states) {
        return Err(Error::Budget {
            what: "residue table states",
            needed: states.to_string(),
            budget: budget.dp_states.to_string(),
        });
    }
    Ok(())
}

/// Exact `K_{k,d}(n)` without enumerating compositions.
pub fn count_kd_residue_dp(k: u32, d: u64, n: u64, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
    let primes = squarefree_primes(d, table)?;
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    if d > n {
        return Ok(ExactCount::zero());
    }
    check_states(k, d, primes.len(), budget)?;
    Ok(ResidueDistribution::from_primes(k, d, &primes)?.kd_count(n))
}

/// Exact `A_k(n)` as `Σ_d μ(d) K_{k,d}(n)` over square-free `d ≤ n`.
pub fn count_a_moebius(k: u32, n: u64, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
    Ok(count_a_moebius_batch(k, &[n], table, budget)?.remove(0))
}

/// [`count_a_moebius`] for many `n` at once. Each residue table is built
/// once and reused for every `n ≥ d`.
pub fn count_a_moebius_batch(k: u32, ns: &[u64], table: &FactorTable, budget: &Budget) -> Result<Vec<ExactCount>> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let Some(&max_n) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    check_fast_budget(k, max_n, budget)?;
    if max_n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    table.check(max_n)?;
    let ds: Vec<_> = squarefree_range(max_n, table)?.collect();
    for sf in &ds {
        check_states(k, sf.d, sf.primes.len(), budget)?;
    }
    let zeros = || vec![BigInt::zero(); ns.len()];
    let sums = ds
        .par_iter()
        .try_fold(zeros, |mut acc, sf| -> Result<Vec<BigInt>> {
            let dist = ResidueDistribution::from_primes(k, sf.d, &sf.primes)?;
            for (slot, &n) in acc.iter_mut().zip(ns) {
                if n >= sf.d {
                    let v = dist.kd_count(n).to_bigint();
                    if sf.mu > 0 {
                        *slot += v;
                    } else {
                        *slot -= v;
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(zeros, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            Ok(a)
        })?;
    Ok(sums
        .into_iter()
        .map(|v| ExactCount::from_signed(v).expect("signed divisor sum is a count"))
        .collect())
}
