//! Exact `A_k(n)` by fixing the head: for each `x`, count the
//! `k`-compositions of `n - x` whose parts avoid every prime of `x`.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::Budget;
use crate::arith::{signed_divisors, ExactCount, FactorTable};
use crate::error::{Error, Result};

/// Compositions of `total` into `parts` parts, each coprime to the product
/// of `primes`. Built one part at a time, where the generating series of an
/// admissible part is `Σ_g μ(g) Σ_{j ≥ 1} t^{jg}`.
fn coprime_part_compositions(total: usize, parts: u32, primes: &[u64]) -> i128 {
    let signed = signed_divisors(primes);
    let mut current = vec![0i128; total + 1];
    current[0] = 1;
    let mut prefix = vec![0i128; total + 1];
    for _ in 0..parts {
        let mut next = vec![0i128; total + 1];
        for &(g, mu) in &signed {
            let g = g as usize;
            if g > total {
                continue;
            }
            for s in 0..=total {
                prefix[s] = current[s] + if s >= g { prefix[s - g] } else { 0 };
            }
            for s in g..=total {
                next[s] += i128::from(mu) * prefix[s - g];
            }
        }
        current = next;
    }
    current[total]
}

pub fn count_a_per_head(k: u32, n: u64, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    if k > budget.fast_k_max || n > budget.fast_n_max {
        return Err(Error::Budget {
            what: "fast exact count",
            needed: format!("k={k}, n={n}"),
            budget: format!("k ≤ {}, n ≤ {}", budget.fast_k_max, budget.fast_n_max),
        });
    }
    // Counts stay below C(n, k) times 2^ω, far inside i128 for these sizes.
    if u64::from(k) * u64::from(64 - n.leading_zeros()) + 24 > 120 {
        return Err(Error::Overflow("per-head count exceeds 120-bit range"));
    }
    table.check(n.max(2))?;
    if n <= u64::from(k) {
        return Ok(ExactCount::zero());
    }
    let heads: Vec<u64> = (1..=n - u64::from(k)).collect();
    let partial = heads
        .par_iter()
        .map(|&x| -> Result<BigUint> {
            let primes = table.distinct_primes(x)?;
            let c = coprime_part_compositions((n - x) as usize, k, &primes);
            Ok(BigUint::try_from(c).expect("nonnegative count"))
        })
        .try_reduce(BigUint::default, |a, b| Ok(a + b))?;
    Ok(ExactCount::new(partial))
}
