//! Brute-force enumeration oracles. Every composition in range is generated
//! and tested directly against the defining condition.

use rayon::prelude::*;

use super::Budget;
use crate::arith::{binomial_u128, gcd, squarefree_primes, ExactCount, FactorTable};
use crate::error::{Error, Result};

fn check_enumeration(n: u64, parts: u64, budget: &Budget) -> Result<()> {
    let size = if n == 0 { Some(0) } else { binomial_u128(n - 1, parts - 1) };
    match size {
        Some(s) if s <= u128::from(budget.enumeration) => Ok(()),
        _ => Err(Error::Budget {
            what: "composition enumeration",
            needed: size.map_or_else(|| "more than 2^128".to_string(), |s| s.to_string()),
            budget: budget.enumeration.to_string(),
        }),
    }
}

fn visit<F: Fn(&[u64]) -> bool>(rest: u64, left: u64, buf: &mut Vec<u64>, pred: &F, count: &mut u64) {
    if left == 1 {
        buf.push(rest);
        if pred(buf) {
            *count += 1;
        }
        buf.pop();
        return;
    }
    for part in 1..=rest - (left - 1) {
        buf.push(part);
        visit(rest - part, left - 1, buf, pred, count);
        buf.pop();
    }
}

/// Counts the `parts`-compositions of `n` satisfying `pred`, splitting the
/// work by first part.
pub(crate) fn count_compositions<F>(n: u64, parts: u64, budget: &Budget, pred: F) -> Result<ExactCount>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    assert!(parts >= 1);
    if n < parts {
        return Ok(ExactCount::zero());
    }
    check_enumeration(n, parts, budget)?;
    if parts == 1 {
        return Ok(ExactCount::from(u64::from(pred(&[n]))));
    }
    let total: u64 = (1..=n - (parts - 1))
        .into_par_iter()
        .map(|first| {
            let mut buf = Vec::with_capacity(parts as usize);
            buf.push(first);
            let mut count = 0;
            visit(n - first, parts - 1, &mut buf, &pred, &mut count);
            count
        })
        .sum();
    Ok(ExactCount::from(total))
}

/// `A_k(n)`: `(k+1)`-compositions `(x, y_1..y_k)` with `gcd(x, y_i) = 1`.
pub fn count_a_oracle(k: u32, n: u64, budget: &Budget) -> Result<ExactCount> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    count_compositions(n, u64::from(k) + 1, budget, |c| {
        c[1..].iter().all(|&y| gcd(c[0], y) == 1)
    })
}

/// `B_k(n)`: `k`-compositions with pairwise coprime parts.
pub fn count_b_oracle(k: u32, n: u64, budget: &Budget) -> Result<ExactCount> {
    if k < 2 {
        return Err(Error::Argument("family B needs k ≥ 2".into()));
    }
    count_compositions(n, u64::from(k), budget, |c| {
        (0..c.len()).all(|i| (i + 1..c.len()).all(|j| gcd(c[i], c[j]) == 1))
    })
}

/// `K_{k,d}(n)`: `(k+1)`-compositions with `d | x` and `d | y_1⋯y_k`.
pub fn count_kd_oracle(k: u32, d: u64, n: u64, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let primes = squarefree_primes(d, table)?;
    if d > n {
        return Ok(ExactCount::zero());
    }
    count_compositions(n, u64::from(k) + 1, budget, |c| {
        c[0] % d == 0 && primes.iter().all(|&p| c[1..].iter().any(|&y| y % p == 0))
    })
}

/// `B_{k,d}(n)`: `k`-compositions in which no prime of `d` divides two
/// distinct parts.
pub fn count_bd_oracle(k: u32, d: u64, n: u64, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
    if k < 2 {
        return Err(Error::Argument("family B_d needs k ≥ 2".into()));
    }
    let primes = squarefree_primes(d, table)?;
    count_compositions(n, u64::from(k), budget, |c| {
        primes
            .iter()
            .all(|&p| c.iter().filter(|&&x| x % p == 0).count() <= 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn a_examples() {
        assert_eq!(count_a_oracle(1, 10, &b()).unwrap(), ExactCount::from(4u64));
        assert_eq!(count_a_oracle(2, 3, &b()).unwrap(), ExactCount::from(1u64));
        assert_eq!(count_a_oracle(2, 5, &b()).unwrap(), ExactCount::from(4u64));
        assert_eq!(count_a_oracle(2, 4, &b()).unwrap(), ExactCount::from(3u64));
        assert_eq!(count_a_oracle(3, 3, &b()).unwrap(), ExactCount::zero());
    }

    #[test]
    fn b_examples() {
        assert_eq!(count_b_oracle(2, 12, &b()).unwrap(), ExactCount::from(4u64));
        assert_eq!(count_b_oracle(3, 3, &b()).unwrap(), ExactCount::from(1u64));
        assert_eq!(count_b_oracle(3, 6, &b()).unwrap(), ExactCount::from(9u64));
        assert!(count_b_oracle(1, 6, &b()).is_err());
    }

    #[test]
    fn kd_and_bd_examples() {
        let t = FactorTable::build(1000).unwrap();
        assert_eq!(count_kd_oracle(2, 1, 5, &t, &b()).unwrap(), ExactCount::from(6u64));
        assert_eq!(count_kd_oracle(2, 2, 5, &t, &b()).unwrap(), ExactCount::from(2u64));
        assert_eq!(count_kd_oracle(2, 7, 5, &t, &b()).unwrap(), ExactCount::zero());
        assert!(matches!(count_kd_oracle(2, 4, 5, &t, &b()), Err(Error::NotSquareFree(4))));
        assert_eq!(count_bd_oracle(3, 1, 10, &t, &b()).unwrap(), ExactCount::from(36u64));
        let v = count_bd_oracle(3, 30, 10, &t, &b()).unwrap();
        assert!(v <= ExactCount::from(36u64));
        assert!(matches!(count_bd_oracle(2, 24, 10, &t, &b()), Err(Error::NotSquareFree(24))));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget {
            enumeration: 100,
            ..Budget::default()
        };
        assert!(matches!(count_a_oracle(3, 40, &tight), Err(Error::Budget { .. })));
    }
}
