//! Counting solutions of `y_1 + ⋯ + y_k ≡ n (mod p)` over `{0, …, p−1}^k`
//! under a constraint on how many coordinates are zero.
//!
//! [`count_congruence_bruteforce`] enumerates tuples and never touches
//! [`crate::polyfam`]; [`count_congruence_closed`] dispatches to the
//! polynomial families. The two are compared by the test suites.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::polyfam::{FamilyTag, PolyFamily};

/// Default ceiling on `p^k` for enumeration.
pub const DEFAULT_CONGRUENCE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZeroMode {
    AtLeastOneZero,
    NoZero,
    AtMostOneZero,
    Unrestricted,
}

impl ZeroMode {
    pub const ALL: [ZeroMode; 4] = [
        ZeroMode::AtLeastOneZero,
        ZeroMode::NoZero,
        ZeroMode::AtMostOneZero,
        ZeroMode::Unrestricted,
    ];

    fn admits(self, zeros: u32) -> bool {
        match self {
            ZeroMode::AtLeastOneZero => zeros >= 1,
            ZeroMode::NoZero => zeros == 0,
            ZeroMode::AtMostOneZero => zeros <= 1,
            ZeroMode::Unrestricted => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongruenceSpec {
    pub p: u64,
    pub k: u32,
    pub n_residue: u64,
    pub mode: ZeroMode,
}

impl CongruenceSpec {
    pub fn new(p: u64, k: u32, n_residue: u64, mode: ZeroMode) -> Result<Self> {
        if p < 2 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Argument("k must be positive".into()));
        }
        if n_residue >= p {
            return Err(Error::Argument(format!("residue {n_residue} not in [0, {}]", p - 1)));
        }
        Ok(CongruenceSpec {
            p,
            k,
            n_residue,
            mode,
        })
    }
}

/// Enumerates the first `k−1` coordinates and solves for the last one.
pub fn count_congruence_bruteforce(spec: &CongruenceSpec) -> Result<u64> {
    count_congruence_bruteforce_with_budget(spec, DEFAULT_CONGRUENCE_BUDGET)
}

pub fn count_congruence_bruteforce_with_budget(spec: &CongruenceSpec, budget: u64) -> Result<u64> {
    let CongruenceSpec {
        p,
        k,
        n_residue,
        mode,
    } = *spec;
    let size = p.checked_pow(k).filter(|&s| s <= budget);
    if size.is_none() {
        return Err(Error::Budget {
            what: "congruence enumeration (p^k)",
            needed: format!("{p}^{k}"),
            budget: budget.to_string(),
        });
    }
    let free = (k - 1) as usize;
    let mut digits = vec![0u64; free];
    let mut count = 0u64;
    loop {
        let partial: u64 = digits.iter().sum::<u64>() % p;
        let last = (n_residue + p - partial) % p;
        let zeros = digits.iter().filter(|&&y| y == 0).count() as u32 + u32::from(last == 0);
        if mode.admits(zeros) {
            count += 1;
        }
        // Odometer increment over {0..p-1}^(k-1).
        let mut i = 0;
        loop {
            if i == free {
                return Ok(count);
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Closed-form count from the polynomial families.
///
/// `p_divides_n` must agree with `n_residue == 0`.
pub fn count_congruence_closed(spec: &CongruenceSpec, p_divides_n: bool) -> Result<BigUint> {
    if p_divides_n != (spec.n_residue == 0) {
        return Err(Error::Argument(format!(
            "p_divides_n = {p_divides_n} contradicts residue {}",
            spec.n_residue
        )));
    }
    let tag = match (spec.mode, p_divides_n) {
        (ZeroMode::AtLeastOneZero, true) => FamilyTag::Phi,
        (ZeroMode::AtLeastOneZero, false) => FamilyTag::Psi,
        (ZeroMode::NoZero, true) => FamilyTag::S,
        (ZeroMode::NoZero, false) => FamilyTag::W,
        (ZeroMode::AtMostOneZero, true) => FamilyTag::Eta,
        (ZeroMode::AtMostOneZero, false) => FamilyTag::Delta,
        (ZeroMode::Unrestricted, _) => return Ok(BigUint::from(spec.p).pow(spec.k - 1)),
    };
    PolyFamily::with_k_max(tag, spec.k, u32::MAX)?.eval(spec.p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, k: u32, n: u64, mode: ZeroMode) -> CongruenceSpec {
        CongruenceSpec::new(p, k, n, mode).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let b = |s| count_congruence_bruteforce(&s).unwrap();
        assert_eq!(b(spec(3, 2, 1, ZeroMode::AtLeastOneZero)), 2);
        assert_eq!(b(spec(3, 2, 0, ZeroMode::Unrestricted)), 3);
        assert_eq!(b(spec(3, 3, 1, ZeroMode::AtLeastOneZero)), 6);
        assert_eq!(b(spec(3, 3, 2, ZeroMode::NoZero)), 3);
    }

    #[test]
    fn closed_examples() {
        let c = |s, f| count_congruence_closed(&s, f).unwrap();
        assert_eq!(c(spec(5, 2, 0, ZeroMode::AtMostOneZero), true), BigUint::from(4u32));
        assert_eq!(c(spec(3, 3, 2, ZeroMode::NoZero), false), BigUint::from(3u32));
        assert_eq!(c(spec(2, 4, 1, ZeroMode::AtMostOneZero), false), BigUint::from(4u32));
        assert!(count_congruence_closed(&spec(5, 2, 0, ZeroMode::NoZero), false).is_err());
    }

    #[test]
    fn spec_validation_and_budget() {
        assert!(CongruenceSpec::new(4, 2, 0, ZeroMode::NoZero).is_err());
        assert!(CongruenceSpec::new(5, 0, 0, ZeroMode::NoZero).is_err());
        assert!(CongruenceSpec::new(5, 2, 5, ZeroMode::NoZero).is_err());
        let big = spec(101, 5, 0, ZeroMode::NoZero);
        assert!(matches!(
            count_congruence_bruteforce(&big),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn k_equals_one_degenerates() {
        for p in [2u64, 3, 5] {
            for n in 0..p {
                let no_zero = count_congruence_bruteforce(&spec(p, 1, n, ZeroMode::NoZero)).unwrap();
                assert_eq!(no_zero, u64::from(n != 0));
            }
        }
    }

    #[test]
    fn oracle_equivalence_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..=5u32 {
                for n in 0..p {
                    let mut by_mode = Vec::new();
                    for mode in ZeroMode::ALL {
                        let s = spec(p, k, n, mode);
                        let brute = count_congruence_bruteforce(&s).unwrap();
                        let closed = count_congruence_closed(&s, n == 0).unwrap();
                        assert_eq!(BigUint::from(brute), closed, "p={p} k={k} n={n} {mode:?}");
                        by_mode.push(brute);
                    }
                    // Partition: at-least-one-zero + no-zero = p^(k-1).
                    assert_eq!(by_mode[0] + by_mode[1], p.pow(k - 1));
                    assert_eq!(by_mode[3], p.pow(k - 1));
                }
            }
        }
    }

    #[test]
    fn at_most_one_zero_splits_by_zero_count() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in 2..=5u32 {
                for n in 0..p {
                    let s = spec(p, k, n, ZeroMode::AtMostOneZero);
                    let total = count_congruence_bruteforce(&s).unwrap();
                    let tag = if n == 0 { FamilyTag::S } else { FamilyTag::W };
                    let cur = PolyFamily::with_k_max(tag, k, 99).unwrap().eval(p).unwrap();
                    let prev = PolyFamily::with_k_max(tag, k - 1, 99).unwrap().eval(p).unwrap();
                    assert_eq!(BigUint::from(total), cur + BigUint::from(k) * prev, "p={p} k={k} n={n}");
                }
            }
        }
    }
}
