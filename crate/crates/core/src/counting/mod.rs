//! Exact counts of the composition families.
//!
//! | family | counts                                                         |
//! |--------|----------------------------------------------------------------|
//! | `A`    | `(k+1)`-compositions `(x, y_1..y_k)` with `gcd(x, y_i) = 1`      |
//! | `B`    | `k`-compositions with pairwise coprime parts                     |
//! | `K`    | all `(k+1)`-compositions, `C(n-1, k)`                            |
//! | `U`    | generalized `(k+1)`-compositions allowing zeros, `C(n+k, k)`     |
//! | `Kd`   | `(k+1)`-compositions with `d ∣ x` and `d ∣ y_1⋯y_k`              |
//! | `Bd`   | `k`-compositions where no prime of `d` divides two parts        |
//!
//! No floating point is used here. All results are [`ExactCount`]s.

mod oracle;
mod per_head;
mod residue;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use oracle::{count_a_oracle, count_b_oracle, count_bd_oracle, count_kd_oracle};
pub use per_head::count_a_per_head;
pub use residue::{count_a_moebius, count_a_moebius_batch, count_kd_residue_dp, ResidueDistribution};

use crate::arith::{binomial, signed_divisors, squarefree_primes, ExactCount, FactorTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompositionFamily {
    A,
    B,
    K,
    U,
    Kd,
    Bd,
}

impl CompositionFamily {
    pub const ALL: [CompositionFamily; 6] = [Self::A, Self::B, Self::K, Self::U, Self::Kd, Self::Bd];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::K => "K",
            Self::U => "U",
            Self::Kd => "Kd",
            Self::Bd => "Bd",
        }
    }

    pub fn needs_modulus(self) -> bool {
        matches!(self, Self::Kd | Self::Bd)
    }

    /// Default algorithm; the fastest exact method available for `k`.
    pub fn default_method(self, k: u32) -> CountMethod {
        match self {
            Self::A => CountMethod::MoebiusExact,
            Self::B if k == 2 => CountMethod::MoebiusExact,
            Self::B | Self::Bd => CountMethod::Oracle,
            Self::K | Self::U => CountMethod::ClosedForm,
            Self::Kd => CountMethod::ResidueDp,
        }
    }

    /// Whether `method` can evaluate this family at `k`.
    pub fn supports(self, method: CountMethod, k: u32) -> bool {
        use CountMethod::*;
        match self {
            Self::A => matches!(method, Oracle | MoebiusExact | PerHeadDp),
            Self::B => method == Oracle || (method == MoebiusExact && k == 2),
            Self::K => matches!(method, Oracle | ClosedForm),
            Self::U => method == ClosedForm,
            Self::Kd => matches!(method, Oracle | ResidueDp),
            Self::Bd => method == Oracle,
        }
    }
}

impl fmt::Display for CompositionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CompositionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            "K" | "k" => Ok(Self::K),
            "U" | "u" => Ok(Self::U),
            "Kd" | "K_d" | "kd" => Ok(Self::Kd),
            "Bd" | "B_d" | "bd" => Ok(Self::Bd),
            other => Err(Error::Argument(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountMethod {
    Oracle,
    MoebiusExact,
    ResidueDp,
    PerHeadDp,
    ClosedForm,
}

impl CountMethod {
    pub const ALL: [CountMethod; 5] = [
        Self::Oracle,
        Self::MoebiusExact,
        Self::ResidueDp,
        Self::PerHeadDp,
        Self::ClosedForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Oracle => "oracle",
            Self::MoebiusExact => "moebius",
            Self::ResidueDp => "residue-dp",
            Self::PerHeadDp => "per-head",
            Self::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Argument(format!("unknown method `{s}`")))
    }
}

/// Work limits. Exceeding one is an error, never a truncated answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Most compositions an oracle may enumerate.
    pub enumeration: u64,
    /// Largest `n` for the fast `A` algorithms.
    pub fast_n_max: u64,
    /// Largest `k` for the fast `A` algorithms.
    pub fast_k_max: u32,
    /// Cap on `k · d · 2^ω(d)` for one residue table.
    pub dp_states: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            enumeration: 10_000_000,
            fast_n_max: 3000,
            fast_k_max: 5,
            dp_states: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionQuery {
    pub family: CompositionFamily,
    pub k: u32,
    pub n: u64,
    pub d: Option<u64>,
}

impl CompositionQuery {
    pub fn new(family: CompositionFamily, k: u32, n: u64, d: Option<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("k must be positive".into()));
        }
        if matches!(family, CompositionFamily::B | CompositionFamily::Bd) && k < 2 {
            return Err(Error::Argument(format!("family {family} needs k ≥ 2")));
        }
        if n == 0 && family != CompositionFamily::U {
            return Err(Error::Argument("n must be positive".into()));
        }
        match (family.needs_modulus(), d) {
            (true, None) => return Err(Error::Argument(format!("family {family} needs a modulus d"))),
            (false, Some(_)) => return Err(Error::Argument(format!("family {family} takes no modulus"))),
            (true, Some(0)) => return Err(Error::Argument("d must be positive".into())),
            _ => {}
        }
        Ok(Self { family, k, n, d })
    }

    pub fn count(&self, method: CountMethod, table: &FactorTable, budget: &Budget) -> Result<ExactCount> {
        use CompositionFamily as F;
        use CountMethod as M;
        let (k, n) = (self.k, self.n);
        if !self.family.supports(method, k) {
            return Err(Error::Argument(format!(
                "method {method} does not apply to family {} at k={k}",
                self.family
            )));
        }
        match (self.family, method) {
            (F::A, M::Oracle) => count_a_oracle(k, n, budget),
            (F::A, M::MoebiusExact) => count_a_moebius(k, n, table, budget),
            (F::A, M::PerHeadDp) => count_a_per_head(k, n, table, budget),
            (F::B, M::Oracle) => count_b_oracle(k, n, budget),
            (F::B, M::MoebiusExact) => count_b2(n, table),
            (F::K, M::ClosedForm) => Ok(count_k_compositions(k, n)),
            (F::K, M::Oracle) => oracle::count_compositions(n, u64::from(k) + 1, budget, |_| true),
            (F::U, M::ClosedForm) => Ok(count_generalized_compositions(k, n)),
            (F::Kd, M::Oracle) => count_kd_oracle(k, self.modulus(), n, table, budget),
            (F::Kd, M::ResidueDp) => count_kd_residue_dp(k, self.modulus(), n, table, budget),
            (F::Bd, M::Oracle) => count_bd_oracle(k, self.modulus(), n, table, budget),
            _ => unreachable!("support table covers every pair"),
        }
    }

    fn modulus(&self) -> u64 {
        self.d.expect("validated at construction")
    }
}

/// `K_k(n) = C(n-1, k)`.
pub fn count_k_compositions(k: u32, n: u64) -> ExactCount {
    if n == 0 {
        return ExactCount::zero();
    }
    binomial(n - 1, u64::from(k))
}

/// `U_k(n) = C(n+k, k)`.
pub fn count_generalized_compositions(k: u32, n: u64) -> ExactCount {
    binomial(n + u64::from(k), u64::from(k))
}

/// `B_2(n) = Σ_{g ∣ n} μ(g)(n/g - 1)`, which is `φ(n)` for `n ≥ 2`.
pub fn count_b2(n: u64, table: &FactorTable) -> Result<ExactCount> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    let primes = table.distinct_primes(n)?;
    let mut total: i128 = 0;
    for (g, mu) in signed_divisors(&primes) {
        total += i128::from(mu) * i128::from(n / g - 1);
    }
    Ok(ExactCount::from(u128::try_from(total).expect("count is nonnegative")))
}

/// Rejects non-square-free moduli before any counting happens.
pub fn check_modulus(d: u64, table: &FactorTable) -> Result<()> {
    squarefree_primes(d, table).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(count_k_compositions(2, 5), ExactCount::from(6u64));
        assert_eq!(count_k_compositions(2, 2), ExactCount::zero());
        assert_eq!(count_k_compositions(4, 40), ExactCount::from(82251u64));
        assert_eq!(count_generalized_compositions(2, 0), ExactCount::from(1u64));
        assert_eq!(count_generalized_compositions(2, 3), ExactCount::from(10u64));
        assert_eq!(count_generalized_compositions(3, 10), ExactCount::from(286u64));
    }

    #[test]
    fn closed_forms_match_enumeration() {
        let b = Budget::default();
        for k in 1..=4u32 {
            for n in 1..=25u64 {
                let e = oracle::count_compositions(n, u64::from(k) + 1, &b, |_| true).unwrap();
                assert_eq!(e, count_k_compositions(k, n));
                // Shifting every part by one maps generalized compositions of n
                // onto compositions of n + k + 1.
                assert_eq!(count_generalized_compositions(k, n), count_k_compositions(k, n + u64::from(k) + 1));
            }
        }
    }

    #[test]
    fn b2_fast_path() {
        let t = FactorTable::build(5000).unwrap();
        let b = Budget::default();
        for n in 1..=2000u64 {
            let fast = count_b2(n, &t).unwrap();
            let phi = if n == 1 { 0 } else { (1..=n).filter(|&x| crate::arith::gcd(x, n) == 1).count() as u64 };
            assert_eq!(fast, ExactCount::from(phi), "n={n}");
            if n <= 200 {
                assert_eq!(fast, count_b_oracle(2, n, &b).unwrap());
            }
        }
    }

    #[test]
    fn base_cases() {
        let t = FactorTable::build(1000).unwrap();
        let b = Budget::default();
        for k in 1..=5u32 {
            let n = u64::from(k);
            assert_eq!(count_a_moebius(k, n + 1, &t, &b).unwrap(), ExactCount::from(1u64));
            for m in 1..=n {
                assert!(count_a_moebius(k, m, &t, &b).unwrap().is_zero());
            }
            if k >= 2 {
                assert_eq!(count_b_oracle(k, n, &b).unwrap(), ExactCount::from(1u64));
            }
        }
    }

    #[test]
    fn containment_chain() {
        let t = FactorTable::build(1000).unwrap();
        let b = Budget::default();
        for k in 2..=4u32 {
            for n in u64::from(k)..=24 {
                let bk = count_b_oracle(k, n, &b).unwrap();
                let top = count_k_compositions(k - 1, n);
                for d in (1..=n).filter(|&d| check_modulus(d, &t).is_ok()) {
                    let bd = count_bd_oracle(k, d, n, &t, &b).unwrap();
                    assert!(bk <= bd && bd <= top, "k={k} d={d} n={n}");
                }
                assert_eq!(count_bd_oracle(k, 1, n, &t, &b).unwrap(), top);
            }
        }
    }

    #[test]
    fn query_validation_and_dispatch() {
        use CompositionFamily as F;
        let t = FactorTable::build(1000).unwrap();
        let b = Budget::default();
        assert!(CompositionQuery::new(F::B, 1, 5, None).is_err());
        assert!(CompositionQuery::new(F::Kd, 2, 5, None).is_err());
        assert!(CompositionQuery::new(F::A, 2, 5, Some(2)).is_err());
        assert!(CompositionQuery::new(F::A, 0, 5, None).is_err());
        let q = CompositionQuery::new(F::Bd, 2, 10, Some(24)).unwrap();
        assert!(matches!(q.count(CountMethod::Oracle, &t, &b), Err(Error::NotSquareFree(24))));
        let q = CompositionQuery::new(F::U, 2, 3, None).unwrap();
        assert!(q.count(CountMethod::Oracle, &t, &b).is_err());
        for family in F::ALL {
            let k = 3;
            let d = family.needs_modulus().then_some(6);
            let q = CompositionQuery::new(family, k, 14, d).unwrap();
            let methods: Vec<_> = CountMethod::ALL.into_iter().filter(|&m| family.supports(m, k)).collect();
            assert!(methods.contains(&family.default_method(k)));
            let values: Vec<_> = methods.iter().map(|&m| q.count(m, &t, &b).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]), "{family}: {values:?}");
        }
    }

    #[test]
    fn names_round_trip() {
        for f in CompositionFamily::ALL {
            assert_eq!(f.as_str().parse::<CompositionFamily>().unwrap(), f);
        }
        for m in CountMethod::ALL {
            assert_eq!(m.as_str().parse::<CountMethod>().unwrap(), m);
        }
    }
}
