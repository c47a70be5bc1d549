//! Invariant suites run by the `verify` command and the acceptance tests.
//!
//! Each suite sweeps a parameter box, counts the checks it performs and
//! records every failing tuple. A suite passes when no check fails.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::squarefree_primes;
use crate::bounds::{bd_estimate_holds, kd_estimate_holds, Estimator, Family};
use crate::constants::{f_factor, g_factor, omega_partial_sums_upper, theta_factor, xi_factor};
use crate::counting::{count_a_moebius_batch, count_bd_oracle, ResidueDistribution};
use crate::error::{Error, Result};
use crate::localcount::{count_congruence_bruteforce, count_congruence_closed, CongruenceSpec, ZeroMode};
use crate::polyfam::{check_identities, eval_poly, FamilyTag};
use crate::real::{Fixed, Interval};

/// Failure messages kept per suite; further failures are only counted.
const KEPT_FAILURES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma32,
    Identities,
    ThetaXi,
    Prop42,
    Prop53,
    Thm1,
    Factors,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma32,
        Suite::Identities,
        Suite::ThetaXi,
        Suite::Prop42,
        Suite::Prop53,
        Suite::Thm1,
        Suite::Factors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma32 => "lemma32",
            Suite::Identities => "identities",
            Suite::ThetaXi => "theta-xi",
            Suite::Prop42 => "prop42",
            Suite::Prop53 => "prop53",
            Suite::Thm1 => "thm1",
            Suite::Factors => "factors",
        }
    }

    /// Parameter box used when the caller does not override it.
    pub fn default_params(self) -> SuiteParams {
        let base = SuiteParams {
            pmax: 13,
            kmax: 5,
            nmax: 40,
            dmax: 30,
            xmax: 1000,
            gmax: 100_000,
        };
        match self {
            Suite::Lemma32 => base,
            Suite::Identities => SuiteParams { kmax: 12, nmax: 60, ..base },
            Suite::ThetaXi | Suite::Prop42 => SuiteParams { kmax: 4, ..base },
            Suite::Prop53 => SuiteParams { kmax: 4, nmax: 30, dmax: 10, ..base },
            Suite::Thm1 => SuiteParams { kmax: 4, nmax: 1000, ..base },
            Suite::Factors => SuiteParams { kmax: 10, nmax: 1_000_000, ..base },
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown suite `{s}`")))
    }
}

/// Sweep limits. Not every suite reads every field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Largest prime for congruence enumeration.
    pub pmax: u64,
    pub kmax: u32,
    pub nmax: u64,
    pub dmax: u64,
    /// Largest argument for the polynomial inequality sweeps.
    pub xmax: u64,
    /// Largest prime for the ratio inequality sweep.
    pub gmax: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        SuiteOutcome {
            suite,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    crate::arith::SegmentedSieve::new(limit).primes_in(2, limit + 1)
}

/// Enumerated congruence counts only: the first half of [`Suite::Lemma32`].
pub fn congruence_oracle_sweep(params: &SuiteParams) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Lemma32);
    congruence_sweep(params, &mut out)?;
    Ok(out)
}

/// Polynomial inequalities only: the second half of [`Suite::Lemma32`].
pub fn inequality_sweep(params: &SuiteParams) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(Suite::Lemma32);
    polynomial_inequalities(params, &mut out)?;
    Ok(out)
}

pub fn run_suite(suite: Suite, params: &SuiteParams, est: &Estimator) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new(suite);
    match suite {
        Suite::Lemma32 => {
            congruence_sweep(params, &mut out)?;
            polynomial_inequalities(params, &mut out)?;
        }
        Suite::Identities => identities(params, &mut out)?,
        Suite::ThetaXi => theta_xi(params, est, &mut out)?,
        Suite::Prop42 => prop42(params, est, &mut out)?,
        Suite::Prop53 => prop53(params, est, &mut out)?,
        Suite::Thm1 => thm1(params, est, &mut out)?,
        Suite::Factors => factors(params, est, &mut out)?,
    }
    Ok(out)
}

/// Enumerated congruence counts against the closed forms, plus the
/// partition `at least one zero + no zero = p^(k−1)`.
fn congruence_sweep(params: &SuiteParams, out: &mut SuiteOutcome) -> Result<()> {
    for p in primes_up_to(params.pmax) {
        for k in 1..=params.kmax {
            for n in 0..p {
                let mut counts = [0u64; 4];
                for (slot, mode) in ZeroMode::ALL.into_iter().enumerate() {
                    let spec = CongruenceSpec::new(p, k, n, mode)?;
                    let brute = count_congruence_bruteforce(&spec)?;
                    let closed = count_congruence_closed(&spec, n == 0)?;
                    out.check(BigUint::from(brute) == closed, || {
                        format!("p={p} k={k} n={n} {mode:?}: enumerated {brute}, closed form {closed}")
                    });
                    counts[slot] = brute;
                }
                out.check(counts[0] + counts[1] == p.pow(k - 1), || {
                    format!("p={p} k={k} n={n}: partition fails")
                });
            }
        }
    }
    Ok(())
}

/// Upper and lower bounds on the local families, all exact.
fn polynomial_inequalities(params: &SuiteParams, out: &mut SuiteOutcome) -> Result<()> {
    let kmax = params.kmax.max(2);
    for k in 2..=kmax {
        for x in 2..=params.xmax {
            let bound = BigUint::from(k) * BigUint::from(x).pow(k - 2);
            let phi = eval_poly(FamilyTag::Phi, k, x)?;
            let psi = eval_poly(FamilyTag::Psi, k, x)?;
            out.check(phi <= bound && psi <= bound, || format!("b) k={k} x={x}"));
        }
    }
    for p in primes_up_to(params.xmax) {
        for k in 1..=kmax {
            let top = BigUint::from(p).pow(k - 1);
            let vals = [FamilyTag::Psi, FamilyTag::Delta, FamilyTag::Phi, FamilyTag::Eta]
                .map(|t| eval_poly(t, k, p).expect("valid arguments"));
            out.check(vals.iter().all(|v| *v <= top), || format!("e) k={k} p={p}"));
            if k >= 2 {
                out.check(vals.iter().all(|v| !v.is_zero()), || format!("f) k={k} p={p}"));
            }
            if k >= 3 {
                let (delta, eta) = (&vals[1], &vals[3]);
                out.check(BigUint::from(p - 1).pow(k - 1) <= *delta && *delta < top, || {
                    format!("e) δ range k={k} p={p}")
                });
                let gap = BigUint::from(k) * BigUint::from(2u32).pow(k - 1) * BigUint::from(p).pow(k - 3);
                out.check(&top - delta <= gap && &top - eta <= gap, || format!("max) k={k} p={p}"));
            }
        }
    }
    for k in 3..=kmax {
        let c = u64::from(k) << k;
        for p in primes_up_to(params.gmax).into_iter().filter(|&p| p * p >= c) {
            let top = BigRational::from_integer(BigInt::from(p).pow(k - 1));
            let bound = BigRational::new(BigInt::from(p * p + c), BigInt::from(p * p));
            for tag in [FamilyTag::Delta, FamilyTag::Eta] {
                let v = BigRational::from_integer(BigInt::from(eval_poly(tag, k, p)?));
                out.check(&top / v <= bound, || format!("g) {tag:?} k={k} p={p}"));
            }
        }
    }
    Ok(())
}

fn identities(params: &SuiteParams, out: &mut SuiteOutcome) -> Result<()> {
    for k in 1..=params.kmax {
        for x in 2..=params.nmax.max(2) {
            out.check(check_identities(k, x)?, || format!("k={k} x={x}"));
        }
    }
    // At most one zero splits into no zero plus exactly one zero.
    for p in primes_up_to(params.nmax.max(2)) {
        for k in 2..=params.kmax {
            for (divides, tag) in [(true, FamilyTag::S), (false, FamilyTag::W)] {
                let mode_tag = if divides { FamilyTag::Eta } else { FamilyTag::Delta };
                let lhs = eval_poly(mode_tag, k, p)?;
                let rhs = eval_poly(tag, k, p)? + BigUint::from(k) * eval_poly(tag, k - 1, p)?;
                out.check(lhs == rhs, || format!("{mode_tag:?} split k={k} p={p}"));
            }
        }
    }
    Ok(())
}

fn squarefree_upto(limit: u64, est: &Estimator) -> Result<Vec<u64>> {
    Ok(crate::arith::squarefree_range(limit, est.table())?.map(|s| s.d).collect())
}

/// Residue counts against `Θ`, multiplicativity, and the size bounds on
/// `Θ` and `Ξ`.
fn theta_xi(params: &SuiteParams, est: &Estimator, out: &mut SuiteOutcome) -> Result<()> {
    let table = est.table();
    let ds = squarefree_upto(params.dmax, est)?;
    for k in 1..=params.kmax {
        for &d in &ds {
            let dist = ResidueDistribution::new(k, d, table)?;
            let omega = squarefree_primes(d, table)?.len() as u32;
            for n in 1..=params.nmax {
                let theta = theta_factor(k, n, d, table)?;
                out.check(BigUint::from(dist.congruent_tuples(n)) == theta, || {
                    format!("residue tuples vs Θ: k={k} n={n} d={d}")
                });
                if k < 2 {
                    continue;
                }
                let cap = BigUint::from(k).pow(omega) * BigUint::from(d).pow(k - 2);
                out.check(theta >= BigUint::one() && theta <= cap, || format!("Θ range k={k} n={n} d={d}"));
                let xi = xi_factor(k, n, d, table)?;
                out.check(xi >= BigUint::one() && xi <= BigUint::from(d).pow(k - 1), || {
                    format!("Ξ range k={k} n={n} d={d}")
                });
                for &e in ds.iter().filter(|&&e| e > 1 && e < d && d % e == 0) {
                    let f = d / e;
                    if crate::arith::gcd(e, f) != 1 {
                        continue;
                    }
                    let split_theta = theta_factor(k, n, e, table)? * theta_factor(k, n, f, table)?;
                    let split_xi = xi_factor(k, n, e, table)? * xi_factor(k, n, f, table)?;
                    out.check(split_theta == theta && split_xi == xi, || {
                        format!("multiplicativity k={k} n={n} d={e}·{f}")
                    });
                }
            }
        }
    }
    Ok(())
}

fn prop42(params: &SuiteParams, est: &Estimator, out: &mut SuiteOutcome) -> Result<()> {
    let table = est.table();
    for k in 1..=params.kmax {
        for d in squarefree_upto(params.dmax, est)? {
            let dist = ResidueDistribution::new(k, d, table)?;
            for n in d..=params.nmax {
                let exact = dist.kd_count(n);
                let theta = theta_factor(k, n, d, table)?;
                out.check(kd_estimate_holds(k, d, n, &exact, &theta), || {
                    format!("k={k} d={d} n={n} K={exact}")
                });
            }
        }
    }
    Ok(())
}

fn prop53(params: &SuiteParams, est: &Estimator, out: &mut SuiteOutcome) -> Result<()> {
    let table = est.table();
    for k in 3..=params.kmax {
        for d in squarefree_upto(params.dmax, est)? {
            for n in d.max(u64::from(k))..=params.nmax {
                let exact = count_bd_oracle(k, d, n, table, est.budget())?;
                let xi = xi_factor(k, n, d, table)?;
                out.check(bd_estimate_holds(k, d, n, &exact, &xi), || {
                    format!("k={k} d={d} n={n} B={exact}")
                });
            }
        }
    }
    Ok(())
}

fn thm1(params: &SuiteParams, est: &Estimator, out: &mut SuiteOutcome) -> Result<()> {
    let grid: Vec<u64> = (2..=params.nmax).collect();
    for k in 1..=params.kmax {
        let exact = count_a_moebius_batch(k, &grid, est.table(), est.budget())?;
        for (&n, count) in grid.iter().zip(exact) {
            let report = est.make_report(Family::A, k, n, None)?;
            let rhs = crate::bounds::bound_rhs_a(k, n)?;
            let lhs = report.main_term.worst_error(&count);
            out.check(crate::bounds::lhs_within(&lhs, rhs), || format!("k={k} n={n} A={count}"));
            if k == 1 {
                let exact_main = report.main_term.point == Fixed::from_integer(&count.to_bigint());
                out.check(exact_main, || format!("main term is not exact at k=1, n={n}"));
            }
        }
    }
    Ok(())
}

fn primorials_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut acc = 1u64;
    for p in primes_up_to(64) {
        match acc.checked_mul(p) {
            Some(v) if v <= limit => {
                acc = v;
                out.push(v);
            }
            _ => break,
        }
    }
    out
}

/// Sample of `n`: everything up to 2000, primorials, and a stride through
/// the rest of the range.
fn factor_sample(nmax: u64) -> Vec<u64> {
    let mut ns: Vec<u64> = (1..=nmax.min(2000)).collect();
    ns.extend(primorials_up_to(nmax));
    let mut n = 2001;
    while n <= nmax {
        ns.push(n);
        n += 997;
    }
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// Ranges of `f_k` and `g_k`, and the growth bound on `Ω_k`.
fn factors(params: &SuiteParams, est: &Estimator, out: &mut SuiteOutcome) -> Result<()> {
    let table = est.table();
    let sample = factor_sample(params.nmax);
    let (two_thirds, two) = (BigRational::new(2.into(), 3.into()), BigRational::from_integer(2.into()));
    for k in 2..=params.kmax.max(2) {
        let kk = BigRational::from_integer(BigInt::from(k));
        let (g_lo, g_hi) = (BigRational::one() / (&kk * BigInt::from(2)), &kk * BigInt::from(2));
        for &n in &sample {
            let f = f_factor(k, n, table)?;
            out.check(two_thirds < f && f < two, || format!("f range k={k} n={n}"));
            if n > 1 {
                let above = f > BigRational::one();
                out.check(above == (k % 2 == 0), || format!("f side k={k} n={n}"));
            }
            if k >= 3 {
                let g = g_factor(k, n, table)?;
                out.check(g_lo < g && g < g_hi, || format!("g range k={k} n={n}"));
            }
        }
    }
    let xmax = params.nmax.min(100_000);
    for k in 1..=params.kmax.min(5) {
        let sums = omega_partial_sums_upper(k, xmax, table)?;
        let e = Interval::e();
        for x in 4..=xmax {
            let bound = e.mul(Interval::from_u64(x).ln()).powi(k);
            let up = sums[x as usize - 1].to_rational();
            out.check(crate::bounds::lhs_within(&up, bound), || format!("Ω bound k={k} x={x}"));
        }
    }
    Ok(())
}
