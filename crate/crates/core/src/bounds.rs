//! Main terms, explicit error bounds, and reports comparing them with
//! exact counts.
//!
//! For the head-coprime family the main term is `C_k f_k(n) n^k / k!` with
//! error at most `(2+e)/√(2πk) · (e² log n)^k · n^(k−1)`. For the
//! pairwise-coprime family it is `D_k g_k(n) n^(k−1) / (k−1)!` with error at
//! most `707 n^(k−1) / log n`, valid only once `log n ≥ k·2^(k+2)`.
//!
//! Main terms are carried as fixed-point enclosures built from the constant
//! enclosures and exact rational factors. Bound checks compare an exact
//! left-hand side against the lower end of an outward-rounded right-hand
//! side, so a reported pass is never a rounding artifact.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ExactCount, FactorTable, MAX_TABLE_LIMIT};
use crate::constants::{euler_constant, f_factor, g_factor, ConstantEnclosure, ConstantKind};
use crate::counting::{count_a_moebius_batch, Budget, CompositionFamily, CompositionQuery, CountMethod};
use crate::error::{Error, Result};
use crate::real::{Fixed, Interval, Rounding};

/// Significant digits used when printing reals.
pub const REAL_DIGITS: u32 = 17;

/// Default absolute width of the constant enclosures behind main terms.
pub const DEFAULT_CONSTANT_WIDTH: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn composition_family(self) -> CompositionFamily {
        match self {
            Family::A => CompositionFamily::A,
            Family::B => CompositionFamily::B,
        }
    }

    fn constant_kind(self) -> ConstantKind {
        match self {
            Family::A => ConstantKind::C,
            Family::B => ConstantKind::D,
        }
    }

    fn check_k(self, k: u32) -> Result<()> {
        let min = match self {
            Family::A => 1,
            Family::B => 2,
        };
        if k < min {
            return Err(Error::Argument(format!("family {self} needs k ≥ {min}, got {k}")));
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::Argument(format!("unknown family `{other}`, expected A or B"))),
        }
    }
}

/// Main term with the point value and a rigorous enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTerm {
    pub lo: Fixed,
    pub point: Fixed,
    pub hi: Fixed,
}

impl MainTerm {
    fn from_constant(c: &ConstantEnclosure, factor: &BigRational) -> Self {
        MainTerm {
            lo: c.lo.mul_rational(factor, Rounding::Down),
            point: c.point.mul_rational(factor, Rounding::Down),
            hi: c.hi.mul_rational(factor, Rounding::Up),
        }
    }

    /// Largest `|exact − m|` over the enclosure, as an exact rational.
    pub fn worst_error(&self, exact: &ExactCount) -> BigRational {
        let e = BigRational::from_integer(exact.to_bigint());
        let a = (&e - self.lo.to_rational()).abs();
        let b = (&e - self.hi.to_rational()).abs();
        a.max(b)
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn power_ratio(n: u64, exp: u32, fact: u32) -> BigRational {
    BigRational::new(BigInt::from(n).pow(exp), factorial(fact))
}

/// `(2+e)/√(2πk) · (e² log n)^k · n^(k−1)`, for `n ≥ 2`.
pub fn bound_rhs_a(k: u32, n: u64) -> Result<Interval> {
    Family::A.check_k(k)?;
    if n < 2 {
        return Err(Error::Argument("the head-coprime bound needs n ≥ 2".into()));
    }
    let e = Interval::e();
    let lead = Interval::point(2.0).add(e).div(
        Interval::point(2.0)
            .mul(Interval::pi())
            .mul(Interval::from_u64(u64::from(k)))
            .sqrt(),
    );
    let log_n = Interval::from_u64(n).ln();
    let body = e.mul(e).mul(log_n).powi(k);
    Ok(lead.mul(body).mul(Interval::from_u64(n).powi(k - 1)))
}

/// `707 n^(k−1) / log n` and whether `n ≥ e^(k·2^(k+2))`.
pub fn bound_rhs_b(k: u32, n: u64) -> Result<(Interval, bool)> {
    Family::B.check_k(k)?;
    if n < 2 {
        return Err(Error::Argument("the pairwise-coprime bound needs n ≥ 2".into()));
    }
    let value = Interval::point(707.0)
        .mul(Interval::from_u64(n).powi(k - 1))
        .div(Interval::from_u64(n).ln());
    Ok((value, theorem3_applicable(k, n)))
}

/// Exact `⌊e^t⌋` from a Taylor enclosure, refined until both ends agree.
fn floor_exp(t: u32) -> BigInt {
    let x = BigRational::from_integer(BigInt::from(t));
    let mut terms = 4 * t + 40;
    loop {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for j in 1..=terms {
            sum += &term;
            term = term * &x / BigRational::from_integer(BigInt::from(j));
        }
        // Remaining terms shrink at least geometrically by t/(terms+1) < 1/2.
        let upper = &sum + &term * BigRational::from_integer(BigInt::from(2));
        let (a, b) = (sum.floor(), upper.floor());
        if a == b {
            return a.to_integer();
        }
        terms *= 2;
    }
}

/// Whether `log n ≥ k·2^(k+2)`, decided exactly.
pub fn theorem3_applicable(k: u32, n: u64) -> bool {
    // log(2^64) < 45, so only thresholds below 45 can be reached by a u64.
    let Some(t) = 2u64.checked_pow(k + 2).and_then(|v| v.checked_mul(u64::from(k))) else {
        return false;
    };
    if t >= 45 {
        return false;
    }
    static FLOORS: [OnceLock<BigInt>; 45] = [const { OnceLock::new() }; 45];
    let floor = FLOORS[t as usize].get_or_init(|| floor_exp(t as u32));
    // e^t is irrational for t ≥ 1, so n ≥ e^t exactly when n > ⌊e^t⌋.
    BigInt::from(n) > *floor
}

/// Comparison of an exact model against one count.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateReport {
    pub family: Family,
    pub k: u32,
    pub n: u64,
    pub exact: Option<ExactCount>,
    pub main_term: MainTerm,
    /// `|exact − main_term|` at the point value.
    pub abs_error: Option<Fixed>,
    /// `abs_error / main_term`.
    pub rel_error: Option<Fixed>,
    /// Lower end of the outward-rounded right-hand side.
    pub bound_rhs: Option<f64>,
    pub bound_applicable: bool,
    pub bound_satisfied: Option<bool>,
}

pub const CSV_HEADER: &str =
    "family,k,n,exact,main_term,abs_error,rel_error,bound_rhs,bound_applicable,bound_satisfied";

fn fmt_f64(x: f64) -> String {
    format!("{:.*e}", REAL_DIGITS as usize - 1, x)
}

impl EstimateReport {
    pub fn csv_header() -> &'static str {
        CSV_HEADER
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.family.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            opt(self.exact.as_ref().map(|e| e.to_string())),
            self.main_term.point.to_scientific(REAL_DIGITS),
            opt(self.abs_error.as_ref().map(|v| v.to_scientific(REAL_DIGITS))),
            opt(self.rel_error.as_ref().map(|v| v.to_scientific(REAL_DIGITS))),
            opt(self.bound_rhs.map(fmt_f64)),
            self.bound_applicable.to_string(),
            opt(self.bound_satisfied.map(|b| b.to_string())),
        ]
        .join(",")
    }

    pub fn row(&self) -> ReportRow {
        ReportRow {
            family: self.family,
            k: self.k,
            n: self.n,
            exact: self.exact.clone(),
            main_term: self.main_term.point.to_scientific(REAL_DIGITS),
            abs_error: self.abs_error.as_ref().map(|v| v.to_scientific(REAL_DIGITS)),
            rel_error: self.rel_error.as_ref().map(|v| v.to_scientific(REAL_DIGITS)),
            bound_rhs: self.bound_rhs.map(fmt_f64),
            bound_applicable: self.bound_applicable,
            bound_satisfied: self.bound_satisfied,
        }
    }
}

/// One report as printed: reals are kept in their printed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub family: Family,
    pub k: u32,
    pub n: u64,
    pub exact: Option<ExactCount>,
    pub main_term: String,
    pub abs_error: Option<String>,
    pub rel_error: Option<String>,
    pub bound_rhs: Option<String>,
    pub bound_applicable: bool,
    pub bound_satisfied: Option<bool>,
}

fn parse_real(field: &str, name: &str) -> Result<String> {
    let ok = !field.is_empty()
        && field.len() <= 64
        && field.parse::<f64>().is_ok_and(|v| v.is_finite())
        && field.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b));
    if ok {
        Ok(field.to_string())
    } else {
        Err(Error::Argument(format!("column {name}: not a real number: {field:?}")))
    }
}

fn parse_bool(field: &str, name: &str) -> Result<bool> {
    match field {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Argument(format!("column {name}: expected true or false, got {field:?}"))),
    }
}

impl ReportRow {
    /// Parses one data line in [`CSV_HEADER`] layout.
    pub fn from_csv_row(line: &str) -> Result<Self> {
        let cols: Vec<&str> = line.trim_end_matches(['\r', '\n']).split(',').collect();
        if cols.len() != 10 {
            return Err(Error::Argument(format!("expected 10 columns, found {}", cols.len())));
        }
        let optional = |i: usize| (!cols[i].is_empty()).then_some(cols[i]);
        let int = |i: usize, name: &str| -> Result<u64> {
            cols[i]
                .parse::<u64>()
                .map_err(|_| Error::Argument(format!("column {name}: not an integer: {:?}", cols[i])))
        };
        let k = int(1, "k")?;
        Ok(ReportRow {
            family: cols[0].parse()?,
            k: u32::try_from(k).map_err(|_| Error::Argument("column k: too large".into()))?,
            n: int(2, "n")?,
            exact: optional(3)
                .map(|s| s.parse::<ExactCount>().map_err(|e| Error::Argument(e.to_string())))
                .transpose()?,
            main_term: parse_real(cols[4], "main_term")?,
            abs_error: optional(5).map(|s| parse_real(s, "abs_error")).transpose()?,
            rel_error: optional(6).map(|s| parse_real(s, "rel_error")).transpose()?,
            bound_rhs: optional(7).map(|s| parse_real(s, "bound_rhs")).transpose()?,
            bound_applicable: parse_bool(cols[8], "bound_applicable")?,
            bound_satisfied: optional(9).map(|s| parse_bool(s, "bound_satisfied")).transpose()?,
        })
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        [
            self.family.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.exact.as_ref().map(|e| e.to_string()).unwrap_or_default(),
            self.main_term.clone(),
            opt(&self.abs_error),
            opt(&self.rel_error),
            opt(&self.bound_rhs),
            self.bound_applicable.to_string(),
            self.bound_satisfied.map(|b| b.to_string()).unwrap_or_default(),
        ]
        .join(",")
    }
}

/// Holds the factor table, work limits and a cache of constant enclosures.
#[derive(Debug)]
pub struct Estimator {
    table: FactorTable,
    budget: Budget,
    constant_width: f64,
    max_cutoff: u64,
    cache: Mutex<HashMap<(ConstantKind, u32), ConstantEnclosure>>,
}

impl Estimator {
    pub fn new(table: FactorTable, budget: Budget) -> Self {
        Estimator {
            table,
            budget,
            constant_width: DEFAULT_CONSTANT_WIDTH,
            max_cutoff: MAX_TABLE_LIMIT,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Width and cutoff limit for the constant enclosures.
    pub fn with_constant_width(mut self, width: f64, max_cutoff: u64) -> Self {
        self.constant_width = width;
        self.max_cutoff = max_cutoff;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn table(&self) -> &FactorTable {
        &self.table
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn constant(&self, kind: ConstantKind, k: u32) -> Result<ConstantEnclosure> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(&(kind, k)) {
            return Ok(c.clone());
        }
        let c = euler_constant(kind, k, self.constant_width, self.max_cutoff)?;
        self.cache.lock().expect("cache lock").insert((kind, k), c.clone());
        Ok(c)
    }

    fn check_n(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::Argument("n must be positive".into()));
        }
        Ok(())
    }

    /// `C_k f_k(n) n^k / k!`.
    pub fn main_term_a(&self, k: u32, n: u64) -> Result<MainTerm> {
        Family::A.check_k(k)?;
        self.check_n(n)?;
        let factor = f_factor(k, n, &self.table)? * power_ratio(n, k, k);
        Ok(MainTerm::from_constant(&self.constant(ConstantKind::C, k)?, &factor))
    }

    /// `D_k g_k(n) n^(k−1) / (k−1)!`.
    pub fn main_term_b(&self, k: u32, n: u64) -> Result<MainTerm> {
        Family::B.check_k(k)?;
        self.check_n(n)?;
        let factor = g_factor(k, n, &self.table)? * power_ratio(n, k - 1, k - 1);
        Ok(MainTerm::from_constant(&self.constant(ConstantKind::D, k)?, &factor))
    }

    pub fn main_term(&self, family: Family, k: u32, n: u64) -> Result<MainTerm> {
        match family {
            Family::A => self.main_term_a(k, n),
            Family::B => self.main_term_b(k, n),
        }
    }

    fn exact_count(&self, family: Family, k: u32, n: u64, method: CountMethod) -> Result<ExactCount> {
        CompositionQuery::new(family.composition_family(), k, n, None)?.count(method, &self.table, &self.budget)
    }

    /// Report for one `(k, n)`; `method = None` gives a report without an
    /// exact count.
    pub fn make_report(&self, family: Family, k: u32, n: u64, method: Option<CountMethod>) -> Result<EstimateReport> {
        let exact = method.map(|m| self.exact_count(family, k, n, m)).transpose()?;
        self.assemble(family, k, n, exact)
    }

    fn assemble(&self, family: Family, k: u32, n: u64, exact: Option<ExactCount>) -> Result<EstimateReport> {
        family.check_k(k)?;
        let main_term = self.main_term(family, k, n)?;
        let (rhs, applicable) = if n < 2 {
            (None, false)
        } else {
            match family {
                Family::A => (Some(bound_rhs_a(k, n)?), true),
                Family::B => {
                    let (v, a) = bound_rhs_b(k, n)?;
                    (Some(v), a)
                }
            }
        };
        let abs_error = exact.as_ref().map(|e| {
            let diff = Fixed::from_integer(&e.to_bigint()).sub(&main_term.point);
            diff.abs()
        });
        let rel_error = abs_error.as_ref().and_then(|a| {
            (!main_term.point.mantissa().is_zero())
                .then(|| Fixed::from_ratio(a.mantissa(), main_term.point.mantissa(), Rounding::Up))
        });
        let bound_satisfied = match (&exact, rhs) {
            (Some(e), Some(r)) if applicable => Some(lhs_within(&main_term.worst_error(e), r)),
            _ => None,
        };
        Ok(EstimateReport {
            family,
            k,
            n,
            exact,
            main_term,
            abs_error,
            rel_error,
            bound_rhs: rhs.map(|r| r.lo),
            bound_applicable: applicable,
            bound_satisfied,
        })
    }

    /// Reports over `grid` in grid order.
    pub fn trend_sweep(&self, family: Family, k: u32, grid: &[u64], method: Option<CountMethod>) -> Result<Vec<EstimateReport>> {
        if grid.is_empty() {
            return Ok(Vec::new());
        }
        family.check_k(k)?;
        let exact: Vec<Option<ExactCount>> = match method {
            Some(CountMethod::MoebiusExact) if family == Family::A => {
                count_a_moebius_batch(k, grid, &self.table, &self.budget)?.into_iter().map(Some).collect()
            }
            Some(m) => grid
                .par_iter()
                .map(|&n| self.exact_count(family, k, n, m).map(Some))
                .collect::<Result<_>>()?,
            None => vec![None; grid.len()],
        };
        // Warm the constant cache once rather than racing on it.
        self.constant(family.constant_kind(), k)?;
        grid.par_iter()
            .zip(exact)
            .map(|(&n, e)| self.assemble(family, k, n, e))
            .collect()
    }
}

/// Whether an exact nonnegative rational lies at or below an interval's
/// lower end.
pub fn lhs_within(lhs: &BigRational, rhs: Interval) -> bool {
    match BigRational::from_float(rhs.lo) {
        Some(r) => lhs <= &r,
        None => false,
    }
}

/// Median of the relative errors, or `None` if a report has none.
pub fn median_rel_error(reports: &[EstimateReport]) -> Option<f64> {
    let mut v: Vec<f64> = reports
        .iter()
        .map(|r| r.rel_error.as_ref().map(Fixed::to_f64))
        .collect::<Option<_>>()?;
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

/// Checks `|K_{k,d}(n) − Θ (n/d)^k / k!| ≤ Θ (k + e^(k+1)/√(2πk)) (n/d)^(k−1)`.
pub fn kd_estimate_holds(k: u32, d: u64, n: u64, exact: &ExactCount, theta: &BigUint) -> bool {
    // Both sides vanish exactly; outward rounding would push the bound below 0.
    if theta.is_zero() {
        return exact.is_zero();
    }
    let theta_q = BigRational::from_integer(BigInt::from(theta.clone()));
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(d));
    let main = &theta_q * ratio.pow(k as i32) / BigRational::from_integer(factorial(k));
    let lhs = (BigRational::from_integer(exact.to_bigint()) - main).abs();
    let kk = Interval::from_u64(u64::from(k));
    let constant = kk.add(
        Interval::e()
            .powi(k + 1)
            .div(Interval::point(2.0).mul(Interval::pi()).mul(kk).sqrt()),
    );
    let scale = rational_interval(&(theta_q * ratio.pow(k as i32 - 1)));
    lhs_within(&lhs, constant.mul(scale))
}

/// Checks `|B_{k,d}(n) − Ξ (n/d)^(k−1) / (k−1)!| ≤
/// Ξ (k−1 + e^(2/3)(3e/2)^(k−1)/√(2π(k−1))) n^(k−2) d` for `k ≥ 3`.
pub fn bd_estimate_holds(k: u32, d: u64, n: u64, exact: &ExactCount, xi: &BigUint) -> bool {
    assert!(k >= 3, "the estimate is stated for k ≥ 3");
    let xi_q = BigRational::from_integer(BigInt::from(xi.clone()));
    let ratio = BigRational::new(BigInt::from(n), BigInt::from(d));
    let main = &xi_q * ratio.pow(k as i32 - 1) / BigRational::from_integer(factorial(k - 1));
    let lhs = (BigRational::from_integer(exact.to_bigint()) - main).abs();
    let km1 = Interval::from_u64(u64::from(k - 1));
    let e = Interval::e();
    let growth = e.mul(Interval::point(1.5)).powi(k - 1);
    let two_thirds = Interval::point(2.0).div(Interval::point(3.0));
    let constant = km1.add(
        two_thirds
            .exp()
            .mul(growth)
            .div(Interval::point(2.0).mul(Interval::pi()).mul(km1).sqrt()),
    );
    let scale = rational_interval(&(xi_q * BigRational::from_integer(BigInt::from(n).pow(k - 2) * d)));
    lhs_within(&lhs, constant.mul(scale))
}

/// Outward `f64` enclosure of a nonnegative rational.
fn rational_interval(r: &BigRational) -> Interval {
    // Conversion to f64 may be off by an ulp in either direction.
    let lo = Fixed::from_rational(r, Rounding::Down).to_f64().next_down().next_down();
    let hi = Fixed::from_rational(r, Rounding::Up).to_f64().next_up().next_up();
    Interval::new(lo.max(0.0), hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn estimator() -> Estimator {
        Estimator::new(FactorTable::build(100_000).unwrap(), Budget::default()).with_constant_width(1e-6, 1 << 24)
    }

    #[test]
    fn kd_estimate_with_vanishing_factor() {
        // k = 1, d = 2, odd n: no residue tuple exists, so Θ = 0 and K = 0.
        assert!(kd_estimate_holds(1, 2, 3, &ExactCount::zero(), &BigUint::zero()));
        assert!(!kd_estimate_holds(1, 2, 3, &ExactCount::from(1u64), &BigUint::zero()));
        assert!(kd_estimate_holds(1, 2, 4, &ExactCount::from(1u64), &BigUint::from(1u32)));
    }

    #[test]
    fn floor_of_exp() {
        assert_eq!(floor_exp(1), BigInt::from(2));
        assert_eq!(floor_exp(10), BigInt::from(22026));
        assert_eq!(floor_exp(32), BigInt::from(78_962_960_182_680u64));
    }

    #[test]
    fn applicability_threshold() {
        assert!(!theorem3_applicable(2, 100));
        assert!(!theorem3_applicable(2, 78_962_960_182_680));
        assert!(theorem3_applicable(2, 78_962_960_182_681));
        assert!(theorem3_applicable(2, 100_000_000_000_000));
        assert!(!theorem3_applicable(3, u64::MAX));
        assert!(!theorem3_applicable(40, u64::MAX));
    }

    #[test]
    fn rhs_values() {
        let r = bound_rhs_a(2, 100).unwrap();
        assert!(r.lo > 1.53e5 && r.hi < 1.55e5, "{r:?}");
        let (v, applicable) = bound_rhs_b(3, 100).unwrap();
        let expect = 707.0 * 1e4 / 100f64.ln();
        assert!(v.contains(expect) && !applicable);
        assert!(bound_rhs_a(1, 1).is_err());
        assert!(bound_rhs_b(1, 10).is_err());
    }

    #[test]
    fn exact_base_cases() {
        let est = estimator();
        let m = est.main_term_a(1, 10).unwrap();
        assert_eq!(m.point, Fixed::from_integer(&BigInt::from(4)));
        let m = est.main_term_b(2, 12).unwrap();
        assert_eq!(m.point, Fixed::from_integer(&BigInt::from(4)));
        let r = est.make_report(Family::A, 1, 997, Some(CountMethod::MoebiusExact)).unwrap();
        assert_eq!(r.abs_error, Some(Fixed::zero()));
        let r = est.make_report(Family::B, 2, 500, Some(CountMethod::MoebiusExact)).unwrap();
        assert_eq!(r.abs_error, Some(Fixed::zero()));
        assert!(!r.bound_applicable);
        assert_eq!(r.bound_satisfied, None);
    }

    #[test]
    fn report_a2_60() {
        let est = estimator();
        let r = est.make_report(Family::A, 2, 60, Some(CountMethod::MoebiusExact)).unwrap();
        assert_eq!(r.bound_satisfied, Some(true));
        assert!(r.main_term.lo <= r.main_term.point && r.main_term.point <= r.main_term.hi);
        let row = ReportRow::from_csv_row(&r.csv_row()).unwrap();
        assert_eq!(row, r.row());
        assert_eq!(row.to_csv_row(), r.csv_row());
    }

    #[test]
    fn empty_and_ordered_sweeps() {
        let est = estimator();
        assert!(est.trend_sweep(Family::A, 2, &[], Some(CountMethod::MoebiusExact)).unwrap().is_empty());
        let grid = [30u64, 10, 20];
        let a = est.trend_sweep(Family::A, 2, &grid, Some(CountMethod::MoebiusExact)).unwrap();
        let b = est.trend_sweep(Family::A, 2, &grid, Some(CountMethod::PerHeadDp)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|r| r.n).collect::<Vec<_>>(), grid);
        let none = est.trend_sweep(Family::B, 3, &grid, None).unwrap();
        assert!(none.iter().all(|r| r.exact.is_none() && r.rel_error.is_none()));
    }

    #[test]
    fn csv_rows_reject_garbage() {
        assert!(ReportRow::from_csv_row("").is_err());
        assert!(ReportRow::from_csv_row("C,2,5,4,1e0,,,,true,").is_err());
        assert!(ReportRow::from_csv_row("A,2,5,4,inf,,,,true,").is_err());
        assert!(ReportRow::from_csv_row("A,2,5,-4,1e0,,,,true,").is_err());
        assert!(ReportRow::from_csv_row("A,2,5,4,1e0,,,,yes,").is_err());
        assert!(ReportRow::from_csv_row("A,2,5,,1.5e0,,,,false,").is_ok());
    }
}
