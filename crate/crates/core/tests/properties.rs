use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use coprime_compositions::arith::{binomial, gcd, totient};
use coprime_compositions::bounds::{theorem3_applicable, Estimator, Family, ReportRow};
use coprime_compositions::constants::{euler_constant_at, f_factor, g_factor, theta_factor, xi_factor};
use coprime_compositions::counting::{
    count_a_moebius, count_a_oracle, count_a_per_head, count_b_oracle, count_kd_oracle, count_kd_residue_dp,
};
use coprime_compositions::localcount::{count_congruence_bruteforce, count_congruence_closed, CongruenceSpec, ZeroMode};
use coprime_compositions::polyfam::{eval_poly, FamilyTag};
use coprime_compositions::{Budget, ConstantKind, ExactCount, FactorTable, Fixed, Interval, Rounding};

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn table() -> &'static FactorTable {
    static TABLE: OnceLock<FactorTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorTable::build(200_000).unwrap())
}

fn estimator() -> &'static Estimator {
    static EST: OnceLock<Estimator> = OnceLock::new();
    EST.get_or_init(|| {
        Estimator::new(FactorTable::build(200_000).unwrap(), Budget::default()).with_constant_width(1e-7, 200_000_000)
    })
}

fn squarefree() -> impl Strategy<Value = u64> {
    (1u64..=210).prop_filter("square-free", |&d| table().factorize(d).unwrap().is_square_free())
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pascal_and_symmetry(a in 1u64..400, b in 0u64..400) {
        prop_assume!(b <= a);
        prop_assert_eq!(binomial(a, b), binomial(a, a - b));
        if b >= 1 {
            prop_assert_eq!(binomial(a, b), binomial(a - 1, b) + binomial(a - 1, b - 1));
        }
    }

    #[test]
    fn totient_is_multiplicative(m in 1u64..400, n in 1u64..400) {
        prop_assume!(gcd(m, n) == 1);
        let t = table();
        prop_assert_eq!(totient(m * n, t).unwrap(), totient(m, t).unwrap() * totient(n, t).unwrap());
    }

    #[test]
    fn polynomial_relations(k in 1u32..=12, pi in 0usize..8) {
        let p = PRIMES[pi];
        let ev = |tag| eval_poly(tag, k, p).unwrap();
        let (psi, phi, delta, eta) = (ev(FamilyTag::Psi), ev(FamilyTag::Phi), ev(FamilyTag::Delta), ev(FamilyTag::Eta));
        // φ = ψ + (−1)^(k+1).
        if k % 2 == 1 {
            prop_assert_eq!(&phi, &(&psi + 1u32));
        } else {
            prop_assert_eq!(&(&phi + 1u32), &psi);
        }
        prop_assert_eq!(ev(FamilyTag::W) + &psi, big(p).pow(k - 1));
        prop_assert_eq!(ev(FamilyTag::S) + &phi, big(p).pow(k - 1));
        let cap = big(p).pow(k - 1);
        for v in [&psi, &phi, &delta, &eta] {
            prop_assert!(*v <= cap);
            if k >= 2 {
                prop_assert!(*v >= big(1));
            }
        }
    }

    #[test]
    fn congruence_closed_form(pi in 0usize..5, k in 1u32..=4, r in 0u64..19, m in 0usize..4) {
        let p = PRIMES[pi];
        let spec = CongruenceSpec::new(p, k, r % p, ZeroMode::ALL[m]).unwrap();
        let brute = count_congruence_bruteforce(&spec).unwrap();
        prop_assert_eq!(count_congruence_closed(&spec, r % p == 0).unwrap(), big(brute));
    }

    #[test]
    fn a_counters_agree(k in 1u32..=4, n in 1u64..=70) {
        let (t, b) = (table(), Budget::default());
        let oracle = count_a_oracle(k, n, &b).unwrap();
        prop_assert_eq!(&count_a_moebius(k, n, t, &b).unwrap(), &oracle);
        prop_assert_eq!(&count_a_per_head(k, n, t, &b).unwrap(), &oracle);
    }

    #[test]
    fn a_counters_agree_beyond_enumeration(k in 2u32..=5, n in 100u64..=600) {
        let (t, b) = (table(), Budget::default());
        prop_assert_eq!(count_a_moebius(k, n, t, &b).unwrap(), count_a_per_head(k, n, t, &b).unwrap());
    }

    #[test]
    fn residue_dp_matches_oracle(k in 1u32..=4, d in squarefree(), n in 1u64..=36) {
        let (t, b) = (table(), Budget::default());
        prop_assert_eq!(count_kd_residue_dp(k, d, n, t, &b).unwrap(), count_kd_oracle(k, d, n, t, &b).unwrap());
    }

    #[test]
    fn families_are_nested(k in 1u32..=4, n in 1u64..=40) {
        let b = Budget::default();
        let a = count_a_oracle(k, n, &b).unwrap();
        prop_assert!(a <= binomial(n - 1, u64::from(k)));
        let bk = count_b_oracle(k + 1, n, &b).unwrap();
        prop_assert!(bk <= a);
    }

    #[test]
    fn local_factors_are_multiplicative(k in 1u32..=6, n in 1u64..=5000, d1 in squarefree(), d2 in squarefree()) {
        prop_assume!(gcd(d1, d2) == 1);
        let t = table();
        prop_assert_eq!(
            theta_factor(k, n, d1 * d2, t).unwrap(),
            theta_factor(k, n, d1, t).unwrap() * theta_factor(k, n, d2, t).unwrap()
        );
        prop_assert_eq!(
            xi_factor(k, n, d1 * d2, t).unwrap(),
            xi_factor(k, n, d1, t).unwrap() * xi_factor(k, n, d2, t).unwrap()
        );
    }

    #[test]
    fn f_and_g_depend_on_radical(k in 2u32..=7, n in 2u64..=400, e in 1u32..=3) {
        let t = table();
        let rad = t.factorize(n).unwrap().radical();
        let power = rad.pow(e);
        prop_assume!(power <= 200_000);
        prop_assert_eq!(f_factor(k, n, t).unwrap(), f_factor(k, power, t).unwrap());
        prop_assert_eq!(g_factor(k, n, t).unwrap(), g_factor(k, power, t).unwrap());
        prop_assert!(g_factor(k, n, t).unwrap() > BigRational::from_integer(BigInt::from(0)));
    }

    #[test]
    fn fixed_rounding_brackets_rational(num in -10_000i64..10_000, den in 1i64..10_000) {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        let lo = Fixed::from_rational(&r, Rounding::Down);
        let hi = Fixed::from_rational(&r, Rounding::Up);
        prop_assert!(lo.to_rational() <= r && r <= hi.to_rational());
        let ulp = Fixed::from_ratio(&BigInt::from(1), &(BigInt::from(1) << 127), Rounding::Up);
        prop_assert!(hi.sub(&lo) <= ulp);
    }

    #[test]
    fn interval_ops_contain_point_results(a in 0.001f64..1e6, b in 0.001f64..1e6) {
        let (x, y) = (Interval::point(a), Interval::point(b));
        prop_assert!(x.add(y).contains(a + b));
        prop_assert!(x.mul(y).contains(a * b));
        prop_assert!(x.div(y).contains(a / b));
        prop_assert!(x.sqrt().contains(a.sqrt()));
    }

    #[test]
    fn report_rows_round_trip(k in 1u32..=4, n in 2u64..=300, pairwise in any::<bool>()) {
        let family = if pairwise { Family::B } else { Family::A };
        let k = if pairwise { k + 1 } else { k };
        let report = estimator().make_report(family, k, n, None).unwrap();
        let line = report.csv_row();
        let row = ReportRow::from_csv_row(&line).unwrap();
        prop_assert_eq!(row.to_csv_row(), line);
        prop_assert_eq!(row, report.row());
    }

    #[test]
    fn applicability_is_monotone(k in 2u32..=7, n in 1u64..u64::MAX - 1) {
        if theorem3_applicable(k, n) {
            prop_assert!(theorem3_applicable(k, n + 1));
        }
        prop_assert!(!theorem3_applicable(k, n.min(78_962_960_182_680)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn enclosures_nest_as_cutoff_grows(k in 2u32..=7, c1 in 1024u64..60_000, extra in 1u64..60_000, d in any::<bool>()) {
        let kind = if d { ConstantKind::D } else { ConstantKind::C };
        prop_assume!(k >= kind.min_k());
        let coarse = euler_constant_at(kind, k, c1).unwrap();
        let fine = euler_constant_at(kind, k, c1 + extra).unwrap();
        prop_assert!(coarse.lo <= fine.lo && fine.hi <= coarse.hi);
        prop_assert!(fine.lo <= fine.point && fine.point <= fine.hi);
    }
}

#[test]
fn exact_count_parses_what_it_prints() {
    for v in [0u64, 1, 42, u64::MAX] {
        let c = ExactCount::from(v);
        assert_eq!(c.to_string().parse::<ExactCount>().unwrap(), c);
    }
}
