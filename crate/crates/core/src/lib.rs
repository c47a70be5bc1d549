//! Exact counting of integer compositions under coprimality constraints.
//!
//! Two families are covered. `A_k(n)` counts the `(k+1)`-compositions
//! `(x, y_1, ..., y_k)` of `n` whose head `x` is coprime to every tail part;
//! `B_k(n)` counts the `k`-compositions of `n` whose parts are pairwise
//! coprime. Alongside the exact counters the crate evaluates the asymptotic
//! main terms `C_k f_k(n) n^k / k!` and `D_k g_k(n) n^(k-1) / (k-1)!`, the
//! explicit error bounds that accompany them, and rigorous enclosures of the
//! Euler-product constants `C_k` and `D_k`.
//!
//! Module map:
//!
//! - [`arith`]: sieves, factorization, Möbius, totient, binomials.
//! - [`polyfam`]: the local polynomial families `ψ, φ, δ, η, S, W`.
//! - [`localcount`]: brute-force congruence counts mod `p`, the oracle for
//!   [`polyfam`].
//! - [`counting`]: oracles and fast exact algorithms for `A`, `B`, `K`, `U`,
//!   `K_d`, `B_d`.
//! - [`constants`]: `Θ`, `Ξ`, `f_k`, `g_k`, `Ω_k` and the Euler products.
//! - [`bounds`]: main terms, error-bound right-hand sides, estimate reports.
//! - [`verify`]: invariant suites used by the command-line `verify` command.

pub mod arith;
pub mod bounds;
pub mod constants;
pub mod counting;
mod error;
pub mod localcount;
pub mod polyfam;
pub mod real;
pub mod verify;

pub use arith::{ExactCount, FactorTable, Factorization};
pub use bounds::{EstimateReport, Estimator, Family};
pub use constants::{ConstantEnclosure, ConstantKind};
pub use counting::{Budget, CompositionFamily, CompositionQuery, CountMethod};
pub use error::{Error, Result};
pub use real::{Fixed, Interval, Rounding};
