//! The six local polynomial families.
//!
//! For `k ≥ 1` and integer `x ≥ 2`:
//!
//! ```text
//! ψ_k(x) = (x^k − (x−1)^k + (−1)^k) / x
//! φ_k(x) = (x^k − (x−1)^k + (−1)^(k+1)(x−1)) / x
//! δ_k(x) = ((x−1)^k + k(x−1)^(k−1) + (−1)^k(k−1)) / x
//! η_k(x) = ((x−1)^k + k(x−1)^(k−1) + (−1)^(k−1)(k−1)(x−1)) / x
//! S_k(x) = ((x−1)^k + (−1)^k(x−1)) / x       = x^(k−1) − φ_k(x)
//! W_k(x) = ((x−1)^k + (−1)^(k+1)) / x         = x^(k−1) − ψ_k(x)
//! ```
//!
//! At a prime `p` these count solutions of `y_1 + ⋯ + y_k ≡ n (mod p)` with a
//! constraint on zero coordinates; see [`crate::localcount`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on `k`.
pub const DEFAULT_K_MAX: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    Psi,
    Phi,
    Delta,
    Eta,
    S,
    W,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::Psi,
        FamilyTag::Phi,
        FamilyTag::Delta,
        FamilyTag::Eta,
        FamilyTag::S,
        FamilyTag::W,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyFamily {
    tag: FamilyTag,
    k: u32,
}

impl PolyFamily {
    pub fn new(tag: FamilyTag, k: u32) -> Result<Self> {
        Self::with_k_max(tag, k, DEFAULT_K_MAX)
    }

    pub fn with_k_max(tag: FamilyTag, k: u32, k_max: u32) -> Result<Self> {
        if k == 0 || k > k_max {
            return Err(Error::Argument(format!("k must lie in [1, {k_max}], got {k}")));
        }
        Ok(PolyFamily { tag, k })
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Exact value at `x ≥ 2`.
    pub fn eval(&self, x: u64) -> Result<BigUint> {
        if x < 2 {
            return Err(Error::Argument(format!("x must be at least 2, got {x}")));
        }
        let v = self.eval_big(&BigInt::from(x));
        Ok(v.to_biguint().expect("family values are nonnegative for x ≥ 2"))
    }

    /// Exact value at any integer `x ≥ 2`, as a signed integer.
    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        let numerator = numerator(self.tag, self.k, x);
        let (q, r) = numerator.div_rem(x);
        assert!(
            r.is_zero(),
            "numerator of {:?}_{} not divisible by x = {x}",
            self.tag,
            self.k
        );
        q
    }
}

fn alt(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn numerator(tag: FamilyTag, k: u32, x: &BigInt) -> BigInt {
    let xm1: BigInt = x - 1;
    let kk = BigInt::from(k);
    match tag {
        FamilyTag::Psi => x.pow(k) - xm1.pow(k) + alt(k),
        FamilyTag::Phi => x.pow(k) - xm1.pow(k) + alt(k + 1) * &xm1,
        FamilyTag::Delta => xm1.pow(k) + &kk * xm1.pow(k - 1) + alt(k) * (&kk - 1),
        FamilyTag::Eta => {
            xm1.pow(k) + &kk * xm1.pow(k - 1) + alt(k - 1) * (&kk - 1) * &xm1
        }
        FamilyTag::S => xm1.pow(k) + alt(k) * &xm1,
        FamilyTag::W => xm1.pow(k) + alt(k + 1),
    }
}

/// Convenience: `family_k(x)` for a tag, with the default cap.
pub fn eval_poly(tag: FamilyTag, k: u32, x: u64) -> Result<BigUint> {
    PolyFamily::new(tag, k)?.eval(x)
}

/// Checks the exact inter-family identities at `(k, x)`:
/// `φ = ψ + (−1)^(k+1)`, `η = δ + (−1)^(k−1)(k−1)`, `S = x^(k−1) − φ`,
/// `W = x^(k−1) − ψ`.
pub fn check_identities(k: u32, x: u64) -> Result<bool> {
    if k == 0 || x < 2 {
        return Err(Error::Argument(format!("need k ≥ 1 and x ≥ 2, got k={k}, x={x}")));
    }
    let xb = BigInt::from(x);
    let ev = |tag| {
        PolyFamily::with_k_max(tag, k, u32::MAX)
            .map(|f| f.eval_big(&xb))
    };
    let (psi, phi, delta, eta, s, w) = (
        ev(FamilyTag::Psi)?,
        ev(FamilyTag::Phi)?,
        ev(FamilyTag::Delta)?,
        ev(FamilyTag::Eta)?,
        ev(FamilyTag::S)?,
        ev(FamilyTag::W)?,
    );
    let top = xb.pow(k - 1);
    let kk = BigInt::from(k);
    Ok(phi == &psi + alt(k + 1)
        && eta == &delta + alt(k - 1) * (kk - 1)
        && s == &top - &phi
        && w == &top - &psi
        && !psi.is_negative())
}
