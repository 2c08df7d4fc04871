//! Scalar bound functions: the smoothed iterated logarithm, `λ_d`, `ℓ₀`, the
//! Erdős–Rado bound and the sharp threshold for VC-dimension one.

use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Rational;

/// A non-negative multiple of one half, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    twice: u64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };

    pub const fn from_twice(twice: u64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_integer(n: u64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    pub const fn twice_value(self) -> u64 {
        self.twice
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger::from_twice(self.twice + rhs.twice)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}.5", self.twice / 2)
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Smoothed iterated binary logarithm.
///
/// With towers `T_1 = 2, T_{t+1} = 2^{T_t}` and the split points
/// `M_1 = 3, M_{t+1} = 2^{M_t}`, the value is `t + 1` on `(T_t, M_t]` and
/// `t + 3/2` on `(M_t, T_{t+1}]`. Below the first tower the same split is
/// continued downwards, which gives `log*(1) = 1/2` and `log*(2) = 3/2` and
/// keeps `log*(2^x) = log*(x) + 1` exact for every `x >= 1`.
///
/// Large arguments are reduced through that identity: for `x >= 5`, `x` and
/// `2^⌈log₂ x⌉` lie in the same interval, so no tower is ever materialised.
pub fn log_star_smoothed(x: &BigUint) -> Result<HalfInteger> {
    if x.is_zero() {
        return Err(Error::Precondition("log* is undefined at 0".into()));
    }
    let mut x = x.clone();
    let mut shifts = 0u64;
    loop {
        let base = match u64::try_from(&x) {
            Ok(1) => Some(1),
            Ok(2) => Some(3),
            Ok(3) => Some(4),
            Ok(4) => Some(5),
            _ => None,
        };
        if let Some(twice) = base {
            return Ok(HalfInteger::from_twice(twice + 2 * shifts));
        }
        x = BigUint::from(ceil_log2(&x));
        shifts += 1;
    }
}

/// `log*(2^exponent)`, evaluated without building `2^exponent`.
pub fn log_star_smoothed_pow2(exponent: &BigUint) -> Result<HalfInteger> {
    if exponent.is_zero() {
        return Ok(HalfInteger::HALF);
    }
    Ok(log_star_smoothed(exponent)? + HalfInteger::from_integer(1))
}

/// Convenience wrapper for machine-sized arguments.
pub fn log_star(x: u64) -> Result<HalfInteger> {
    log_star_smoothed(&BigUint::from(x))
}

/// `⌈log₂ x⌉` for `x >= 1`.
fn ceil_log2(x: &BigUint) -> u64 {
    if x.is_one() {
        0
    } else {
        (x - 1u32).bits()
    }
}

/// `λ_d(ℓ)`: `log* ℓ + 2` above `2^{3d}`, `log* ℓ + 1` on `(9d², 2^{3d}]` and
/// `log* ℓ` up to `9d²`.
pub fn lambda_d(d: u64, ell: u64) -> Result<HalfInteger> {
    if d == 0 || ell == 0 {
        return Err(Error::Precondition("lambda_d needs d >= 1 and ell >= 1".into()));
    }
    let base = log_star(ell)?;
    let ell_big = BigUint::from(ell);
    let tower = BigUint::one() << (3 * d);
    let square = BigUint::from(9u32) * BigUint::from(d) * BigUint::from(d);
    let bump = if ell_big > tower {
        2
    } else if ell_big > square {
        1
    } else {
        0
    };
    Ok(base + HalfInteger::from_integer(bump))
}

/// `ℓ₀ = 300 (d/ε)³` for `ε ∈ (0, 1/2]`.
pub fn ell_zero(d: u64, epsilon: &Rational) -> Result<Rational> {
    check_epsilon(epsilon)?;
    let ratio = Rational::from_integer(BigInt::from(d)) / epsilon;
    Ok(Rational::from_integer(BigInt::from(300)) * Pow::pow(&ratio, 3u32))
}

pub(crate) fn check_epsilon(epsilon: &Rational) -> Result<()> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if epsilon <= &Rational::zero() || epsilon > &half {
        return Err(Error::Precondition(format!(
            "epsilon must lie in (0, 1/2], got {epsilon}"
        )));
    }
    Ok(())
}

/// Erdős–Rado bound `(r-1)^ℓ · ℓ!`.
pub fn er_bound(r: u64, ell: u64) -> Result<BigUint> {
    let factorial: BigUint = (1..=ell).map(BigUint::from).product();
    Ok(vc1_threshold(r, ell)? * factorial)
}

/// `(r-1)^ℓ`, the size above which a VC-dimension-one family must contain an
/// `r`-sunflower.
pub fn vc1_threshold(r: u64, ell: u64) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    Ok(Pow::pow(BigUint::from(r - 1), ell))
}
