//! The number-theoretic kernel behind point reachability: splitting a rational into its
//! 2-adic and odd parts, and the discrete-log search in the subgroup generated by 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::Rat;
use crate::error::{Error, Result};

/// Writes `a = 2^t * m / n` with `m`, `n` odd and coprime, `n > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDecomposition {
    pub t: i64,
    pub m: BigInt,
    pub n: BigInt,
}

/// Decomposes a rational in the open unit interval.
pub fn decompose(a: &Rat) -> Result<OddDecomposition> {
    if !a.is_positive() || *a >= Rat::one() {
        return Err(Error::OutOfRange(format!("{a} is not in (0,1)")));
    }
    Ok(split_two_adic(a))
}

/// The same splitting for any nonzero rational; `m` carries the sign.
pub(crate) fn split_two_adic(a: &Rat) -> OddDecomposition {
    assert!(!a.is_zero(), "zero has no 2-adic decomposition");
    let (mut m, mut n) = (a.numer().clone(), a.denom().clone());
    let tm = m.trailing_zeros().unwrap_or(0);
    let tn = n.trailing_zeros().unwrap_or(0);
    m >>= tm;
    n >>= tn;
    OddDecomposition { t: tm as i64 - tn as i64, m, n }
}

/// The multiplicative order of 2 modulo an odd `n`; `1` when `n = 1`.
pub fn order2mod(n: &BigInt) -> Result<u64> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::BadModulus(n.to_string()));
    }
    if n.is_one() {
        return Ok(1);
    }
    let two = BigInt::from(2);
    let mut p = two.clone() % n;
    let mut k = 1u64;
    while !p.is_one() {
        p = (p * &two) % n;
        k += 1;
    }
    Ok(k)
}

/// Finds the least `R` in `[0, order2mod(n))` with `u ≡ 2^R m (mod n)`.
pub fn solve_exponent(m: &BigInt, u: &BigInt, n: &BigInt) -> Result<Option<u64>> {
    let ord = order2mod(n)?;
    if !m.gcd(n).is_one() || !u.gcd(n).is_one() {
        return Err(Error::NotCoprime(format!("m={m}, u={u}, n={n}")));
    }
    let target = u.mod_floor(n);
    let mut cur = m.mod_floor(n);
    for r in 0..ord {
        if cur == target {
            return Ok(Some(r));
        }
        cur = (cur << 1u32).mod_floor(n);
    }
    Ok(None)
}
