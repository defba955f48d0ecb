use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Dyadic, Pow2};
use crate::error::{Error, Result};

/// An exact rational `p/q` in lowest terms with `q > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    /// Panics on a zero denominator.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Rat {
        Rat(BigRational::new(p.into(), q.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True iff the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        is_power_of_two(self.denom())
    }

    pub fn to_dyadic(&self) -> Option<Dyadic> {
        let q = self.denom();
        if !is_power_of_two(q) {
            return None;
        }
        let exp = q.trailing_zeros().unwrap_or(0) as i64;
        Some(Dyadic::new(self.numer().clone(), exp))
    }

    pub fn mul_pow2(&self, p: Pow2) -> Rat {
        let e = p.exp();
        if e >= 0 {
            Rat(BigRational::new(self.numer() << e as u64, self.denom().clone()))
        } else {
            Rat(BigRational::new(self.numer().clone(), self.denom() << (-e) as u64))
        }
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// The exact quotient `self / other` when it is a power of two.
    pub fn ratio_pow2(&self, other: &Rat) -> Option<Pow2> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let q = &self.0 / &other.0;
        if q.is_negative() {
            return None;
        }
        let (n, d) = (q.numer(), q.denom());
        if n.is_one() && is_power_of_two(d) {
            Some(Pow2::new(-(d.trailing_zeros().unwrap_or(0) as i64)))
        } else if d.is_one() && is_power_of_two(n) {
            Some(Pow2::new(n.trailing_zeros().unwrap_or(0) as i64))
        } else {
            None
        }
    }

    /// Largest multiple of `2^-bits` that is `<= self`.
    pub fn floor_dyadic(&self, bits: u32) -> Dyadic {
        let scaled = self.mul_pow2(Pow2::new(bits as i64));
        Dyadic::new(scaled.0.floor().to_integer(), bits as i64)
    }

    /// Smallest multiple of `2^-bits` that is `>= self`.
    pub fn ceil_dyadic(&self, bits: u32) -> Dyadic {
        let scaled = self.mul_pow2(Pow2::new(bits as i64));
        Dyadic::new(scaled.0.ceil().to_integer(), bits as i64)
    }

    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other).mul_pow2(Pow2::new(-1))
    }
}

pub(crate) fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && n.magnitude().count_ones() == 1
}

impl From<&Dyadic> for Rat {
    fn from(d: &Dyadic) -> Rat {
        d.to_rat()
    }
}

impl From<Dyadic> for Rat {
    fn from(d: Dyadic) -> Rat {
        d.to_rat()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl PartialEq<Dyadic> for Rat {
    fn eq(&self, other: &Dyadic) -> bool {
        self.cmp(&other.to_rat()) == Ordering::Equal
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::Parse { pos: 0, msg: format!("invalid rational {s:?}") };
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rat::new(p, q))
            }
            None => Ok(Rat::from_int(t.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}
