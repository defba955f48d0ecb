use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Pow2, Rat};
use crate::error::{Error, Result};

/// An element of ℤ[1/2], stored as `num / 2^exp` with `num` odd (or the pair `(0, 0)`).
///
/// Canonical form is enforced by every constructor, so derived equality and hashing
/// agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: i64) -> Dyadic {
        let mut d = Dyadic { num: num.into(), exp };
        d.normalize();
        d
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { num: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(n, 0)
    }

    /// `num / 2^exp`.
    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    fn normalize(&mut self) {
        match self.num.trailing_zeros() {
            None => self.exp = 0,
            Some(0) => {}
            Some(tz) => {
                self.num >>= tz;
                self.exp -= tz as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn mul_pow2(&self, p: Pow2) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { num: self.num.clone(), exp: self.exp - p.exp() }
    }

    pub fn half(&self) -> Dyadic {
        self.mul_pow2(Pow2::new(-1))
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        (self + other).half()
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::new(self.num.clone(), BigInt::one() << self.exp as u64)
        } else {
            Rat::from_int(&self.num << (-self.exp) as u64)
        }
    }

    /// The exact quotient `self / other` when it is a power of two.
    pub fn ratio_pow2(&self, other: &Dyadic) -> Option<Pow2> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self.num == other.num {
            Some(Pow2::new(other.exp - self.exp))
        } else {
            None
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp) as u64;
        let b = &other.num << (e - other.exp) as u64;
        (a, b, e)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Dyadic {
        Dyadic::from_int(n)
    }
}

impl TryFrom<&Rat> for Dyadic {
    type Error = Error;

    fn try_from(r: &Rat) -> Result<Dyadic> {
        r.to_dyadic().ok_or_else(|| Error::NotDyadic(r.to_string()))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let (sa, sb) = (self.num.sign(), other.num.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if self.exp == other.exp {
            return self.num.cmp(&other.num);
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

/// Renders as `p/q` with `q = 2^exp`, or as a bare integer.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp <= 0 {
            write!(f, "{}", &self.num << (-self.exp) as u64)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp as u64)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `p`, `p/q` with `q` a power of two, and `p/2^e`.
    fn from_str(s: &str) -> Result<Dyadic> {
        let t = s.trim();
        if let Some((p, q)) = t.split_once('/') {
            let q = q.trim();
            if let Some(e) = q.strip_prefix("2^") {
                let num = parse_int(p, s)?;
                let exp: i64 = e.trim().parse().map_err(|_| bad(s))?;
                return Ok(Dyadic::new(num, exp));
            }
        }
        let r: Rat = t.parse()?;
        r.to_dyadic().ok_or_else(|| Error::NotDyadic(s.to_string()))
    }
}

fn parse_int(p: &str, whole: &str) -> Result<BigInt> {
    p.trim().parse::<BigInt>().map_err(|_| bad(whole))
}

fn bad(s: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("invalid number {s:?}") }
}
