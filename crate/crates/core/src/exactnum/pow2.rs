use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use super::{Dyadic, Rat};
use crate::error::{Error, Result};

/// A strictly positive power of two, `2^exp`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pow2(i64);

impl Pow2 {
    pub const ONE: Pow2 = Pow2(0);

    pub const fn new(exp: i64) -> Pow2 {
        Pow2(exp)
    }

    pub const fn exp(self) -> i64 {
        self.0
    }

    pub fn inv(self) -> Pow2 {
        Pow2(-self.0)
    }

    pub fn pow(self, n: i64) -> Pow2 {
        Pow2(self.0 * n)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn to_dyadic(self) -> Dyadic {
        Dyadic::new(1, -self.0)
    }

    pub fn to_rat(self) -> Rat {
        self.to_dyadic().to_rat()
    }
}

impl Mul for Pow2 {
    type Output = Pow2;
    fn mul(self, rhs: Pow2) -> Pow2 {
        Pow2(self.0 + rhs.0)
    }
}

impl Div for Pow2 {
    type Output = Pow2;
    fn div(self, rhs: Pow2) -> Pow2 {
        Pow2(self.0 - rhs.0)
    }
}

/// Renders the value, e.g. `1/4` or `8`.
impl fmt::Display for Pow2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_dyadic(), f)
    }
}

impl fmt::Debug for Pow2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}", self.0)
    }
}

impl FromStr for Pow2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pow2> {
        if let Some(e) = s.trim().strip_prefix("2^") {
            return e
                .trim()
                .parse()
                .map(Pow2)
                .map_err(|_| Error::Parse { pos: 0, msg: format!("invalid power of two {s:?}") });
        }
        let d: Dyadic = s.parse()?;
        d.ratio_pow2(&Dyadic::one())
            .ok_or_else(|| Error::OutOfRange(format!("{s} is not a power of 2")))
    }
}
