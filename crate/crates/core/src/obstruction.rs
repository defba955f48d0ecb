//! Structured reasons for a negative decision.

use std::fmt;

use crate::exactnum::{Pow2, Rat};
use crate::plmap::{Interval, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// No `u ≡ 2^R m (mod n)`: the odd parts of the two points are not related by a power of 2.
    ExponentCongruence { from: Rat, to: Rat },
    /// One point is dyadic and the other is not, or the odd denominators differ.
    Denominator { from: Rat, to: Rat },
    /// The fixed-point sets are not carried onto each other by any element.
    FixedSet,
    /// One-sided slopes at a common fixed point differ.
    Slope { at: Rat, side: Side, left: Pow2, right: Pow2 },
    /// Every admissible initial slope on the cell failed the stair algorithm.
    Exhausted { cell: Interval },
    /// A root was requested whose slope exponent is not divisible by the index.
    Divisibility { cell: Interval, exponent: i64, n: u64 },
    /// Every coordinate is conjugate on its own, but no single conjugator handles coordinate
    /// `index` together with the ones before it.
    Constrained { index: usize },
    /// Some coordinate of a tuple admits no conjugator at all.
    Coordinate { index: usize, inner: Box<Obstruction> },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::ExponentCongruence { from, to } => {
                write!(f, "exponent congruence unsolvable: no R with {to} ~ 2^R {from}")
            }
            Obstruction::Denominator { from, to } => {
                write!(f, "odd denominators of {from} and {to} differ")
            }
            Obstruction::FixedSet => f.write_str("fixed-point sets are not equivalent"),
            Obstruction::Slope { at, side, left, right } => {
                write!(f, "slopes at {at} ({side:?}) differ: {left} vs {right}")
            }
            Obstruction::Exhausted { cell } => {
                write!(f, "no admissible initial slope yields a conjugator on {cell}")
            }
            Obstruction::Divisibility { cell, exponent, n } => {
                write!(f, "slope exponent {exponent} on {cell} is not divisible by {n}")
            }
            Obstruction::Constrained { index } => {
                write!(f, "coordinate {index} admits no conjugator compatible with the earlier ones")
            }
            Obstruction::Coordinate { index, inner } => write!(f, "coordinate {index}: {inner}"),
        }
    }
}

impl Obstruction {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::ExponentCongruence { .. } => "exponent-congruence",
            Obstruction::Denominator { .. } => "denominator",
            Obstruction::FixedSet => "fixed-set",
            Obstruction::Slope { .. } => "slope",
            Obstruction::Exhausted { .. } => "exhausted",
            Obstruction::Divisibility { .. } => "divisibility",
            Obstruction::Constrained { .. } => "constrained",
            Obstruction::Coordinate { .. } => "coordinate",
        }
    }
}

/// A decision with a witness on YES and an obstruction on NO.
pub type Decision<T> = std::result::Result<T, Obstruction>;
