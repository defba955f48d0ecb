//! Elements of PL₂(J): orientation-preserving PL homeomorphisms of a dyadic interval with
//! dyadic breakpoints and power-of-two slopes.

mod boxes;
mod build;
mod fixed;

use std::fmt;

pub use boxes::{final_box, initial_box, LinearityBox};
pub(crate) use boxes::{final_extent, initial_extent};
pub use build::{extend_partial, from_partition, interval_map, PartialMap};
pub use fixed::{Component, FixedSet};

pub(crate) use build::{fill_gaps, Piece};
pub(crate) use fixed::{diagonal_components, RawComponent};

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Pow2, Rat};
use crate::pwl::{Chain, Coord, RatChain};

/// A closed interval `[lo, hi]` with dyadic endpoints, `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Interval> {
        if lo >= hi {
            return Err(Error::NonMonotone(format!("interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Interval {
        Interval { lo: Dyadic::zero(), hi: Dyadic::one() }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.lo.to_rat() <= *t && *t <= self.hi.to_rat()
    }

    pub fn contains_interior(&self, t: &Rat) -> bool {
        self.lo.to_rat() < *t && *t < self.hi.to_rat()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Position of a graph relative to the diagonal over an invariant interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Identity,
    Below,
    Above,
    Mixed,
}

/// An element of PL₂(J) in canonical form: two maps are equal iff their node lists are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLMap {
    chain: Chain<Dyadic>,
}

impl PLMap {
    /// Validates a node list. The first and last node must lie on the diagonal.
    pub fn new(nodes: Vec<(Dyadic, Dyadic)>) -> Result<PLMap> {
        let chain = Chain::new(nodes)?;
        PLMap::from_chain(chain)
    }

    pub fn from_chain(chain: Chain<Dyadic>) -> Result<PLMap> {
        if !chain.is_self_map() {
            return Err(Error::OffDiagonal(format!("{chain:?}")));
        }
        Ok(PLMap { chain })
    }

    pub(crate) fn from_rat_chain(chain: &RatChain) -> Option<PLMap> {
        let c = chain.to_dyadic_chain()?;
        c.is_self_map().then_some(PLMap { chain: c })
    }

    pub fn identity(domain: &Interval) -> PLMap {
        PLMap { chain: Chain::identity(domain.lo.clone(), domain.hi.clone()) }
    }

    pub fn identity_unit() -> PLMap {
        PLMap::identity(&Interval::unit())
    }

    pub fn domain(&self) -> Interval {
        Interval { lo: self.chain.src_lo().clone(), hi: self.chain.src_hi().clone() }
    }

    pub fn lo(&self) -> &Dyadic {
        self.chain.src_lo()
    }

    pub fn hi(&self) -> &Dyadic {
        self.chain.src_hi()
    }

    pub fn nodes(&self) -> &[(Dyadic, Dyadic)] {
        self.chain.nodes()
    }

    pub fn chain(&self) -> &Chain<Dyadic> {
        &self.chain
    }

    pub fn to_rat_chain(&self) -> RatChain {
        self.chain.to_rat_chain()
    }

    pub fn is_identity(&self) -> bool {
        self.chain.is_identity()
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let dom = self.domain();
        if !dom.contains(t) {
            return Err(Error::OutsideDomain(t.to_string(), dom.to_string()));
        }
        Ok(self.chain.eval_rat(t))
    }

    pub fn eval_inv(&self, t: &Rat) -> Result<Rat> {
        let dom = self.domain();
        if !dom.contains(t) {
            return Err(Error::OutsideDomain(t.to_string(), dom.to_string()));
        }
        Ok(self.chain.eval_inv_rat(t))
    }

    pub fn eval_dyadic(&self, t: &Dyadic) -> Dyadic {
        self.chain.eval(t)
    }

    fn check_domain(&self, other: &PLMap) -> Result<()> {
        if self.lo() != other.lo() || self.hi() != other.hi() {
            return Err(Error::DomainMismatch(
                self.domain().to_string(),
                other.domain().to_string(),
            ));
        }
        Ok(())
    }

    /// `self ∘ g`, i.e. `g` is applied first.
    pub fn compose(&self, g: &PLMap) -> Result<PLMap> {
        self.check_domain(g)?;
        Ok(PLMap { chain: self.chain.after(&g.chain) })
    }

    pub fn invert(&self) -> PLMap {
        PLMap { chain: self.chain.invert() }
    }

    pub fn power(&self, n: i64) -> PLMap {
        PLMap { chain: self.chain.power(n) }
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &PLMap) -> Result<PLMap> {
        self.check_domain(g)?;
        Ok(PLMap { chain: g.chain.invert().after(&self.chain.after(&g.chain)) })
    }

    pub fn commutes_with(&self, g: &PLMap) -> Result<bool> {
        Ok(self.compose(g)? == g.compose(self)?)
    }

    pub fn fixed_set(&self) -> FixedSet {
        FixedSet::of(self)
    }

    pub fn classify(&self, j: &Interval) -> Result<Class> {
        if !self.domain().contains_interval(j) {
            return Err(Error::OutsideDomain(j.to_string(), self.domain().to_string()));
        }
        if &self.eval_dyadic(&j.lo) != j.lo() || &self.eval_dyadic(&j.hi) != j.hi() {
            return Err(Error::NotPreserved(j.to_string()));
        }
        Ok(classify_chain(&self.chain, &j.lo, &j.hi))
    }

    pub fn one_sided_slope(&self, t: &Rat, side: Side) -> Result<Pow2> {
        let dom = self.domain();
        let ok = match side {
            Side::Left => dom.lo.to_rat() < *t && *t <= dom.hi.to_rat(),
            Side::Right => dom.lo.to_rat() <= *t && *t < dom.hi.to_rat(),
        };
        if !ok {
            return Err(Error::OutsideDomain(format!("{t} ({side:?} side)"), dom.to_string()));
        }
        Ok(match side {
            Side::Left => self.chain.slope_left_rat(t),
            Side::Right => self.chain.slope_right_rat(t),
        })
    }

    pub fn initial_slope(&self) -> Pow2 {
        self.chain.first_slope()
    }

    pub fn final_slope(&self) -> Pow2 {
        self.chain.last_slope()
    }

    /// Restriction to an invariant subinterval.
    pub fn restrict(&self, j: &Interval) -> Result<PLMap> {
        if !self.domain().contains_interval(j) {
            return Err(Error::OutsideDomain(j.to_string(), self.domain().to_string()));
        }
        if &self.eval_dyadic(&j.lo) != j.lo() || &self.eval_dyadic(&j.hi) != j.hi() {
            return Err(Error::NotPreserved(j.to_string()));
        }
        Ok(PLMap { chain: self.chain.restrict(&j.lo, &j.hi) })
    }

    /// Extends by the identity to a larger domain.
    pub fn extend_to(&self, domain: &Interval) -> Result<PLMap> {
        if !domain.contains_interval(&self.domain()) {
            return Err(Error::OutsideDomain(self.domain().to_string(), domain.to_string()));
        }
        let mut parts = Vec::with_capacity(3);
        if domain.lo < *self.lo() {
            parts.push(Chain::identity(domain.lo.clone(), self.lo().clone()));
        }
        parts.push(self.chain.clone());
        if *self.hi() < domain.hi {
            parts.push(Chain::identity(self.hi().clone(), domain.hi.clone()));
        }
        Ok(PLMap { chain: Chain::concat(&parts)? })
    }

    /// Joins maps on consecutive abutting domains.
    pub fn glue(pieces: &[PLMap]) -> Result<PLMap> {
        let chains: Vec<_> = pieces.iter().map(|p| p.chain.clone()).collect();
        Ok(PLMap { chain: Chain::concat(&chains)? })
    }

    /// Conjugate by the reflection `t -> lo + hi - t` of the domain.
    pub fn reflect(&self) -> PLMap {
        let c = self.lo() + self.hi();
        PLMap { chain: self.chain.reflect(&c) }
    }
}

/// Classification of a chain over an invariant subinterval `[lo, hi]`.
pub(crate) fn classify_chain<C: Coord>(chain: &Chain<C>, lo: &C, hi: &C) -> Class {
    let mut below = false;
    let mut above = false;
    let mut touches = false;
    for (x, y) in chain.nodes().iter().filter(|n| &n.0 > lo && &n.0 < hi) {
        match y.cmp(x) {
            std::cmp::Ordering::Less => below = true,
            std::cmp::Ordering::Greater => above = true,
            std::cmp::Ordering::Equal => touches = true,
        }
    }
    match (below, above, touches) {
        (false, false, _) => Class::Identity,
        (true, false, false) => Class::Below,
        (false, true, false) => Class::Above,
        _ => Class::Mixed,
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.chain, f)
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap{:?}", self.chain)
    }
}
