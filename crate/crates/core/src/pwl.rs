//! Piecewise-linear node chains with power-of-two slopes, generic over the coordinate ring.
//!
//! A [`Chain`] is the graph of an increasing PL bijection `[x0, xn] -> [y0, yn]`. Elements of
//! PL₂ use dyadic coordinates; the conjugacy machinery also needs chains whose endpoints are
//! non-dyadic fixed points, which use rational coordinates.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Pow2, Rat};

pub trait Coord: Clone + Ord + fmt::Debug + fmt::Display {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn scale(&self, p: Pow2) -> Self;
    /// `self / den` when the quotient is a power of two.
    fn ratio(&self, den: &Self) -> Option<Pow2>;
    fn to_rat(&self) -> Rat;
    fn is_zero(&self) -> bool;
}

impl Coord for Dyadic {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, p: Pow2) -> Self {
        self.mul_pow2(p)
    }
    fn ratio(&self, den: &Self) -> Option<Pow2> {
        self.ratio_pow2(den)
    }
    fn to_rat(&self) -> Rat {
        Dyadic::to_rat(self)
    }
    fn is_zero(&self) -> bool {
        Dyadic::is_zero(self)
    }
}

impl Coord for Rat {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, p: Pow2) -> Self {
        self.mul_pow2(p)
    }
    fn ratio(&self, den: &Self) -> Option<Pow2> {
        self.ratio_pow2(den)
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

/// Canonical node chain: strictly increasing in both coordinates, power-of-two slopes,
/// no interior node collinear with its neighbours.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain<C: Coord> {
    nodes: Vec<(C, C)>,
    slopes: Vec<Pow2>,
}

pub type RatChain = Chain<Rat>;

impl<C: Coord> Chain<C> {
    pub fn new(nodes: Vec<(C, C)>) -> Result<Chain<C>> {
        if nodes.len() < 2 {
            return Err(Error::NonMonotone("a map needs at least two nodes".into()));
        }
        let mut slopes = Vec::with_capacity(nodes.len() - 1);
        for (i, w) in nodes.windows(2).enumerate() {
            let dx = w[1].0.minus(&w[0].0);
            let dy = w[1].1.minus(&w[0].1);
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::NonMonotone(format!(
                    "segment {i}: ({}, {}) -> ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
            let s = dy.ratio(&dx).ok_or_else(|| Error::BadSlope {
                segment: i,
                slope: format!("({})/({})", dy, dx),
            })?;
            slopes.push(s);
        }
        let mut c = Chain { nodes, slopes };
        c.canonicalize();
        Ok(c)
    }

    /// Builds from nodes already known to be valid.
    pub(crate) fn from_trusted(nodes: Vec<(C, C)>) -> Chain<C> {
        debug_assert!(nodes.len() >= 2);
        let slopes = nodes
            .windows(2)
            .map(|w| {
                let dx = w[1].0.minus(&w[0].0);
                let dy = w[1].1.minus(&w[0].1);
                dy.ratio(&dx).expect("trusted chain has power-of-two slopes")
            })
            .collect();
        let mut c = Chain { nodes, slopes };
        c.canonicalize();
        c
    }

    pub fn identity(lo: C, hi: C) -> Chain<C> {
        Chain { nodes: vec![(lo.clone(), lo), (hi.clone(), hi)], slopes: vec![Pow2::ONE] }
    }

    /// A single segment from `(lo, y_lo)` with slope `s`, ending at `hi`.
    pub fn linear(lo: C, hi: C, y_lo: C, s: Pow2) -> Chain<C> {
        let y_hi = y_lo.plus(&hi.minus(&lo).scale(s));
        Chain { nodes: vec![(lo, y_lo), (hi, y_hi)], slopes: vec![s] }
    }

    fn canonicalize(&mut self) {
        if self.slopes.windows(2).all(|w| w[0] != w[1]) {
            return;
        }
        let mut nodes = Vec::with_capacity(self.nodes.len());
        let mut slopes = Vec::with_capacity(self.slopes.len());
        nodes.push(self.nodes[0].clone());
        for i in 0..self.slopes.len() {
            if slopes.last() == Some(&self.slopes[i]) {
                nodes.pop();
            } else {
                slopes.push(self.slopes[i]);
            }
            nodes.push(self.nodes[i + 1].clone());
        }
        self.nodes = nodes;
        self.slopes = slopes;
    }

    pub fn nodes(&self) -> &[(C, C)] {
        &self.nodes
    }

    pub fn slopes(&self) -> &[Pow2] {
        &self.slopes
    }

    pub fn src_lo(&self) -> &C {
        &self.nodes[0].0
    }

    pub fn src_hi(&self) -> &C {
        &self.nodes[self.nodes.len() - 1].0
    }

    pub fn dst_lo(&self) -> &C {
        &self.nodes[0].1
    }

    pub fn dst_hi(&self) -> &C {
        &self.nodes[self.nodes.len() - 1].1
    }

    /// Interior breakpoints (x-coordinates).
    pub fn breakpoints(&self) -> impl Iterator<Item = &C> {
        self.nodes[1..self.nodes.len() - 1].iter().map(|n| &n.0)
    }

    pub fn is_identity(&self) -> bool {
        self.slopes.len() == 1 && self.slopes[0].is_one() && self.nodes[0].0 == self.nodes[0].1
    }

    pub fn is_self_map(&self) -> bool {
        self.src_lo() == self.dst_lo() && self.src_hi() == self.dst_hi()
    }

    pub fn contains(&self, t: &C) -> bool {
        self.src_lo() <= t && t <= self.src_hi()
    }

    /// Index of a segment containing `t`; the left one at a breakpoint.
    fn seg_of(&self, t: &C) -> usize {
        let idx = self.nodes.partition_point(|n| n.0 < *t);
        idx.saturating_sub(1).min(self.slopes.len() - 1)
    }

    fn seg_of_y(&self, t: &C) -> usize {
        let idx = self.nodes.partition_point(|n| n.1 < *t);
        idx.saturating_sub(1).min(self.slopes.len() - 1)
    }

    /// Panics if `t` is outside the source interval.
    pub fn eval(&self, t: &C) -> C {
        assert!(self.contains(t), "eval at {t} outside [{}, {}]", self.src_lo(), self.src_hi());
        let i = self.seg_of(t);
        let (x, y) = &self.nodes[i];
        y.plus(&t.minus(x).scale(self.slopes[i]))
    }

    pub fn eval_inv(&self, t: &C) -> C {
        assert!(
            self.dst_lo() <= t && t <= self.dst_hi(),
            "inverse eval at {t} outside [{}, {}]",
            self.dst_lo(),
            self.dst_hi()
        );
        let i = self.seg_of_y(t);
        let (x, y) = &self.nodes[i];
        x.plus(&t.minus(y).scale(self.slopes[i].inv()))
    }

    pub fn eval_rat(&self, t: &Rat) -> Rat {
        let lo = self.src_lo().to_rat();
        let hi = self.src_hi().to_rat();
        assert!(lo <= *t && *t <= hi, "eval at {t} outside [{lo}, {hi}]");
        let i = self.nodes.partition_point(|n| n.0.to_rat() < *t);
        let i = i.saturating_sub(1).min(self.slopes.len() - 1);
        let (x, y) = &self.nodes[i];
        y.to_rat() + (t - &x.to_rat()).mul_pow2(self.slopes[i])
    }

    pub fn eval_inv_rat(&self, t: &Rat) -> Rat {
        let i = self.nodes.partition_point(|n| n.1.to_rat() < *t);
        let i = i.saturating_sub(1).min(self.slopes.len() - 1);
        let (x, y) = &self.nodes[i];
        x.to_rat() + (t - &y.to_rat()).mul_pow2(self.slopes[i].inv())
    }

    pub fn slope_right(&self, t: &C) -> Pow2 {
        let idx = self.nodes.partition_point(|n| n.0 <= *t);
        self.slopes[idx.saturating_sub(1).min(self.slopes.len() - 1)]
    }

    pub fn slope_left(&self, t: &C) -> Pow2 {
        self.slopes[self.seg_of(t)]
    }

    pub fn slope_right_rat(&self, t: &Rat) -> Pow2 {
        let idx = self.nodes.partition_point(|n| n.0.to_rat() <= *t);
        self.slopes[idx.saturating_sub(1).min(self.slopes.len() - 1)]
    }

    pub fn slope_left_rat(&self, t: &Rat) -> Pow2 {
        let idx = self.nodes.partition_point(|n| n.0.to_rat() < *t);
        self.slopes[idx.saturating_sub(1).min(self.slopes.len() - 1)]
    }

    pub fn first_slope(&self) -> Pow2 {
        self.slopes[0]
    }

    pub fn last_slope(&self) -> Pow2 {
        self.slopes[self.slopes.len() - 1]
    }

    pub fn invert(&self) -> Chain<C> {
        Chain {
            nodes: self.nodes.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            slopes: self.slopes.iter().map(|s| s.inv()).collect(),
        }
    }

    /// `self ∘ inner`: apply `inner` first. Requires `inner`'s target to lie inside `self`'s
    /// source.
    pub fn after(&self, inner: &Chain<C>) -> Chain<C> {
        assert!(
            self.src_lo() <= inner.dst_lo() && inner.dst_hi() <= self.src_hi(),
            "composition range mismatch"
        );
        let (c, d) = (inner.dst_lo(), inner.dst_hi());
        let outer_pre: Vec<C> = self
            .nodes
            .iter()
            .filter(|n| &n.0 > c && &n.0 < d)
            .map(|n| inner.eval_inv(&n.0))
            .collect();
        let mut xs: Vec<C> = Vec::with_capacity(inner.nodes.len() + outer_pre.len());
        let (mut i, mut j) = (0, 0);
        let inner_x: Vec<&C> = inner.nodes.iter().map(|n| &n.0).collect();
        while i < inner_x.len() || j < outer_pre.len() {
            let next = match (inner_x.get(i), outer_pre.get(j)) {
                (Some(a), Some(b)) => match (*a).cmp(b) {
                    Ordering::Less => {
                        i += 1;
                        (*a).clone()
                    }
                    Ordering::Greater => {
                        j += 1;
                        b.clone()
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (*a).clone()
                    }
                },
                (Some(a), None) => {
                    i += 1;
                    (*a).clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            xs.push(next);
        }
        let nodes: Vec<(C, C)> = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        Chain::from_trusted(nodes)
    }

    /// Restriction to `[lo, hi]`, a subinterval of the source.
    pub fn restrict(&self, lo: &C, hi: &C) -> Chain<C> {
        assert!(self.src_lo() <= lo && lo < hi && hi <= self.src_hi(), "bad restriction");
        let mut nodes = vec![(lo.clone(), self.eval(lo))];
        nodes.extend(self.nodes.iter().filter(|n| &n.0 > lo && &n.0 < hi).cloned());
        nodes.push((hi.clone(), self.eval(hi)));
        Chain::from_trusted(nodes)
    }

    /// Concatenates chains whose sources and targets abut.
    pub fn concat(parts: &[Chain<C>]) -> Result<Chain<C>> {
        let first = parts.first().ok_or(Error::Empty("chain pieces"))?;
        let mut nodes = first.nodes.clone();
        for p in &parts[1..] {
            let last = nodes.last().expect("non-empty");
            if last != &p.nodes[0] {
                return Err(Error::Overlap(format!(
                    "pieces do not abut: ({}, {}) vs ({}, {})",
                    last.0, last.1, p.nodes[0].0, p.nodes[0].1
                )));
            }
            nodes.extend(p.nodes[1..].iter().cloned());
        }
        Ok(Chain::from_trusted(nodes))
    }

    /// `n`-fold iterate of a self-map, by repeated squaring; negative `n` iterates the inverse.
    pub fn power(&self, n: i64) -> Chain<C> {
        assert!(self.is_self_map(), "power of a map that is not a self-map");
        let mut base = if n < 0 { self.invert() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Chain::identity(self.src_lo().clone(), self.src_hi().clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.after(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.after(&base);
            }
        }
        acc
    }

    /// Conjugation by the reflection `t -> c - t`.
    pub fn reflect(&self, c: &C) -> Chain<C> {
        Chain {
            nodes: self.nodes.iter().rev().map(|(x, y)| (c.minus(x), c.minus(y))).collect(),
            slopes: self.slopes.iter().rev().copied().collect(),
        }
    }

    pub fn map_coords<D: Coord>(&self, f: impl Fn(&C) -> Option<D>) -> Option<Chain<D>> {
        let nodes = self
            .nodes
            .iter()
            .map(|(x, y)| Some((f(x)?, f(y)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Chain { nodes, slopes: self.slopes.clone() })
    }

    pub fn to_rat_chain(&self) -> RatChain {
        self.map_coords(|c| Some(c.to_rat())).expect("rational conversion is total")
    }
}

impl RatChain {
    pub fn to_dyadic_chain(&self) -> Option<Chain<Dyadic>> {
        self.map_coords(|r| r.to_dyadic())
    }
}

impl<C: Coord> fmt::Debug for Chain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (x, y)) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn chain(pts: &[(&str, &str)]) -> Chain<Dyadic> {
        Chain::new(pts.iter().map(|(x, y)| (d(x), d(y))).collect()).unwrap()
    }

    fn x0() -> Chain<Dyadic> {
        chain(&[("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")])
    }

    #[test]
    fn rejects_bad_slopes_and_order() {
        assert!(matches!(
            Chain::new(vec![(d("0"), d("0")), (d("1/2"), d("3/8")), (d("1"), d("1"))]),
            Err(Error::BadSlope { segment: 0, .. })
        ));
        assert!(matches!(
            Chain::new(vec![(d("0"), d("0")), (d("0"), d("1/2")), (d("1"), d("1"))]),
            Err(Error::NonMonotone(_))
        ));
    }

    #[test]
    fn drops_collinear_nodes() {
        let c = chain(&[("0", "0"), ("1/4", "1/8"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")]);
        assert_eq!(c, x0());
    }

    #[test]
    fn eval_and_inverse() {
        let c = x0();
        assert_eq!(c.eval(&d("1/2")), d("1/4"));
        assert_eq!(c.eval(&d("7/8")), d("3/4"));
        assert_eq!(c.eval_inv(&d("3/4")), d("7/8"));
        assert_eq!(c.eval_rat(&Rat::new(1, 3)), Rat::new(1, 6));
        assert_eq!(c.slope_right(&d("0")), Pow2::new(-1));
        assert_eq!(c.slope_left(&d("1/2")), Pow2::new(-1));
        assert_eq!(c.slope_right(&d("1/2")), Pow2::ONE);
        assert_eq!(c.slope_left(&d("1")), Pow2::new(1));
    }

    #[test]
    fn compose_invert_power() {
        let c = x0();
        let id = Chain::identity(d("0"), d("1"));
        assert_eq!(c.after(&c.invert()), id);
        assert_eq!(c.power(2).eval(&d("3/4")), d("1/4"));
        assert_eq!(c.power(-3).after(&c.power(3)), id);
        assert_eq!(c.power(0), id);
    }

    #[test]
    fn restrict_concat_reflect() {
        let c = x0();
        let l = c.restrict(&d("0"), &d("5/8"));
        let r = c.restrict(&d("5/8"), &d("1"));
        assert_eq!(Chain::concat(&[l, r]).unwrap(), c);
        let one = d("1");
        assert_eq!(c.reflect(&one).reflect(&one), c);
        assert_eq!(c.reflect(&one).first_slope(), Pow2::new(1));
    }
}
