//! Constructing elements from partial data: interval-to-interval maps, partition maps and
//! extensions of partially defined maps.

use super::{Interval, PLMap};
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Pow2};
use crate::pwl::Chain;

/// A map between two dyadic intervals (not necessarily a self-map).
pub type PartialMap = Chain<Dyadic>;

/// Powers of two summing to a positive dyadic, smallest first.
fn binary_terms(len: &Dyadic) -> Vec<Pow2> {
    assert!(len.is_positive(), "interval length must be positive");
    let mag = len.num().magnitude();
    (0..mag.bits()).filter(|&k| mag.bit(k)).map(|k| Pow2::new(k as i64 - len.exp())).collect()
}

/// Halves the largest term until the list has `target` terms, keeping ascending order.
fn refine(terms: &mut Vec<Pow2>, target: usize) {
    while terms.len() < target {
        let big = Pow2::new(terms.pop().expect("non-empty").exp() - 1);
        let at = terms.partition_point(|t| *t <= big);
        terms.insert(at, big);
        terms.insert(at, big);
    }
}

/// A PL₂ map `[a0, a1] -> [b0, b1]` between dyadic intervals.
///
/// Both lengths are split into their binary expansions; the shorter list is refined by halving
/// its largest piece until the counts agree, and the pieces are matched in ascending order.
pub fn interval_map(a0: &Dyadic, a1: &Dyadic, b0: &Dyadic, b1: &Dyadic) -> Result<PartialMap> {
    if a0 >= a1 || b0 >= b1 {
        return Err(Error::NonMonotone(format!("[{a0}, {a1}] -> [{b0}, {b1}]")));
    }
    let mut xs = binary_terms(&(a1 - a0));
    let mut ys = binary_terms(&(b1 - b0));
    let n = xs.len().max(ys.len());
    refine(&mut xs, n);
    refine(&mut ys, n);
    let mut nodes = Vec::with_capacity(n + 1);
    let (mut x, mut y) = (a0.clone(), b0.clone());
    nodes.push((x.clone(), y.clone()));
    for (dx, dy) in xs.iter().zip(&ys) {
        x = &x + &dx.to_dyadic();
        y = &y + &dy.to_dyadic();
        nodes.push((x.clone(), y.clone()));
    }
    Ok(Chain::from_trusted(nodes))
}

/// The map sending each `xs[i]` to `ys[i]`, built from [`interval_map`] on consecutive cells.
pub fn from_partition(xs: &[Dyadic], ys: &[Dyadic]) -> Result<PLMap> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::Empty("partition"));
    }
    if xs[0] != ys[0] || xs[xs.len() - 1] != ys[ys.len() - 1] {
        return Err(Error::OffDiagonal("partitions must share their endpoints".into()));
    }
    let cells = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(a, b)| interval_map(&a[0], &a[1], &b[0], &b[1]))
        .collect::<Result<Vec<_>>>()?;
    PLMap::from_chain(Chain::concat(&cells)?)
}

/// A prescribed piece of a map being assembled: a point assignment or a map of intervals.
#[derive(Debug, Clone)]
pub(crate) enum Piece {
    Point(Dyadic, Dyadic),
    Map(PartialMap),
}

impl Piece {
    fn start(&self) -> (&Dyadic, &Dyadic) {
        match self {
            Piece::Point(a, b) => (a, b),
            Piece::Map(c) => (c.src_lo(), c.dst_lo()),
        }
    }

    fn end(&self) -> (&Dyadic, &Dyadic) {
        match self {
            Piece::Point(a, b) => (a, b),
            Piece::Map(c) => (c.src_hi(), c.dst_hi()),
        }
    }
}

/// Fills the gaps between ordered pieces with interval maps, fixing the domain endpoints.
pub(crate) fn fill_gaps(domain: &Interval, pieces: &[Piece]) -> Result<PLMap> {
    let mut parts: Vec<PartialMap> = Vec::new();
    let (mut cx, mut cy) = (domain.lo().clone(), domain.lo().clone());
    let end = Piece::Point(domain.hi().clone(), domain.hi().clone());
    for p in pieces.iter().chain(std::iter::once(&end)) {
        let (sx, sy) = p.start();
        let gap_x = sx > &cx;
        let gap_y = sy > &cy;
        if sx < &cx || sy < &cy || gap_x != gap_y {
            return Err(Error::Overlap(format!("piece starting at ({sx}, {sy})")));
        }
        if gap_x {
            parts.push(interval_map(&cx, sx, &cy, sy)?);
        }
        if let Piece::Map(c) = p {
            parts.push(c.clone());
        }
        let (ex, ey) = p.end();
        if ex > domain.hi() || ey > domain.hi() {
            return Err(Error::OutsideDomain(format!("({ex}, {ey})"), domain.to_string()));
        }
        (cx, cy) = (ex.clone(), ey.clone());
    }
    PLMap::from_chain(Chain::concat(&parts)?)
}

/// Extends maps between ordered subintervals of `domain` to an element of PL₂(domain).
pub fn extend_partial(domain: &Interval, segments: &[PartialMap]) -> Result<PLMap> {
    let pieces: Vec<Piece> = segments.iter().cloned().map(Piece::Map).collect();
    fill_gaps(domain, &pieces)
}
