//! Roots, centralizers and intersections of centralizers.
//!
//! On a cell of the ∂₂D-partition where `x` is not the identity, every element commuting with
//! `x` is determined by its initial slope, so the centralizer there is infinite cyclic and
//! generated by the root of `x` of largest index. On identity cells the centralizer is the whole
//! group of the cell.

use std::fmt;

use num_integer::Integer;

use crate::conj::dyadic_cells;
use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Pow2};
use crate::fixtures::{x0, x1};
use crate::obstruction::{Decision, Obstruction};
use crate::plmap::{interval_map, Interval, PLMap};
use crate::stair::{stair_pl20, StairParams};

/// Root of a map on a cell where it has no interior dyadic fixed points.
fn cell_root(x: &PLMap, n: u64) -> Result<Decision<PLMap>> {
    let e = x.initial_slope().exp();
    if e % n as i64 != 0 {
        return Ok(Err(Obstruction::Divisibility { cell: x.domain(), exponent: e, n }));
    }
    let q = Pow2::new(e / n as i64);
    match stair_pl20(x, x, &StairParams::left(q))? {
        Some(h) if h.power(n as i64) == *x => Ok(Ok(h)),
        _ => Ok(Err(Obstruction::Exhausted { cell: x.domain() })),
    }
}

/// The unique `h` with `hⁿ = x`, or the reason there is none.
pub fn nth_root_detailed(x: &PLMap, n: u64) -> Result<Decision<PLMap>> {
    if n == 0 {
        return Err(Error::ZeroRootIndex);
    }
    let mut pieces = Vec::new();
    for cell in dyadic_cells(x) {
        let xc = x.restrict(&cell)?;
        if xc.is_identity() {
            pieces.push(xc);
            continue;
        }
        match cell_root(&xc, n)? {
            Ok(h) => pieces.push(h),
            Err(o) => return Ok(Err(o)),
        }
    }
    let h = PLMap::glue(&pieces)?;
    if h.power(n as i64) != *x {
        return Err(Error::Invariant(format!("root of index {n} does not verify")));
    }
    Ok(Ok(h))
}

pub fn nth_root(x: &PLMap, n: u64) -> Result<Option<PLMap>> {
    Ok(nth_root_detailed(x, n)?.ok())
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let big: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|d| d * d != n).collect();
    out.extend(big);
    out
}

/// Every `(n, h)` with `hⁿ = x`, by increasing `n`.
pub fn all_roots(x: &PLMap) -> Result<Vec<(u64, PLMap)>> {
    if x.is_identity() {
        return Err(Error::IdentityRoots);
    }
    let mut g = 0u64;
    for cell in dyadic_cells(x) {
        let xc = x.restrict(&cell)?;
        if !xc.is_identity() {
            g = g.gcd(&xc.initial_slope().exp().unsigned_abs());
        }
    }
    let mut out = Vec::new();
    for d in divisors(g) {
        if let Some(h) = nth_root(x, d)? {
            out.push((d, h));
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Eq)]
pub enum FactorKind {
    Trivial,
    /// Generated by an element of the whole domain that is the identity off the cell; its
    /// initial slope on the cell is below 1.
    Cyclic(PLMap),
    Full,
}

impl FactorKind {
    pub fn name(&self) -> &'static str {
        match self {
            FactorKind::Trivial => "trivial",
            FactorKind::Cyclic(_) => "cyclic",
            FactorKind::Full => "full",
        }
    }
}

impl fmt::Debug for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorKind::Cyclic(g) => write!(f, "Cyclic({g})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerFactor {
    pub interval: Interval,
    pub kind: FactorKind,
}

/// A centralizer (or an intersection of centralizers) as a product of per-cell factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerDesc {
    domain: Interval,
    factors: Vec<CentralizerFactor>,
}

impl CentralizerDesc {
    /// Validates that the cells tile the domain and that every generator lives on its cell.
    pub fn new(domain: Interval, factors: Vec<CentralizerFactor>) -> Result<CentralizerDesc> {
        let bad = |m: String| Err(Error::BadDescriptor(m));
        let (Some(first), Some(last)) = (factors.first(), factors.last()) else {
            return bad("no cells".into());
        };
        if first.interval.lo() != domain.lo() || last.interval.hi() != domain.hi() {
            return bad(format!("cells do not cover {domain}"));
        }
        for w in factors.windows(2) {
            if w[0].interval.hi() != w[1].interval.lo() {
                return bad(format!("cells {} and {} do not abut", w[0].interval, w[1].interval));
            }
        }
        for f in &factors {
            if let FactorKind::Cyclic(g) = &f.kind {
                if g.domain() != domain {
                    return bad(format!("generator on {} has the wrong domain", f.interval));
                }
                let on = g.restrict(&f.interval).map_err(|e| Error::BadDescriptor(e.to_string()))?;
                if on.is_identity() || !dyadic_cells(&on).iter().eq([&f.interval]) {
                    return bad(format!("generator on {} is not fixed-point free", f.interval));
                }
                if g.extend_to(&domain).ok().as_ref() != Some(g)
                    || on.extend_to(&domain).ok().as_ref() != Some(g)
                {
                    return bad(format!("generator for {} moves points off the cell", f.interval));
                }
            }
        }
        Ok(CentralizerDesc { domain, factors })
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn factors(&self) -> &[CentralizerFactor] {
        &self.factors
    }

    /// All cell endpoints, including the ends of the domain.
    pub fn partition(&self) -> Vec<Dyadic> {
        let mut pts = vec![self.domain.lo().clone()];
        pts.extend(self.factors.iter().map(|f| f.interval.hi().clone()));
        pts
    }

    /// Number of factors isomorphic to F.
    pub fn m(&self) -> usize {
        self.factors.iter().filter(|f| f.kind == FactorKind::Full).count()
    }

    /// Number of infinite cyclic factors.
    pub fn n(&self) -> usize {
        self.factors.iter().filter(|f| matches!(f.kind, FactorKind::Cyclic(_))).count()
    }

    /// Whether `g` lies in the described subgroup.
    pub fn contains(&self, g: &PLMap) -> bool {
        membership(self, g)
    }
}

/// Minimal generator on a cell where `x` is not the identity, with initial slope below 1.
pub(crate) fn cell_generator(xc: &PLMap) -> Result<PLMap> {
    let e = xc.initial_slope().exp().unsigned_abs();
    for d in divisors(e).into_iter().rev() {
        if let Ok(h) = cell_root(xc, d)? {
            return Ok(if h.initial_slope().exp() > 0 { h.invert() } else { h });
        }
    }
    Err(Error::Invariant(format!("{xc} is not a first root of itself")))
}

fn cyclic_on(domain: &Interval, gen: &PLMap) -> Result<FactorKind> {
    Ok(FactorKind::Cyclic(gen.extend_to(domain)?))
}

pub fn centralizer(x: &PLMap) -> Result<CentralizerDesc> {
    let domain = x.domain();
    let mut factors = Vec::new();
    for cell in dyadic_cells(x) {
        let xc = x.restrict(&cell)?;
        let kind =
            if xc.is_identity() { FactorKind::Full } else { cyclic_on(&domain, &cell_generator(&xc)?)? };
        factors.push(CentralizerFactor { interval: cell, kind });
    }
    CentralizerDesc::new(domain, factors)
}

/// The generator of `⟨a⟩ ∩ ⟨b⟩` on a cell (both given on the cell with initial slope < 1).
fn intersect_cyclic(a: &PLMap, b: &PLMap) -> Option<PLMap> {
    let (alpha, beta) = (a.initial_slope().exp(), b.initial_slope().exp());
    let g = alpha.gcd(&beta);
    let (i, j) = (beta / g, alpha / g);
    // Both exponents are negative, so i and j share a sign; take the positive pair.
    let (i, j) = if i < 0 { (-i, -j) } else { (i, j) };
    let c = a.power(i);
    (c == b.power(j)).then_some(c)
}

/// The intersection of the centralizers of a nonempty list of elements.
pub fn intersect_centralizers(xs: &[PLMap]) -> Result<CentralizerDesc> {
    let first = xs.first().ok_or(Error::Empty("element list"))?;
    let domain = first.domain();
    let mut pts: Vec<Dyadic> = Vec::new();
    for x in xs {
        if x.domain() != domain {
            return Err(Error::DomainMismatch(domain.to_string(), x.domain().to_string()));
        }
        pts.extend(x.fixed_set().dyadic_boundary());
    }
    pts.sort();
    pts.dedup();
    let mut factors = Vec::with_capacity(pts.len() - 1);
    for w in pts.windows(2) {
        let cell = Interval::new(w[0].clone(), w[1].clone())?;
        let preserved = xs.iter().all(|x| x.eval_dyadic(cell.lo()) == *cell.lo() && x.eval_dyadic(cell.hi()) == *cell.hi());
        let mut acc: Option<PLMap> = None; // None = Full so far
        let mut trivial = !preserved;
        if preserved {
            for x in xs {
                let xc = x.restrict(&cell)?;
                if xc.is_identity() {
                    continue;
                }
                let gen = cell_generator(&xc)?;
                let next = match &acc {
                    None => Some(gen),
                    Some(a) => intersect_cyclic(a, &gen),
                };
                if next.is_none() {
                    trivial = true;
                    break;
                }
                acc = next;
            }
        }
        let kind = match (trivial, acc) {
            (true, _) => FactorKind::Trivial,
            (false, None) => FactorKind::Full,
            (false, Some(a)) => cyclic_on(&domain, &a)?,
        };
        factors.push(CentralizerFactor { interval: cell, kind });
    }
    CentralizerDesc::new(domain, factors)
}

/// Transports an element of PL₂([0,1]) to the cell `j` by an interval map.
fn transport(w: &PLMap, j: &Interval) -> Result<PLMap> {
    let phi = interval_map(&Dyadic::zero(), &Dyadic::one(), j.lo(), j.hi())?;
    let c = phi.after(&w.chain().after(&phi.invert()));
    PLMap::from_chain(c)
}

/// Two elements whose centralizers intersect in the described subgroup.
pub fn reduce_to_two(desc: &CentralizerDesc) -> Result<(PLMap, PLMap)> {
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    let pair = (x0(), x0().compose(&x1())?);
    for f in desc.factors() {
        let j = &f.interval;
        match &f.kind {
            FactorKind::Full => {
                w1.push(PLMap::identity(j));
                w2.push(PLMap::identity(j));
            }
            FactorKind::Cyclic(g) => {
                let gc = g.restrict(j)?;
                w1.push(gc.clone());
                w2.push(gc);
            }
            FactorKind::Trivial => {
                w1.push(transport(&pair.0, j)?);
                w2.push(transport(&pair.1, j)?);
            }
        }
    }
    Ok((PLMap::glue(&w1)?, PLMap::glue(&w2)?))
}

/// Whether `g` belongs to the subgroup described by `desc`.
pub fn membership(desc: &CentralizerDesc, g: &PLMap) -> bool {
    if g.domain() != *desc.domain() {
        return false;
    }
    if desc.partition().iter().any(|p| g.eval_dyadic(p) != *p) {
        return false;
    }
    desc.factors().iter().all(|f| {
        let gc = g.restrict(&f.interval).expect("partition points are fixed");
        match &f.kind {
            FactorKind::Full => true,
            FactorKind::Trivial => gc.is_identity(),
            FactorKind::Cyclic(a) => {
                let ac = a.restrict(&f.interval).expect("generator preserves its cell");
                let (eg, ea) = (gc.initial_slope().exp(), ac.initial_slope().exp());
                eg % ea == 0 && ac.power(eg / ea) == gc
            }
        }
    })
}
