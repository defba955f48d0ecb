//! Ordinary conjugacy in PL₂(J) with witnesses.

use crate::error::{Error, Result};
use crate::exactnum::Pow2;
use crate::obstruction::{Decision, Obstruction};
use crate::plmap::{Interval, PLMap, Side};
use crate::reach::match_fixed_sets;
use crate::stair::{is_pl20, stair_pl20, StairParams};

/// A conjugator `g` with `g⁻¹ y g = z`, checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjWitness {
    pub conjugator: PLMap,
}

/// `g⁻¹ ∘ y ∘ g = z`, exactly. Maps on different domains never verify.
pub fn verify(y: &PLMap, z: &PLMap, g: &PLMap) -> bool {
    matches!(y.conjugate_by(g), Ok(c) if c == *z)
}

fn witness(y: &PLMap, z: &PLMap, g: PLMap) -> Result<ConjWitness> {
    if !verify(y, z, &g) {
        return Err(Error::Invariant(format!("constructed conjugator fails: {g}")));
    }
    Ok(ConjWitness { conjugator: g })
}

fn slope_check(y: &PLMap, z: &PLMap) -> Decision<()> {
    let dom = y.domain();
    for (at, side, a, b) in [
        (dom.lo(), Side::Right, y.initial_slope(), z.initial_slope()),
        (dom.hi(), Side::Left, y.final_slope(), z.final_slope()),
    ] {
        if a != b {
            return Err(Obstruction::Slope { at: at.to_rat(), side, left: a, right: b });
        }
    }
    Ok(())
}

/// Conjugacy for maps without fixed intervals or interior dyadic fixed points.
///
/// Replacing `g` by `yᵛ g` shifts the initial slope exponent by multiples of `u`, where
/// `2ᵘ = y′(η⁺) < 1`, so the slopes `2ᵘ, …, 2⁻¹` cover every class.
pub fn conjugate_pl20(y: &PLMap, z: &PLMap) -> Result<Decision<ConjWitness>> {
    if y.domain() != z.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), z.domain().to_string()));
    }
    for f in [y, z] {
        if !is_pl20(f) {
            return Err(Error::NotPl20(f.to_string()));
        }
    }
    if y.fixed_set() != z.fixed_set() {
        return Ok(Err(Obstruction::FixedSet));
    }
    if let Err(o) = slope_check(y, z) {
        return Ok(Err(o));
    }
    if y == z {
        return Ok(Ok(witness(y, z, PLMap::identity(&y.domain()))?));
    }
    let (ys, zs) = if y.initial_slope().exp() > 0 { (y.invert(), z.invert()) } else { (y.clone(), z.clone()) };
    let u = ys.initial_slope().exp();
    for e in u..0 {
        if let Some(g) = stair_pl20(&ys, &zs, &StairParams::left(Pow2::new(e)))? {
            return Ok(Ok(witness(y, z, g)?));
        }
    }
    Ok(Err(Obstruction::Exhausted { cell: y.domain() }))
}

/// Cells of the partition of the domain of `f` at the points of ∂₂D(f).
pub fn dyadic_cells(f: &PLMap) -> Vec<Interval> {
    f.fixed_set()
        .dyadic_boundary()
        .windows(2)
        .map(|w| Interval::new(w[0].clone(), w[1].clone()).expect("boundary is increasing"))
        .collect()
}

/// Decides whether `y` and `z` are conjugate in PL₂(J), returning a verified witness or the
/// reason they are not.
pub fn conjugate_detailed(y: &PLMap, z: &PLMap) -> Result<Decision<ConjWitness>> {
    if y.domain() != z.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), z.domain().to_string()));
    }
    if y == z {
        return Ok(Ok(witness(y, z, PLMap::identity(&y.domain()))?));
    }
    let Some(g1) = match_fixed_sets(y, z)? else {
        return Ok(Err(Obstruction::FixedSet));
    };
    // ŷ = g1 y g1⁻¹ has D(ŷ) = D(z).
    let yh = y.conjugate_by(&g1.invert())?;
    let mut pieces = Vec::new();
    for cell in dyadic_cells(z) {
        let (yc, zc) = (yh.restrict(&cell)?, z.restrict(&cell)?);
        if zc.is_identity() {
            pieces.push(zc);
            continue;
        }
        match conjugate_pl20(&yc, &zc)? {
            Ok(w) => pieces.push(w.conjugator),
            Err(o) => return Ok(Err(o)),
        }
    }
    let h = PLMap::glue(&pieces)?;
    Ok(Ok(witness(y, z, g1.invert().compose(&h)?)?))
}

/// [`conjugate_detailed`] without the obstruction.
pub fn conjugate(y: &PLMap, z: &PLMap) -> Result<Option<ConjWitness>> {
    Ok(conjugate_detailed(y, z)?.ok())
}
