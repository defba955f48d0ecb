//! Reachability of points and tuples under PL₂, fixed-set matching and orbit membership.

use crate::error::{Error, Result};
use crate::exactnum::numtheory::split_two_adic;
use crate::exactnum::{solve_exponent, Dyadic, Pow2, Rat};
use crate::plmap::{fill_gaps, Component, Interval, PLMap, Piece};
use crate::obstruction::{Decision, Obstruction};
use crate::pwl::Chain;

/// An affine germ `t -> 2^r t + c` with dyadic `c`, sending `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalMap {
    pub slope: Pow2,
    pub offset: Dyadic,
}

impl LocalMap {
    pub fn apply(&self, t: &Rat) -> Rat {
        t.mul_pow2(self.slope) + self.offset.to_rat()
    }
}

/// The germ used to move `a` to `b`, if any exists.
///
/// Dyadic points go anywhere dyadic with slope 1. For non-dyadic `a = 2^t m/n`, `b = 2^k u/n'`
/// we need `n = n'` and `u ≡ 2^R m (mod n)`; the least such `R` gives `r = R + k - t`.
pub fn local_map(a: &Rat, b: &Rat) -> Result<Option<LocalMap>> {
    match (a.to_dyadic(), b.to_dyadic()) {
        (Some(da), Some(db)) => {
            return Ok(Some(LocalMap { slope: Pow2::ONE, offset: &db - &da }));
        }
        (None, None) => {}
        _ => return Ok(None),
    }
    let (da, db) = (split_two_adic(a), split_two_adic(b));
    if da.n != db.n {
        return Ok(None);
    }
    let Some(r_exp) = solve_exponent(&da.m, &db.m, &da.n)? else {
        return Ok(None);
    };
    let slope = Pow2::new(r_exp as i64 + db.t - da.t);
    let offset = (b - &a.mul_pow2(slope))
        .to_dyadic()
        .ok_or_else(|| Error::Invariant(format!("offset for {a} -> {b} is not dyadic")))?;
    Ok(Some(LocalMap { slope, offset }))
}

fn check_unit_interior(t: &Rat) -> Result<()> {
    if !t.is_positive() || *t >= Rat::one() {
        return Err(Error::OutOfRange(format!("{t} is not an interior point of [0,1]")));
    }
    Ok(())
}

/// Whether some element of PL₂([0,1]) sends `a` to `b`.
pub fn can_map(a: &Rat, b: &Rat) -> Result<bool> {
    check_unit_interior(a)?;
    check_unit_interior(b)?;
    Ok(local_map(a, b)?.is_some())
}

/// Decides whether `a` can be moved to `b` in PL₂([0,1]), with a witness or the reason not.
pub fn reach(a: &Rat, b: &Rat) -> Result<Decision<PLMap>> {
    check_unit_interior(a)?;
    check_unit_interior(b)?;
    let same_odd_part = match (a.to_dyadic(), b.to_dyadic()) {
        (Some(_), Some(_)) => true,
        (None, None) => split_two_adic(a).n == split_two_adic(b).n,
        _ => false,
    };
    if !same_odd_part {
        return Ok(Err(Obstruction::Denominator { from: a.clone(), to: b.clone() }));
    }
    match build_tuple_map(std::slice::from_ref(a), std::slice::from_ref(b))? {
        Some(g) if g.eval(a)? == *b => Ok(Ok(g)),
        Some(g) => Err(Error::Invariant(format!("{g} does not send {a} to {b}"))),
        None => Ok(Err(Obstruction::ExponentCongruence { from: a.clone(), to: b.clone() })),
    }
}

fn check_increasing(domain: &Interval, pts: &[Rat]) -> Result<()> {
    for w in pts.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::NonMonotone(format!("{} >= {}", w[0], w[1])));
        }
    }
    for p in pts {
        if !domain.contains_interior(p) {
            return Err(Error::OutsideDomain(p.to_string(), domain.to_string()));
        }
    }
    Ok(())
}

/// An element of PL₂(domain) with `g(as[i]) = bs[i]`, built from affine germs around the
/// non-dyadic points and interval maps in between; `None` iff some pair is unreachable.
pub fn build_tuple_map_in(domain: &Interval, xs: &[Rat], ys: &[Rat]) -> Result<Option<PLMap>> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    check_increasing(domain, xs)?;
    check_increasing(domain, ys)?;
    let (lo, hi) = (domain.lo().to_rat(), domain.hi().to_rat());
    let mut pieces = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        let (a, b) = (&xs[i], &ys[i]);
        let Some(germ) = local_map(a, b)? else {
            return Ok(None);
        };
        if let (Some(da), Some(db)) = (a.to_dyadic(), b.to_dyadic()) {
            pieces.push(Piece::Point(da, db));
            continue;
        }
        // Room on each side: half the distance to the neighbouring constraint.
        let a_lo = if i == 0 { &lo } else { &xs[i - 1] }.midpoint(a);
        let a_hi = a.midpoint(if i + 1 == xs.len() { &hi } else { &xs[i + 1] });
        let b_lo = if i == 0 { &lo } else { &ys[i - 1] }.midpoint(b);
        let b_hi = b.midpoint(if i + 1 == ys.len() { &hi } else { &ys[i + 1] });
        let mut bits = 1u32;
        let (gamma, delta) = loop {
            let g = a.floor_dyadic(bits);
            let d = a.ceil_dyadic(bits);
            let (gr, dr) = (g.to_rat(), d.to_rat());
            if gr > a_lo && dr < a_hi && germ.apply(&gr) > b_lo && germ.apply(&dr) < b_hi {
                break (g, d);
            }
            bits += 1;
        };
        let y_gamma = gamma.mul_pow2(germ.slope) + germ.offset.clone();
        pieces.push(Piece::Map(Chain::linear(gamma, delta, y_gamma, germ.slope)));
    }
    fill_gaps(domain, &pieces).map(Some)
}

/// [`build_tuple_map_in`] on the unit interval.
pub fn build_tuple_map(xs: &[Rat], ys: &[Rat]) -> Result<Option<PLMap>> {
    build_tuple_map_in(&Interval::unit(), xs, ys)
}

/// Image of a fixed set under `g`, component by component.
pub(crate) fn push_forward(g: &PLMap, comps: &[Component]) -> Vec<Component> {
    comps
        .iter()
        .map(|c| match c {
            Component::Point(p) => Component::Point(g.eval(p).expect("inside domain")),
            Component::Interval(a, b) => Component::Interval(g.eval_dyadic(a), g.eval_dyadic(b)),
        })
        .collect()
}

/// Some `g` with `g(D(y)) = D(z)`, or `None` when the fixed sets are not PL₂-equivalent.
pub fn match_fixed_sets(y: &PLMap, z: &PLMap) -> Result<Option<PLMap>> {
    if y.domain() != z.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), z.domain().to_string()));
    }
    let (fy, fz) = (y.fixed_set(), z.fixed_set());
    let (by, bz) = (fy.boundary(), fz.boundary());
    if by.len() != bz.len() {
        return Ok(None);
    }
    let n = by.len();
    let Some(g) = build_tuple_map_in(&y.domain(), &by[1..n - 1], &bz[1..n - 1])? else {
        return Ok(None);
    };
    Ok((push_forward(&g, fy.components()) == fz.components()).then_some(g))
}

/// The nearest fixed points of `h` on either side of a non-fixed point `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBounds {
    pub phi_minus: Rat,
    pub phi_plus: Rat,
}

/// `None` when `tau` is itself fixed.
pub fn orbit_bounds(h: &PLMap, tau: &Rat) -> Result<Option<OrbitBounds>> {
    if h.eval(tau)? == *tau {
        return Ok(None);
    }
    let b = h.fixed_set().boundary();
    let phi_minus = b.iter().filter(|p| *p < tau).max().cloned().expect("domain end is fixed");
    let phi_plus = b.iter().filter(|p| *p > tau).min().cloned().expect("domain end is fixed");
    Ok(Some(OrbitBounds { phi_minus, phi_plus }))
}

/// The unique `n` with `h^n(tau) = mu`, or `None`.
///
/// The orbit of a non-fixed point is strictly monotone in `n` and converges geometrically to the
/// neighbouring fixed points (one-sided slopes there are powers of two other than 1), so walking
/// it in the direction of `mu` terminates.
pub fn orbit_search(h: &PLMap, tau: &Rat, mu: &Rat) -> Result<Option<i64>> {
    let Some(bounds) = orbit_bounds(h, tau)? else {
        return Ok((tau == mu).then_some(0));
    };
    if *mu <= bounds.phi_minus || *mu >= bounds.phi_plus {
        return Ok(None);
    }
    if mu == tau {
        return Ok(Some(0));
    }
    let decreasing = h.eval(tau)? < *tau;
    // Walk forwards if mu lies on the side h pushes towards, else backwards.
    let forward = (mu < tau) == decreasing;
    let step = if forward { h.clone() } else { h.invert() };
    let below = mu < tau;
    let mut t = tau.clone();
    let mut n = 0i64;
    loop {
        t = step.eval(&t)?;
        n += 1;
        if t == *mu {
            return Ok(Some(if forward { n } else { -n }));
        }
        if (below && t < *mu) || (!below && t > *mu) {
            return Ok(None);
        }
    }
}
