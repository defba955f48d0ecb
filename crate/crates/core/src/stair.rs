//! The stair algorithm: the unique conjugator with a prescribed slope at an endpoint or at an
//! interior fixed point.
//!
//! Conjugation convention throughout: `g` conjugates `y` to `z` when `g⁻¹ ∘ y ∘ g = z`, i.e.
//! `y(g(t)) = g(z(t))`. On the initial box both maps are `t -> η + c(t - η)` and the candidate is
//! forced to be `y⁻ʳ ∘ g₀ ∘ zʳ` on `[η, z⁻ʳ(α)]`, followed by a single line into `(ζ, ζ)`.

use crate::error::{Error, Result};
use crate::exactnum::{Dyadic, Pow2, Rat};
use crate::plmap::{
    classify_chain, diagonal_components, extend_partial, final_extent, initial_extent, Class,
    PLMap, PartialMap, RawComponent, Side,
};
use crate::pwl::{Chain, RatChain};

/// Where the prescribed slope of the conjugator is imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Anchor {
    LeftEnd,
    RightEnd,
    InteriorFixedPoint(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StairParams {
    pub q: Pow2,
    pub anchor: Anchor,
}

impl StairParams {
    pub fn left(q: Pow2) -> StairParams {
        StairParams { q, anchor: Anchor::LeftEnd }
    }
}

fn conjugates(y: &RatChain, z: &RatChain, g: &RatChain) -> bool {
    g.invert().after(&y.after(g)) == *z
}

/// Least `r` with `min(z⁻ʳ(α), y⁻ʳ(η + q(α - η))) > β`.
fn stair_depth_chain(y: &RatChain, z: &RatChain, q: Pow2, alpha: &Rat, beta: &Rat) -> usize {
    let eta = y.src_lo();
    let (yi, zi) = (y.invert(), z.invert());
    let mut a = alpha.clone();
    let mut b = eta + &(alpha - eta).mul_pow2(q);
    let mut r = 0;
    while a <= *beta || b <= *beta {
        a = zi.eval(&a);
        b = yi.eval(&b);
        r += 1;
    }
    r
}

/// `y⁻ʳ ∘ g₀ ∘ zʳ` on `[η, z⁻ʳ(α)]`, with `g₀` the line of slope `q` through `(η, η)`.
fn explicit_chain(y: &RatChain, z: &RatChain, q: Pow2, alpha: &Rat, r: usize) -> RatChain {
    let eta = y.src_lo().clone();
    let zr = z.power(r as i64);
    let end = zr.eval_inv(alpha);
    let inner = zr.restrict(&eta, &end);
    let g0 = Chain::linear(eta.clone(), alpha.clone(), eta, q);
    y.power(-(r as i64)).after(&g0.after(&inner))
}

/// Stair for two self-maps of a cell that are strictly below the diagonal on its interior.
fn stair_below_cell(y: &RatChain, z: &RatChain, q: Pow2) -> Option<RatChain> {
    if q.exp() > 0 {
        return stair_below_cell(z, y, q.inv()).map(|g| g.invert());
    }
    let (alpha, _) = initial_extent(y, z)?;
    let (beta, _) = final_extent(y, z)?;
    let r = stair_depth_chain(y, z, q, &alpha, &beta);
    let h = explicit_chain(y, z, q, &alpha, r);
    let zeta = y.src_hi().clone();
    let (a, b) = (h.src_hi().clone(), h.dst_hi().clone());
    let closing = Chain::new(vec![(a, b), (zeta.clone(), zeta)]).ok()?;
    let g = Chain::concat(&[h, closing]).ok()?;
    // Inside the final box any conjugator is linear; cheap necessary check before verifying.
    let from = beta.clone().max(g.eval_inv(&beta));
    if g.slope_right(&from) != g.last_slope() {
        return None;
    }
    conjugates(y, z, &g).then_some(g)
}

/// Stair on one cell where both maps lie on the same side of the diagonal.
fn stair_cell(y: &RatChain, z: &RatChain, q: Pow2) -> Option<RatChain> {
    let (lo, hi) = (y.src_lo().clone(), y.src_hi().clone());
    match (classify_chain(y, &lo, &hi), classify_chain(z, &lo, &hi)) {
        (Class::Below, Class::Below) => stair_below_cell(y, z, q),
        (Class::Above, Class::Above) => stair_below_cell(&y.invert(), &z.invert(), q),
        _ => None,
    }
}

/// Interior crossing points of a self-map with discrete fixed set, or an error.
fn crossings(y: &RatChain) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for c in diagonal_components(y) {
        match c {
            RawComponent::Point(p) => out.push(p),
            RawComponent::Interval(a, b) => {
                return Err(Error::NotPl20(format!("fixed interval [{a}, {b}]")));
            }
        }
    }
    let inner = &out[1..out.len() - 1];
    if let Some(p) = inner.iter().find(|p| p.is_dyadic()) {
        return Err(Error::NotPl20(format!("dyadic fixed point {p}")));
    }
    Ok(out)
}

/// Forward stair through consecutive cells starting with slope `q` at the left end.
fn stair_forward(y: &RatChain, z: &RatChain, q: Pow2, pts: &[Rat]) -> Option<RatChain> {
    let mut slope = q;
    let mut pieces = Vec::with_capacity(pts.len() - 1);
    for w in pts.windows(2) {
        let (yc, zc) = (y.restrict(&w[0], &w[1]), z.restrict(&w[0], &w[1]));
        let g = stair_cell(&yc, &zc, slope)?;
        // Crossings are non-dyadic, so none of y, z, g breaks there.
        slope = g.last_slope();
        pieces.push(g);
    }
    Chain::concat(&pieces).ok()
}

fn stair_backward(y: &RatChain, z: &RatChain, q: Pow2, pts: &[Rat]) -> Option<RatChain> {
    let c = y.src_lo() + y.src_hi();
    let rpts: Vec<Rat> = pts.iter().rev().map(|p| &c - p).collect();
    stair_forward(&y.reflect(&c), &z.reflect(&c), q, &rpts).map(|g| g.reflect(&c))
}

/// The unique conjugator of `y` to `z` in PL₂(J) with the slope prescribed by `params`.
///
/// Both maps must lie in PL₂⁰(J) and have the same fixed points.
pub fn stair_pl20(y: &PLMap, z: &PLMap, params: &StairParams) -> Result<Option<PLMap>> {
    if y.domain() != z.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), z.domain().to_string()));
    }
    let (yr, zr) = (y.to_rat_chain(), z.to_rat_chain());
    let pts = crossings(&yr)?;
    if pts != crossings(&zr)? {
        return Err(Error::FixedSetMismatch);
    }
    let q = params.q;
    let g = match &params.anchor {
        Anchor::LeftEnd => stair_forward(&yr, &zr, q, &pts),
        Anchor::RightEnd => stair_backward(&yr, &zr, q, &pts),
        Anchor::InteriorFixedPoint(tau) => {
            let Some(k) = pts[1..pts.len() - 1].iter().position(|p| p == tau) else {
                return Err(Error::OutOfRange(format!("{tau} is not an interior fixed point")));
            };
            let k = k + 1;
            let (lo, hi) = (yr.src_lo().clone(), yr.src_hi().clone());
            let left = stair_backward(&yr.restrict(&lo, tau), &zr.restrict(&lo, tau), q, &pts[..=k]);
            let right = stair_forward(&yr.restrict(tau, &hi), &zr.restrict(tau, &hi), q, &pts[k..]);
            match (left, right) {
                (Some(l), Some(r)) => Chain::concat(&[l, r]).ok(),
                _ => None,
            }
        }
    };
    let Some(g) = g.and_then(|g| PLMap::from_rat_chain(&g)) else {
        return Ok(None);
    };
    Ok((y.conjugate_by(&g)? == *z).then_some(g))
}

fn check_below(f: &PLMap) -> Result<()> {
    if f.classify(&f.domain())? != Class::Below {
        return Err(Error::NotBelowDiagonal(f.domain().to_string()));
    }
    Ok(())
}

/// The unique `g` with `g′(η⁺) = q` and `g⁻¹yg = z` for maps strictly below the diagonal.
pub fn stair_below(y: &PLMap, z: &PLMap, q: Pow2) -> Result<Option<PLMap>> {
    check_below(y)?;
    check_below(z)?;
    if y.domain() != z.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), z.domain().to_string()));
    }
    if y.initial_slope() != z.initial_slope() {
        return Err(Error::NoBox(y.lo().to_string()));
    }
    let g = stair_below_cell(&y.to_rat_chain(), &z.to_rat_chain(), q);
    Ok(g.and_then(|g| PLMap::from_rat_chain(&g)))
}

/// Box data and depth `r` of the stair for `q <= 1`: `(α, r)`.
pub fn stair_depth(y: &PLMap, z: &PLMap, q: Pow2) -> Result<(Dyadic, usize)> {
    check_below(y)?;
    check_below(z)?;
    if q.exp() > 0 {
        return Err(Error::OutOfRange(format!("slope {q} exceeds 1")));
    }
    let (alpha, _) = initial_extent(y.chain(), z.chain()).ok_or_else(|| Error::NoBox(y.lo().to_string()))?;
    let (beta, _) = final_extent(y.chain(), z.chain()).ok_or_else(|| Error::NoBox(y.hi().to_string()))?;
    let r = stair_depth_chain(&y.to_rat_chain(), &z.to_rat_chain(), q, &alpha.to_rat(), &beta.to_rat());
    Ok((alpha, r))
}

/// `y⁻ʳ ∘ g₀ ∘ zʳ` on `[η, z⁻ʳ(α)]` where `[η, α]` is the initial box.
pub fn explicit_conjugator(y: &PLMap, z: &PLMap, q: Pow2, r: usize) -> Result<PartialMap> {
    let (alpha, _) = stair_depth(y, z, q)?;
    let c = explicit_chain(&y.to_rat_chain(), &z.to_rat_chain(), q, &alpha.to_rat(), r);
    c.to_dyadic_chain().ok_or_else(|| Error::Invariant("explicit conjugator is not dyadic".into()))
}

/// One identification step: `g = id` on `[η, α]`, `g = y⁻¹z` on `[α, z⁻¹(α)]`, extended to J.
pub fn identification_step(y: &PLMap, z: &PLMap, alpha: &Dyadic) -> Result<PLMap> {
    check_below(y)?;
    check_below(z)?;
    let dom = y.domain();
    if !dom.contains_interior(&alpha.to_rat()) {
        return Err(Error::OutsideDomain(alpha.to_string(), dom.to_string()));
    }
    let eta = y.lo().clone();
    if y.chain().restrict(&eta, alpha) != z.chain().restrict(&eta, alpha) {
        return Err(Error::NoCoincidence(format!("[{eta}, {alpha}]")));
    }
    let end = z.chain().eval_inv(alpha);
    let forced = y.chain().invert().after(&z.chain().restrict(alpha, &end));
    let piece = Chain::concat(&[Chain::identity(eta, alpha.clone()), forced])?;
    extend_partial(&dom, &[piece])
}

/// The stair built step by step: `g₀ ∘ g₁ ∘ … ∘ g_r`, where `g₀` is the slope-`q` line on the
/// initial box extended to J and each `g_i` is an identification step for `y_i = g_{i-1}⁻¹ y_{i-1}
/// g_{i-1}`.
pub fn iterative_conjugator(y: &PLMap, z: &PLMap, q: Pow2, r: usize) -> Result<PLMap> {
    let (alpha, _) = stair_depth(y, z, q)?;
    let eta = y.lo().clone();
    let dom = y.domain();
    let g0 = extend_partial(&dom, &[Chain::linear(eta.clone(), alpha.clone(), eta, q)])?;
    let mut h = g0.clone();
    let mut yi = y.conjugate_by(&g0)?;
    let mut a = alpha;
    for _ in 0..r {
        let gi = identification_step(&yi, z, &a)?;
        yi = yi.conjugate_by(&gi)?;
        h = h.compose(&gi)?;
        a = z.chain().eval_inv(&a);
    }
    Ok(h)
}

/// The forward-orbit limit of `lambda` under `z`: the nearest fixed point in the direction `z`
/// moves it.
fn orbit_limit(z: &PLMap, lambda: &Rat) -> Result<Option<(Rat, Rat, Rat)>> {
    let image = z.eval(lambda)?;
    if image == *lambda {
        return Ok(None);
    }
    let b = z.fixed_set().boundary();
    let lo = b.iter().filter(|p| *p < lambda).max().cloned().expect("ends are fixed");
    let hi = b.iter().filter(|p| *p > lambda).min().cloned().expect("ends are fixed");
    let tau = if image < *lambda { lo.clone() } else { hi.clone() };
    Ok(Some((tau, lo, hi)))
}

/// The forced slope at the orbit limit τ of any conjugator with `g(λ) = μ`: the eventually
/// constant ratio `(yⁿ(μ) - τ) / (zⁿ(λ) - τ)`. `None` if it is not a power of two or the one-sided
/// slopes of `y` and `z` at τ differ.
pub fn rho(y: &PLMap, z: &PLMap, lambda: &Rat, mu: &Rat) -> Result<Option<Pow2>> {
    Ok(rho_with_limit(y, z, lambda, mu)?.map(|(q, _)| q))
}

fn rho_with_limit(y: &PLMap, z: &PLMap, lambda: &Rat, mu: &Rat) -> Result<Option<(Pow2, Rat)>> {
    if y.fixed_set() != z.fixed_set() {
        return Err(Error::FixedSetMismatch);
    }
    let Some((tau, lo, hi)) = orbit_limit(z, lambda)? else {
        return Err(Error::OutOfRange(format!("{lambda} is fixed")));
    };
    if !(lo < *mu && *mu < hi) {
        return Err(Error::DifferentComponents(lambda.to_string(), mu.to_string()));
    }
    let (yc, zc) = (y.chain(), z.chain());
    let toward_left = tau == lo;
    // End of the linear piece of `f` touching τ, on the side of the component.
    let near = |f: &Chain<Dyadic>| -> Rat {
        let xs: Vec<Rat> = f.nodes().iter().map(|n| n.0.to_rat()).collect();
        if toward_left {
            xs.into_iter().find(|x| *x > tau).expect("tau is not the right end")
        } else {
            xs.into_iter().rev().find(|x| *x < tau).expect("tau is not the left end")
        }
    };
    let side = if toward_left { Side::Right } else { Side::Left };
    if y.one_sided_slope(&tau, side)? != z.one_sided_slope(&tau, side)? {
        return Ok(None);
    }
    let (ny, nz) = (near(yc), near(zc));
    let inside = |t: &Rat, edge: &Rat| if toward_left { t <= edge } else { t >= edge };
    let (mut a, mut b) = (mu.clone(), lambda.clone());
    // μ must be pushed towards τ by y as λ is by z.
    if (y.eval(&a)? < a) != toward_left {
        return Ok(None);
    }
    while !(inside(&a, &ny) && inside(&b, &nz)) {
        a = y.eval(&a)?;
        b = z.eval(&b)?;
    }
    let ratio = (&a - &tau) / (&b - &tau);
    let next = (&y.eval(&a)? - &tau) / (&z.eval(&b)? - &tau);
    if ratio != next {
        return Err(Error::Invariant("orbit ratio did not stabilise".into()));
    }
    Ok(ratio.ratio_pow2(&Rat::one()).map(|q| (q, tau)))
}

/// The unique conjugator `g` of `y` to `z` with `g(λ) = μ`, if any.
pub fn conjugator_with_value(y: &PLMap, z: &PLMap, lambda: &Rat, mu: &Rat) -> Result<Option<PLMap>> {
    let Some((q, tau)) = rho_with_limit(y, z, lambda, mu)? else {
        return Ok(None);
    };
    let anchor = if tau == y.lo().to_rat() {
        Anchor::LeftEnd
    } else if tau == y.hi().to_rat() {
        Anchor::RightEnd
    } else {
        Anchor::InteriorFixedPoint(tau)
    };
    let Some(g) = stair_pl20(y, z, &StairParams { q, anchor })? else {
        return Ok(None);
    };
    Ok((g.eval(lambda)? == *mu).then_some(g))
}

/// Whether `f` has no interior dyadic fixed points and no fixed intervals.
pub fn is_pl20(f: &PLMap) -> bool {
    crossings(&f.to_rat_chain()).is_ok()
}
