//! Simultaneous conjugacy.
//!
//! `g⁻¹xᵢg = yᵢ` for all `i` is solved left to right: once `g` handles the first `i - 1`
//! coordinates, every other solution is `g∘c` with `c` in the intersection of the centralizers of
//! `y₁, …, yᵢ₋₁`, so the next step is a conjugacy problem restricted to that intersection.
//! Cyclic factors of the intersection lead to equations `Xᵏ = G₀∘Yᵏ`, whose solution sets are
//! bounded and then scanned.

use num_integer::Integer;

use crate::central::{
    cell_generator, intersect_centralizers, membership, CentralizerDesc, CentralizerFactor, FactorKind,
};
use crate::conj::{conjugate, conjugate_detailed, dyadic_cells, verify};
use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::obstruction::{Decision, Obstruction};
use crate::plmap::{Interval, PLMap, Side};
use crate::reach::{build_tuple_map_in, orbit_search, push_forward};
use crate::stair::conjugator_with_value;

/// `Xᵏ = G₀∘Yᵏ` together with the substitution back to powers of the original generators:
/// a solution `k` gives `x̂ᵐ = g₀∘ŷⁿ` with `m = m_step·k + m0`, `n = n_step·k + n0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerEquation {
    pub x: PLMap,
    pub y: PLMap,
    pub g0: PLMap,
    pub m0: i64,
    pub n0: i64,
    pub m_step: i64,
    pub n_step: i64,
}

impl PowerEquation {
    pub fn holds(&self, k: i64) -> bool {
        matches!(self.g0.compose(&self.y.power(k)), Ok(r) if r == self.x.power(k))
    }

    pub fn back_substitute(&self, k: i64) -> (i64, i64) {
        (self.m_step * k + self.m0, self.n_step * k + self.n0)
    }
}

/// Whether the centralizer of `f` in PL₂ of its domain is infinite cyclic.
fn has_cyclic_centralizer(f: &PLMap) -> bool {
    !f.is_identity() && f.fixed_set().dyadic_boundary().len() == 2
}

fn require_cyclic(f: &PLMap) -> Result<()> {
    if has_cyclic_centralizer(f) {
        Ok(())
    } else {
        Err(Error::NotCyclic(f.to_string()))
    }
}

fn same_domain(a: &PLMap, b: &PLMap) -> Result<()> {
    if a.domain() != b.domain() {
        return Err(Error::DomainMismatch(a.domain().to_string(), b.domain().to_string()));
    }
    Ok(())
}

/// `(m0, n0)` with `α·m0 − β·n0 = γ`, if `gcd(α, β)` divides `γ`.
pub fn reduce_exponents(alpha: i64, beta: i64, gamma: i64) -> Option<(i64, i64)> {
    let e = alpha.extended_gcd(&beta);
    if e.gcd == 0 || gamma % e.gcd != 0 {
        return None;
    }
    Some((e.x * (gamma / e.gcd), -e.y * (gamma / e.gcd)))
}

/// Rewrites `x̂ᵐ = g₀∘ŷⁿ` (unknowns `m`, `n`) as a one-parameter [`PowerEquation`], or `None` when
/// the initial slopes already rule it out.
pub fn reduce_power_equation(xhat: &PLMap, yhat: &PLMap, g0: &PLMap) -> Result<Option<PowerEquation>> {
    same_domain(xhat, yhat)?;
    same_domain(xhat, g0)?;
    require_cyclic(xhat)?;
    require_cyclic(yhat)?;
    let (alpha, beta, gamma) =
        (xhat.initial_slope().exp(), yhat.initial_slope().exp(), g0.initial_slope().exp());
    let Some((m0, n0)) = reduce_exponents(alpha, beta, gamma) else {
        return Ok(None);
    };
    let g = alpha.gcd(&beta);
    let (m_step, n_step) = (beta / g, alpha / g);
    let eq = PowerEquation {
        x: xhat.power(m_step),
        y: yhat.power(n_step),
        g0: xhat.power(-m0).compose(g0)?.compose(&yhat.power(n0))?,
        m0,
        n0,
        m_step,
        n_step,
    };
    if !eq.g0.initial_slope().is_one() {
        return Err(Error::Invariant("reduced G0 does not start with slope 1".into()));
    }
    Ok(Some(eq))
}

/// An empty bracket.
const NONE: (i64, i64) = (1, 0);

/// Whether `f` is below the diagonal on the open cell `(a, b)` (which contains no fixed point).
fn below_on(f: &PLMap, a: &Rat, b: &Rat) -> Result<bool> {
    let p = a.midpoint(b);
    Ok(f.eval(&p)? < p)
}

/// Whether `f = g` on `[a, b]`: both are linear between consecutive breakpoints of either.
fn agree_on(f: &PLMap, g: &PLMap, a: &Rat, b: &Rat) -> Result<bool> {
    for p in breakpoints_between(f, g, a, b).iter().chain([a, b]) {
        if f.eval(p)? != g.eval(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn breakpoints_between(f: &PLMap, g: &PLMap, a: &Rat, b: &Rat) -> Vec<Rat> {
    let mut pts: Vec<Rat> = f
        .nodes()
        .iter()
        .chain(g.nodes())
        .map(|n| n.0.to_rat())
        .filter(|t| a < t && t < b)
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// Largest positive `k` that can solve `xᵏ = g∘yᵏ` on a cell where `x` and `y` lie on opposite
/// sides of the diagonal (0 if none): `xᵏ(p)` runs to an end of the cell while `g(yᵏ(p))` stays
/// on the far side of `g(p)`.
fn opposite_upper(x: &PLMap, y: &PLMap, g: &PLMap, p: &Rat) -> Result<i64> {
    let gp = g.eval(p)?;
    let y_up = y.eval(p)? > *p;
    let (mut t, mut k, mut last) = (p.clone(), 0i64, 0i64);
    loop {
        t = x.eval(&t)?;
        k += 1;
        if t == gp || (t > gp) != y_up {
            return Ok(last);
        }
        last = k;
    }
}

/// Upper bound for positive solutions of `xᵏ = g∘yᵏ` on `[a, b]`, where `x`, `y` are below the
/// diagonal with equal slopes at `a⁺`, `g` is the identity near `a`, and `x ≠ y` on the cell.
///
/// Past the point ψ where `x` and `y` first separate (say `x < y`), `xᵏ(ψ) < yᵏ(ψ)` for all
/// `k ≥ 1`; once `yᵏ(ψ)` falls below θ, where `g` is still the identity, the equation would force
/// equality there.
fn same_side_upper(x: &PLMap, y: &PLMap, g: &PLMap, a: &Rat, b: &Rat) -> Result<i64> {
    let first_after = |f: &PLMap| f.nodes().iter().map(|n| n.0.to_rat()).find(|t| t > a);
    let theta = [first_after(x), first_after(y), first_after(g), Some(b.clone())]
        .into_iter()
        .flatten()
        .min()
        .expect("b is present");
    let mut u = a.clone();
    let mut psi = None;
    for v in breakpoints_between(x, y, a, b).into_iter().chain([b.clone()]) {
        if x.eval(&v)? == y.eval(&v)? {
            u = v;
        } else {
            psi = Some(u.midpoint(&v));
            break;
        }
    }
    let psi = psi.ok_or_else(|| Error::Invariant("maps agree on the cell".into()))?;
    let slower = if x.eval(&psi)? < y.eval(&psi)? { y } else { x };
    let mut t = psi;
    let mut k = 0i64;
    while t >= theta {
        t = slower.eval(&t)?;
        k += 1;
    }
    Ok(k - 1)
}

fn bound_on_cell(x: &PLMap, y: &PLMap, g: &PLMap, a: &Rat, b: &Rat) -> Result<(i64, i64)> {
    let (xb, yb) = (below_on(x, a, b)?, below_on(y, a, b)?);
    if xb != yb {
        let p = a.midpoint(b);
        let upper = opposite_upper(x, y, g, &p)?;
        let lower = opposite_upper(&x.invert(), &y.invert(), g, &p)?;
        return Ok((-lower, upper));
    }
    if !xb {
        // xᵏ = g∘yᵏ is (x⁻¹)⁻ᵏ = g∘(y⁻¹)⁻ᵏ.
        let (l, u) = bound_on_cell(&x.invert(), &y.invert(), g, a, b)?;
        return Ok(if l > u { NONE } else { (-u, -l) });
    }
    let (sx, sy) = (x.one_sided_slope(a, Side::Right)?, y.one_sided_slope(a, Side::Right)?);
    let sg = g.one_sided_slope(a, Side::Right)?;
    if sx != sy {
        // The slope at a⁺ alone pins k down.
        let e = sx.exp() - sy.exp();
        return Ok(if sg.exp() % e == 0 { (sg.exp() / e, sg.exp() / e) } else { NONE });
    }
    if !sg.is_one() {
        return Ok(NONE);
    }
    let upper = same_side_upper(x, y, g, a, b)?;
    // For k = −j < 0: yʲ = g∘(g⁻¹xg)ʲ, the same problem with the roles exchanged.
    let xh = x.conjugate_by(g)?;
    let lower = if agree_on(&xh, y, a, b)? { 0 } else { same_side_upper(y, &xh, g, a, b)? };
    Ok((-lower, upper))
}

/// Integers `(l0, k0)` with every solution of the equation in `[l0, k0]`; `l0 > k0` means there
/// is none. Requires `X ≠ Y` and `D(X) = D(Y)`.
pub fn bound_k(eq: &PowerEquation) -> Result<(i64, i64)> {
    let (x, y, g) = (&eq.x, &eq.y, &eq.g0);
    if x == y {
        return Err(Error::DegenerateEquation);
    }
    let (fx, fy) = (x.fixed_set(), y.fixed_set());
    if fx != fy {
        return Err(Error::FixedSetMismatch);
    }
    let pts = fx.boundary();
    for p in &pts {
        if g.eval(p)? != *p {
            return Ok(NONE);
        }
    }
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if fx.contains(&a.midpoint(b)) || agree_on(x, y, a, b)? {
            continue;
        }
        return bound_on_cell(x, y, g, a, b);
    }
    Err(Error::Invariant("distinct maps agree on every cell".into()))
}

/// Some `k` with `Xᵏ = G₀∘Yᵏ`, or `None`.
pub fn solve_power_equation(eq: &PowerEquation) -> Result<Option<i64>> {
    if eq.x == eq.y {
        return Ok(eq.g0.is_identity().then_some(0));
    }
    let (fx, fy) = (eq.x.fixed_set(), eq.y.fixed_set());
    if fx != fy {
        // A point fixed by one side only determines k through an orbit.
        let cand = if let Some(t) = fy.boundary().into_iter().find(|t| !fx.contains(t)) {
            orbit_search(&eq.x, &t, &eq.g0.eval(&t)?)?
        } else {
            let t = fx.boundary().into_iter().find(|t| !fy.contains(t)).expect("fixed sets differ");
            orbit_search(&eq.y, &t, &eq.g0.eval_inv(&t)?)?
        };
        return Ok(cand.filter(|&k| eq.holds(k)));
    }
    let (l0, k0) = bound_k(eq)?;
    Ok((l0..=k0).find(|&k| eq.holds(k)))
}

/// Some `k` with `x̂⁻ᵏ∘y∘x̂ᵏ = z`, where the centralizer of `x̂` is generated by `x̂`.
pub fn solve_in_cyclic(xhat: &PLMap, y: &PLMap, z: &PLMap) -> Result<Option<i64>> {
    same_domain(xhat, y)?;
    same_domain(xhat, z)?;
    require_cyclic(xhat)?;
    if y == z {
        return Ok(Some(0));
    }
    let Some(w) = conjugate(y, z)? else {
        return Ok(None);
    };
    let g0 = w.conjugator;
    let found = |m: i64| verify(y, z, &xhat.power(m));
    // Conjugators are g₀∘c with c ∈ C(z); all of those agree with g₀ on ∂₂D(z).
    let db = z.fixed_set().dyadic_boundary();
    if db.len() > 2 {
        let tau = db[1].to_rat();
        let cand = orbit_search(xhat, &tau, &g0.eval(&tau)?)?;
        return Ok(cand.filter(|&m| found(m)));
    }
    let zhat = cell_generator(z)?;
    let Some(eq) = reduce_power_equation(xhat, &zhat, &g0)? else {
        return Ok(None);
    };
    let Some(k) = solve_power_equation(&eq)? else {
        return Ok(None);
    };
    let (m, _) = eq.back_substitute(k);
    if !found(m) {
        return Err(Error::Invariant(format!("power {m} solves the reduced equation only")));
    }
    Ok(Some(m))
}

/// Some `g` in the described subgroup with `g(D(y)) = D(z)`.
pub fn match_fixed_sets_in(desc: &CentralizerDesc, y: &PLMap, z: &PLMap) -> Result<Option<PLMap>> {
    same_domain(y, z)?;
    if y.domain() != *desc.domain() {
        return Err(Error::DomainMismatch(y.domain().to_string(), desc.domain().to_string()));
    }
    let (fy, fz) = (y.fixed_set(), z.fixed_set());
    let (by, bz) = (fy.boundary(), fz.boundary());
    if by.len() != bz.len() {
        return Ok(None);
    }
    let lambdas: Vec<Rat> = desc.partition().iter().map(|d| d.to_rat()).collect();
    let factors = desc.factors();
    let mut per_cell: Vec<(Vec<Rat>, Vec<Rat>)> = vec![(Vec::new(), Vec::new()); factors.len()];
    for (a, b) in by.iter().zip(&bz) {
        if lambdas.contains(a) || lambdas.contains(b) {
            // Partition points are fixed by the whole subgroup.
            if a != b {
                return Ok(None);
            }
            continue;
        }
        let i = factors.iter().position(|f| f.interval.contains_interior(a)).expect("a lies in a cell");
        if !factors[i].interval.contains_interior(b) {
            return Ok(None);
        }
        per_cell[i].0.push(a.clone());
        per_cell[i].1.push(b.clone());
    }
    let mut pieces = Vec::with_capacity(factors.len());
    for (f, (xs, ys)) in factors.iter().zip(&per_cell) {
        let cell = &f.interval;
        let piece = match &f.kind {
            FactorKind::Trivial => {
                if xs != ys {
                    return Ok(None);
                }
                PLMap::identity(cell)
            }
            FactorKind::Cyclic(a) => {
                let ac = a.restrict(cell)?;
                let mut power: Option<i64> = None;
                for (s, t) in xs.iter().zip(ys) {
                    if ac.eval(s)? == *s {
                        if s != t {
                            return Ok(None);
                        }
                        continue;
                    }
                    match orbit_search(&ac, s, t)? {
                        Some(v) if power.is_none_or(|p| p == v) => power = Some(v),
                        _ => return Ok(None),
                    }
                }
                ac.power(power.unwrap_or(0))
            }
            FactorKind::Full => match build_tuple_map_in(cell, xs, ys)? {
                Some(g) => g,
                None => return Ok(None),
            },
        };
        pieces.push(piece);
    }
    let g = PLMap::glue(&pieces)?;
    Ok((push_forward(&g, fy.components()) == fz.components()).then_some(g))
}

/// The factor of `desc` whose cell contains `cell`.
fn factor_over<'a>(desc: &'a CentralizerDesc, cell: &Interval) -> &'a CentralizerFactor {
    let f = desc.factors().iter().find(|f| f.interval.contains_interval(cell));
    f.expect("cell avoids partition points")
}

/// Some `g` commuting with every element of `xs` and with `g⁻¹∘y∘g = z`.
pub fn conjugate_in_centralizer(xs: &[PLMap], y: &PLMap, z: &PLMap) -> Result<Option<PLMap>> {
    if xs.is_empty() {
        return Ok(conjugate(y, z)?.map(|w| w.conjugator));
    }
    let desc = intersect_centralizers(xs)?;
    let Some(g1) = match_fixed_sets_in(&desc, y, z)? else {
        return Ok(None);
    };
    let g1i = g1.invert();
    let yh = y.conjugate_by(&g1i)?;
    let lambdas: Vec<Rat> = desc.partition().iter().map(|d| d.to_rat()).collect();
    let mut pieces = Vec::new();
    for cell in dyadic_cells(&yh) {
        let (yc, zc) = (yh.restrict(&cell)?, z.restrict(&cell)?);
        let piece = if yc.is_identity() {
            Some(yc)
        } else if let Some(l) = lambdas.iter().find(|l| cell.contains_interior(l)) {
            // The conjugator must fix l, which y moves: at most one candidate.
            conjugator_with_value(&yc, &zc, l, l)?
        } else {
            let f = factor_over(&desc, &cell);
            match &f.kind {
                FactorKind::Trivial => (yc == zc).then(|| PLMap::identity(&cell)),
                FactorKind::Full => conjugate(&yc, &zc)?.map(|w| w.conjugator),
                // A nontrivial power of the generator fixes no dyadic point inside its cell.
                FactorKind::Cyclic(a) if f.interval == cell => {
                    let ac = a.restrict(&cell)?;
                    solve_in_cyclic(&ac, &yc, &zc)?.map(|k| ac.power(k))
                }
                FactorKind::Cyclic(_) => (yc == zc).then(|| PLMap::identity(&cell)),
            }
        };
        match piece {
            Some(p) => pieces.push(p),
            None => return Ok(None),
        }
    }
    let h = PLMap::glue(&pieces)?;
    if !verify(&yh, z, &h) || !membership(&desc, &h) {
        return Ok(None);
    }
    let g = g1i.compose(&h)?;
    if !verify(y, z, &g) || !membership(&desc, &g) {
        return Err(Error::Invariant(format!("constrained conjugator fails: {g}")));
    }
    Ok(Some(g))
}

/// Some `g` with `g⁻¹∘xs[i]∘g = ys[i]` for every `i`, or the first coordinate that fails.
pub fn simultaneous_conjugate_detailed(xs: &[PLMap], ys: &[PLMap]) -> Result<Decision<PLMap>> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.is_empty() {
        return Err(Error::Empty("tuple"));
    }
    let mut g = match conjugate_detailed(&xs[0], &ys[0])? {
        Ok(w) => w.conjugator,
        Err(o) => return Ok(Err(Obstruction::Coordinate { index: 0, inner: Box::new(o) })),
    };
    for i in 1..xs.len() {
        let xi = xs[i].conjugate_by(&g)?;
        let Some(c) = conjugate_in_centralizer(&ys[..i], &xi, &ys[i])? else {
            let o = match conjugate_detailed(&xs[i], &ys[i])? {
                Err(inner) => Obstruction::Coordinate { index: i, inner: Box::new(inner) },
                Ok(_) => Obstruction::Constrained { index: i },
            };
            return Ok(Err(o));
        };
        g = g.compose(&c)?;
    }
    if !xs.iter().zip(ys).all(|(x, y)| verify(x, y, &g)) {
        return Err(Error::Invariant(format!("simultaneous conjugator fails: {g}")));
    }
    Ok(Ok(g))
}

/// [`simultaneous_conjugate_detailed`] without the obstruction.
pub fn simultaneous_conjugate(xs: &[PLMap], ys: &[PLMap]) -> Result<Option<PLMap>> {
    Ok(simultaneous_conjugate_detailed(xs, ys)?.ok())
}
