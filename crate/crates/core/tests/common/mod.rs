//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use plconj_core::central::{CentralizerDesc, FactorKind};
use plconj_core::plmap::interval_map;
use plconj_core::random::{random_below, random_element, Shape};
use plconj_core::simconj::PowerEquation;
use plconj_core::{Dyadic, Interval, PLMap};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SMALL: Shape = Shape { max_leaves: 7, max_depth: 6 };

/// `f ∈ PL₂([0,1])` carried onto `j` by an interval map.
pub fn transport(f: &PLMap, j: &Interval) -> PLMap {
    let phi = interval_map(&Dyadic::zero(), &Dyadic::one(), j.lo(), j.hi()).unwrap();
    PLMap::from_chain(phi.after(&f.chain().after(&phi.invert()))).unwrap()
}

/// Random element of PL₂([a, b]) extended by the identity.
pub fn supported_on(rng: &mut ChaCha8Rng, a: &str, b: &str) -> PLMap {
    let j = Interval::new(a.parse().unwrap(), b.parse().unwrap()).unwrap();
    transport(&random_element(rng, SMALL), &j).extend_to(&Interval::unit()).unwrap()
}

/// Tuples with a mix of unrelated, commuting and partially supported elements.
pub fn random_tuple(rng: &mut ChaCha8Rng, k: usize) -> Vec<PLMap> {
    let mut xs: Vec<PLMap> = Vec::with_capacity(k);
    while xs.len() < k {
        let x = match rng.gen_range(0..5) {
            0 | 1 => random_element(rng, SMALL),
            2 if !xs.is_empty() => {
                let i = rng.gen_range(0..xs.len());
                xs[i].power(rng.gen_range(-3..=3))
            }
            3 => supported_on(rng, "0", "1/2").compose(&supported_on(rng, "1/2", "1")).unwrap(),
            _ => supported_on(rng, "1/4", "3/4"),
        };
        xs.push(x);
    }
    xs
}

/// A random element of the group described by `d`, cell by cell.
pub fn sample_member(rng: &mut ChaCha8Rng, d: &CentralizerDesc) -> PLMap {
    let pieces: Vec<PLMap> = d
        .factors()
        .iter()
        .map(|f| match &f.kind {
            FactorKind::Trivial => PLMap::identity(&f.interval),
            FactorKind::Cyclic(g) => g.restrict(&f.interval).unwrap().power(rng.gen_range(-3..=3)),
            FactorKind::Full => transport(&random_element(rng, SMALL), &f.interval),
        })
        .collect();
    PLMap::glue(&pieces).unwrap()
}

/// `X` below the diagonal, `Y = h⁻¹Xh` with `h` of slope 1 at 0 (so `X`, `Y` share their germ at
/// 0) and `G₀ = Xᵏ∘Y⁻ᵏ`; half of the time everything is inverted to land above the diagonal.
pub fn planted_equation(rng: &mut ChaCha8Rng, k: i64) -> PowerEquation {
    loop {
        let mut x = random_below(rng, Shape::default());
        let h = random_element(rng, Shape::default());
        if !h.initial_slope().is_one() {
            continue;
        }
        let mut y = x.conjugate_by(&h).unwrap();
        if x == y {
            continue;
        }
        if rng.gen_bool(0.5) {
            x = x.invert();
            y = y.invert();
        }
        let g0 = x.power(k).compose(&y.power(-k)).unwrap();
        return PowerEquation { x, y, g0, m0: 0, n0: 0, m_step: 1, n_step: 1 };
    }
}
