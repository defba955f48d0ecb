//! Seeded random elements for property tests and test-vector generation.
//!
//! Elements are drawn as pairs of random standard dyadic subdivisions with the same number of
//! leaves, mapped leaf to leaf; every slope is then a ratio of two powers of 2.

use rand::Rng;

use crate::exactnum::{Dyadic, Pow2};
use crate::plmap::{from_partition, Class, Interval, PLMap};

/// Shape limits for random elements.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    /// Maximum number of leaves of each subdivision (an element has at most this many + 1 nodes).
    pub max_leaves: usize,
    /// Maximum subdivision depth; all breakpoints have denominators at most `2^max_depth`.
    pub max_depth: u32,
}

impl Default for Shape {
    fn default() -> Shape {
        Shape { max_leaves: 11, max_depth: 8 }
    }
}

/// Partition points of a random subdivision of `[0, 1]` with exactly `leaves` leaves.
fn subdivision<R: Rng>(rng: &mut R, leaves: usize, max_depth: u32) -> Vec<Dyadic> {
    // (left end, depth) of each leaf
    let mut cells: Vec<(Dyadic, u32)> = vec![(Dyadic::zero(), 0)];
    while cells.len() < leaves {
        let open: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].1 < max_depth).collect();
        if open.is_empty() {
            break;
        }
        let i = open[rng.gen_range(0..open.len())];
        let (lo, depth) = cells[i].clone();
        let mid = &lo + &Pow2::new(-(depth as i64) - 1).to_dyadic();
        cells[i] = (lo, depth + 1);
        cells.insert(i + 1, (mid, depth + 1));
    }
    let mut pts: Vec<Dyadic> = cells.into_iter().map(|c| c.0).collect();
    pts.push(Dyadic::one());
    pts
}

/// A random element of PL₂([0, 1]).
pub fn random_element<R: Rng>(rng: &mut R, shape: Shape) -> PLMap {
    let leaves = rng.gen_range(1..=shape.max_leaves.max(1));
    let leaves = leaves.min(1usize << shape.max_depth.min(20));
    let xs = subdivision(rng, leaves, shape.max_depth);
    let ys = subdivision(rng, xs.len() - 1, shape.max_depth);
    if xs.len() != ys.len() {
        return PLMap::identity_unit();
    }
    from_partition(&xs, &ys).expect("subdivisions share endpoints")
}

/// A random element that is not the identity.
pub fn random_nontrivial<R: Rng>(rng: &mut R, shape: Shape) -> PLMap {
    loop {
        let f = random_element(rng, shape);
        if !f.is_identity() {
            return f;
        }
    }
}

/// A random element strictly below the diagonal on `(0, 1)`, by rejection.
pub fn random_below<R: Rng>(rng: &mut R, shape: Shape) -> PLMap {
    loop {
        let f = random_nontrivial(rng, shape);
        match f.classify(&Interval::unit()).expect("unit interval is invariant") {
            Class::Below => return f,
            Class::Above => return f.invert(),
            _ => {}
        }
    }
}

/// A random element with no interior dyadic fixed points and no fixed intervals.
pub fn random_pl20<R: Rng>(rng: &mut R, shape: Shape) -> PLMap {
    loop {
        let f = random_nontrivial(rng, shape);
        if crate::stair::is_pl20(&f) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes_are_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shape = Shape::default();
        for _ in 0..200 {
            let f = random_element(&mut rng, shape);
            assert!(f.nodes().len() <= shape.max_leaves + 1);
            for (x, y) in f.nodes() {
                assert!(x.exp() <= 8 && y.exp() <= 8);
            }
        }
        let b = random_below(&mut rng, shape);
        assert_eq!(b.classify(&Interval::unit()).unwrap(), Class::Below);
    }
}
