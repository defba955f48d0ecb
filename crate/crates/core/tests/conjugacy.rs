use plconj_core::conj::{conjugate, conjugate_detailed, verify};
use plconj_core::random::{random_element, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_round_trips_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let shape = Shape::default();
    for i in 0..300 {
        let y = random_element(&mut rng, shape);
        let g = random_element(&mut rng, shape);
        let z = y.conjugate_by(&g).unwrap();
        let res = conjugate_detailed(&y, &z).unwrap();
        let w = res.unwrap_or_else(|o| panic!("instance {i}: {o}\ny = {y}\ng = {g}"));
        assert!(verify(&y, &z, &w.conjugator));
    }
}

#[test]
fn conjugacy_is_symmetric_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let shape = Shape { max_leaves: 6, max_depth: 5 };
    for _ in 0..200 {
        let y = random_element(&mut rng, shape);
        let z = random_element(&mut rng, shape);
        let a = conjugate(&y, &z).unwrap();
        let b = conjugate(&z, &y).unwrap();
        assert_eq!(a.is_some(), b.is_some(), "y = {y}, z = {z}");
        if let Some(w) = a {
            assert!(verify(&z, &y, &w.conjugator.invert()));
        }
    }
}
