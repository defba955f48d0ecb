use num_bigint::BigInt;
use plconj_core::central::{all_roots, centralizer, intersect_centralizers, membership, nth_root, reduce_to_two, FactorKind};
use plconj_core::conj::{conjugate_detailed, verify};
use plconj_core::exactnum::{decompose, solve_exponent};
use plconj_core::plmap::{extend_partial, from_partition, Class, FixedSet, PartialMap};
use plconj_core::random::{random_below, random_element, random_pl20, Shape};
use plconj_core::reach::{build_tuple_map, can_map, orbit_search};
use plconj_core::stair::{conjugator_with_value, stair_below};
use plconj_core::{Dyadic, Interval, PLMap, Pow2, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SMALL: Shape = Shape { max_leaves: 7, max_depth: 6 };

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn elem(seed: u64) -> PLMap {
    random_element(&mut rng(seed), SMALL)
}

/// Rationals in (0, 1) with small odd denominators and a power-of-two factor.
fn unit_rat() -> impl Strategy<Value = Rat> {
    (1i64..=63, 0u32..6).prop_flat_map(|(n, k)| {
        let den = (2 * n + 1) << k;
        (1..den).prop_map(move |p| Rat::new(p, den))
    })
}

fn dyadic_rat() -> impl Strategy<Value = Rat> {
    (1u32..8).prop_flat_map(|k| (1i64..(1 << k)).prop_map(move |p| Rat::new(p, 1i64 << k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_recombines(a in unit_rat()) {
        let d = decompose(&a).unwrap();
        let back = Rat::new(d.m.clone(), d.n.clone()).mul_pow2(Pow2::new(d.t));
        prop_assert_eq!(back, a);
        prop_assert!(d.m.bit(0) && d.n.bit(0));
    }

    #[test]
    fn arithmetic_is_exact(a in unit_rat(), b in unit_rat(), x in -1000i64..1000, e in -20i64..20) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        let d = Dyadic::new(x, e);
        let f = Dyadic::new(x + 7, e - 3);
        prop_assert_eq!((d.clone() + f.clone()) - f.clone(), d.clone());
        prop_assert_eq!(d.to_rat(), Rat::new(x, 1).mul_pow2(Pow2::new(-e)));
    }

    #[test]
    fn group_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), i in -4i64..4, j in -4i64..4) {
        let (f, g, h) = (elem(a), elem(b), elem(c));
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(f.compose(&f.invert()).unwrap().is_identity());
        prop_assert_eq!(f.power(i + j), f.power(i).compose(&f.power(j)).unwrap());
    }

    #[test]
    fn conjugation_transports_fixed_sets(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (elem(a), elem(b));
        let c = f.conjugate_by(&g).unwrap();
        // g⁻¹fg fixes t iff f fixes g(t).
        let pre: Vec<Rat> = f.fixed_set().boundary().iter().map(|t| g.eval_inv(t).unwrap()).collect();
        prop_assert_eq!(c.fixed_set().boundary(), pre);
        prop_assert_eq!(FixedSet::of(&c).components().len(), f.fixed_set().components().len());
    }

    #[test]
    fn below_orbits_decrease(a in any::<u64>(), t in unit_rat()) {
        let f = random_below(&mut rng(a), SMALL);
        prop_assert_eq!(f.classify(&Interval::unit()).unwrap(), Class::Below);
        let mut s = t;
        for _ in 0..40 {
            let next = f.eval(&s).unwrap();
            prop_assert!(next < s && next.is_positive());
            s = next;
        }
    }

    #[test]
    fn partition_maps_hit_their_points(a in any::<u64>()) {
        let mut r = rng(a);
        let n = r.gen_range(1..6);
        let pick = |r: &mut ChaCha8Rng| {
            let mut v: Vec<Dyadic> = (0..n).map(|_| Dyadic::new(r.gen_range(1..256), 8)).collect();
            v.sort();
            v.dedup();
            v
        };
        let (mut xs, mut ys) = (pick(&mut r), pick(&mut r));
        let m = xs.len().min(ys.len());
        xs.truncate(m);
        ys.truncate(m);
        for v in [&mut xs, &mut ys] {
            v.insert(0, Dyadic::zero());
            v.push(Dyadic::one());
        }
        let f = from_partition(&xs, &ys).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            prop_assert_eq!(&f.eval_dyadic(x), y);
        }
    }

    #[test]
    fn extension_keeps_segments(a in any::<u64>()) {
        let mut r = rng(a);
        // Two disjoint prescribed pieces with slopes 2^s.
        let s1 = r.gen_range(-2i64..=1);
        let s2 = r.gen_range(-2i64..=1);
        let p1 = PartialMap::linear(Dyadic::new(1, 3), Dyadic::new(2, 3), Dyadic::new(1, 3), Pow2::new(s1));
        let p2 = PartialMap::linear(Dyadic::new(5, 3), Dyadic::new(6, 3), Dyadic::new(5, 3), Pow2::new(s2));
        prop_assume!(p1.dst_hi() < p2.dst_lo());
        let f = extend_partial(&Interval::unit(), &[p1.clone(), p2.clone()]).unwrap();
        prop_assert_eq!(f.chain().restrict(p1.src_lo(), p1.src_hi()), p1);
        prop_assert_eq!(f.chain().restrict(p2.src_lo(), p2.src_hi()), p2);
    }

    #[test]
    fn reachability_is_an_equivalence(a in unit_rat(), b in unit_rat(), c in unit_rat()) {
        prop_assert!(can_map(&a, &a).unwrap());
        prop_assert_eq!(can_map(&a, &b).unwrap(), can_map(&b, &a).unwrap());
        if can_map(&a, &b).unwrap() && can_map(&b, &c).unwrap() {
            prop_assert!(can_map(&a, &c).unwrap());
        }
        if let Some(g) = build_tuple_map(&[a.clone()], &[b.clone()]).unwrap() {
            prop_assert_eq!(g.eval(&a).unwrap(), b.clone());
        } else {
            prop_assert!(!can_map(&a, &b).unwrap());
        }
    }

    #[test]
    fn tuple_witnesses_verify(a in any::<u64>()) {
        // Images of points under a random element are always reachable together.
        let mut r = rng(a);
        let g = random_element(&mut r, SMALL);
        let mut xs: Vec<Rat> = (0..4).map(|_| Rat::new(r.gen_range(1..45), 45)).collect();
        xs.sort();
        xs.dedup();
        let ys: Vec<Rat> = xs.iter().map(|t| g.eval(t).unwrap()).collect();
        let w = build_tuple_map(&xs, &ys).unwrap().unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            prop_assert_eq!(&w.eval(x).unwrap(), y);
        }
    }

    #[test]
    fn orbit_search_is_sound_and_complete(a in any::<u64>(), t in dyadic_rat(), n in -6i64..=6) {
        let h = elem(a);
        let target = h.power(n).eval(&t).unwrap();
        let found = orbit_search(&h, &t, &target).unwrap().unwrap();
        prop_assert_eq!(h.power(found).eval(&t).unwrap(), target);
        // A point off the orbit (a different odd denominator) is never reached.
        prop_assert_eq!(orbit_search(&h, &t, &Rat::new(1, 3)).unwrap(), None);
    }

    #[test]
    fn root_slopes_are_distinct(a in any::<u64>(), e in 1i64..=4) {
        let x = random_pl20(&mut rng(a), SMALL).power(e);
        let roots = all_roots(&x).unwrap();
        let mut slopes: Vec<i64> = roots.iter().map(|(_, h)| h.initial_slope().exp()).collect();
        for (n, h) in &roots {
            prop_assert_eq!(h.power(*n as i64), x.clone());
            prop_assert_eq!(nth_root(&x, *n).unwrap(), Some(h.clone()));
        }
        slopes.dedup();
        prop_assert_eq!(slopes.len(), roots.len());
        prop_assert!(roots.iter().any(|(n, _)| *n as i64 % e == 0));
    }

    #[test]
    fn descriptor_samples_commute(a in any::<u64>(), b in any::<u64>()) {
        let x = elem(a);
        let d = centralizer(&x).unwrap();
        let mut r = rng(b);
        // A random element of the described group, cell by cell.
        let mut pieces = Vec::new();
        for f in d.factors() {
            let piece = match &f.kind {
                FactorKind::Trivial => PLMap::identity(&f.interval),
                FactorKind::Cyclic(g) => g.restrict(&f.interval).unwrap().power(r.gen_range(-3..=3)),
                FactorKind::Full => {
                    let u = random_element(&mut r, SMALL);
                    let phi = plconj_core::plmap::interval_map(&Dyadic::zero(), &Dyadic::one(), f.interval.lo(), f.interval.hi()).unwrap();
                    PLMap::from_chain(phi.after(&u.chain().after(&phi.invert()))).unwrap()
                }
            };
            pieces.push(piece);
        }
        let g = PLMap::glue(&pieces).unwrap();
        prop_assert!(g.commutes_with(&x).unwrap());
        prop_assert!(membership(&d, &g));
    }

    #[test]
    fn commuting_elements_are_members(a in any::<u64>(), i in -3i64..=3) {
        let x = elem(a);
        prop_assert!(membership(&centralizer(&x).unwrap(), &x.power(i)));
        let y = elem(a.wrapping_add(1));
        let d = centralizer(&x).unwrap();
        prop_assert_eq!(membership(&d, &y), y.commutes_with(&x).unwrap());
    }

    #[test]
    fn intersection_ignores_order_and_repeats(a in any::<u64>(), b in any::<u64>(), i in -2i64..=2) {
        let (x, y) = (elem(a), elem(b).power(i).compose(&elem(a)).unwrap());
        let d = intersect_centralizers(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(&intersect_centralizers(&[y.clone(), x.clone()]).unwrap(), &d);
        prop_assert_eq!(&intersect_centralizers(&[x.clone(), y.clone(), x.clone()]).unwrap(), &d);
        let (w1, w2) = reduce_to_two(&d).unwrap();
        prop_assert_eq!(intersect_centralizers(&[w1, w2]).unwrap(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stair_is_unique(a in any::<u64>(), b in any::<u64>()) {
        let y = random_below(&mut rng(a), SMALL);
        let g = elem(b);
        let z = y.conjugate_by(&g).unwrap();
        let q = g.initial_slope();
        let first = stair_below(&y, &z, q).unwrap();
        prop_assert_eq!(&first, &Some(g));
        prop_assert_eq!(stair_below(&y, &z, q).unwrap(), first);
        prop_assert_eq!(stair_below(&y, &y, Pow2::ONE).unwrap(), Some(PLMap::identity_unit()));
    }

    #[test]
    fn powers_transport_conjugacy(a in any::<u64>(), b in any::<u64>(), n in prop::sample::select(vec![2i64, 3, 5])) {
        let (y, g) = (elem(a), elem(b));
        let z = y.conjugate_by(&g).unwrap();
        prop_assert!(verify(&y.power(n), &z.power(n), &g));
        // And a non-conjugator stays one for the powers.
        let h = elem(b ^ 0x5555);
        prop_assert_eq!(verify(&y, &z, &h), verify(&y.power(n), &z.power(n), &h));
    }

    #[test]
    fn value_prescribed_conjugators_agree(a in any::<u64>(), b in any::<u64>(), t in dyadic_rat()) {
        let y = random_below(&mut rng(a), SMALL);
        let g = elem(b);
        let z = y.conjugate_by(&g).unwrap();
        prop_assume!(z.eval(&t).unwrap() != t);
        let mu = g.eval(&t).unwrap();
        let h = conjugator_with_value(&y, &z, &t, &mu).unwrap();
        prop_assert_eq!(&h, &Some(g));
        prop_assert_eq!(conjugator_with_value(&y, &z, &t, &mu).unwrap(), h);
    }

    #[test]
    fn negative_conjugacy_names_an_obstruction(a in any::<u64>(), b in any::<u64>()) {
        let (y, z) = (elem(a), elem(b));
        match conjugate_detailed(&y, &z).unwrap() {
            Ok(w) => prop_assert!(verify(&y, &z, &w.conjugator)),
            Err(o) => prop_assert!(!o.kind().is_empty()),
        }
    }
}

#[test]
fn exponent_congruence_matches_brute_force() {
    for n in (1..=99i64).step_by(2) {
        let orbit: Vec<i64> = {
            let mut v = Vec::new();
            let mut p = 1 % n;
            loop {
                if v.contains(&p) {
                    break v;
                }
                v.push(p);
                p = (2 * p) % n;
            }
        };
        for m in (1..n).filter(|m| num_integer::Integer::gcd(m, &n) == 1) {
            for u in (1..n).filter(|u| num_integer::Integer::gcd(u, &n) == 1) {
                let got = solve_exponent(&BigInt::from(m), &BigInt::from(u), &BigInt::from(n)).unwrap();
                let want = orbit.iter().position(|p| (p * m - u).rem_euclid(n) == 0);
                assert_eq!(got, want.map(|r| r as u64), "m = {m}, u = {u}, n = {n}");
            }
        }
    }
}
