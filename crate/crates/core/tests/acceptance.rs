//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest harness so the
//! report is always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{planted_equation, random_tuple, sample_member, SMALL};
use plconj_core::central::{all_roots, centralizer, intersect_centralizers, membership, nth_root, reduce_to_two, FactorKind};
use plconj_core::conj::{conjugate, verify};
use plconj_core::fixtures::{x0, x1};
use plconj_core::obstruction::Obstruction;
use plconj_core::random::{random_below, random_element, Shape};
use plconj_core::reach::{orbit_search, reach};
use plconj_core::simconj::{bound_k, simultaneous_conjugate};
use plconj_core::stair::{explicit_conjugator, iterative_conjugator, stair_below, stair_depth};
use plconj_core::{PLMap, Pow2, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn reachability() -> Outcome {
    let (a, b, c) = (r("1/17"), r("13/17"), r("3/17"));
    let t = Instant::now();
    let yes = reach(&a, &b).map_err(|e| e.to_string())?;
    let t_yes = t.elapsed();
    let g = yes.map_err(|o| format!("1/17 -> 13/17 refused: {o}"))?;
    ensure!(g.eval(&a).unwrap() == b, "witness sends 1/17 to {}", g.eval(&a).unwrap());
    let t = Instant::now();
    let no = reach(&a, &c).map_err(|e| e.to_string())?;
    let t_no = t.elapsed();
    match no {
        Err(Obstruction::ExponentCongruence { .. }) => {}
        other => return Err(format!("1/17 -> 3/17 gave {other:?}")),
    }
    let limit = Duration::from_millis(100);
    ensure!(t_yes < limit && t_no < limit, "too slow: {} / {}", secs(t_yes), secs(t_no));
    Ok(format!("YES in {}, NO (exponent congruence) in {}", secs(t_yes), secs(t_no)))
}

fn conjugacy_round_trip() -> Outcome {
    let mut rng = rng(1);
    let shape = Shape::default();
    let t = Instant::now();
    for i in 0..1000 {
        let y = random_element(&mut rng, shape);
        let g = random_element(&mut rng, shape);
        ensure!(y.nodes().len() <= 12 && g.nodes().len() <= 12, "generator exceeded 12 nodes");
        let z = y.conjugate_by(&g).unwrap();
        let w = conjugate(&y, &z).map_err(|e| format!("instance {i}: {e}"))?;
        let w = w.ok_or_else(|| format!("instance {i}: no witness for y = {y}, g = {g}"))?;
        ensure!(verify(&y, &z, &w.conjugator), "instance {i}: witness fails");
    }
    let el = t.elapsed();
    ensure!(el < Duration::from_secs(60), "took {}", secs(el));
    Ok(format!("1000/1000 verified in {}", secs(el)))
}

fn stair_uniqueness() -> Outcome {
    let mut rng = rng(3);
    for i in 0..200 {
        let y = random_below(&mut rng, Shape::default());
        let g = random_element(&mut rng, Shape::default());
        let z = y.conjugate_by(&g).unwrap();
        for q in [g.initial_slope(), Pow2::new(-1), Pow2::ONE] {
            let a = stair_below(&y, &z, q).map_err(|e| e.to_string())?;
            let b = stair_below(&y, &z, q).map_err(|e| e.to_string())?;
            ensure!(a == b, "instance {i}: runs differ for q = {q}");
            if let Some(h) = &a {
                ensure!(verify(&y, &z, h) && h.initial_slope() == q, "instance {i}: bad witness");
            }
        }
        ensure!(stair_below(&y, &z, g.initial_slope()).unwrap() == Some(g.clone()), "instance {i}: g not recovered");
        let id = stair_below(&y, &y, Pow2::ONE).map_err(|e| e.to_string())?;
        ensure!(id == Some(PLMap::identity_unit()), "instance {i}: q = 1, y = z gave {id:?}");
    }
    Ok("200 pairs: repeated runs identical, q = 1 on y = y gives the identity".into())
}

fn explicit_formula() -> Outcome {
    let mut rng = rng(4);
    let mut done = 0;
    while done < 100 {
        let y = random_below(&mut rng, Shape::default());
        let g = random_element(&mut rng, Shape::default());
        // The depth is defined for slopes q <= 1; swap the roles otherwise.
        let (y, z, q) = if g.initial_slope().exp() <= 0 {
            (y.clone(), y.conjugate_by(&g).unwrap(), g.initial_slope())
        } else {
            (y.conjugate_by(&g).unwrap(), y.clone(), g.initial_slope().inv())
        };
        let (_, depth) = stair_depth(&y, &z, q).map_err(|e| e.to_string())?;
        let exp = explicit_conjugator(&y, &z, q, depth).map_err(|e| e.to_string())?;
        let it = iterative_conjugator(&y, &z, q, depth).map_err(|e| e.to_string())?;
        ensure!(
            it.chain().restrict(y.lo(), exp.src_hi()) == exp,
            "instance {done}: formula and construction differ for y = {y}, z = {z}"
        );
        done += 1;
    }
    Ok("100/100 structurally equal on [η, z⁻ʳ(α)]".into())
}

fn conjugators_of_powers() -> Outcome {
    let mut rng = rng(5);
    for n in [2i64, 3, 5] {
        let (mut pos, mut neg) = (0, 0);
        while pos < 100 || neg < 100 {
            let y = random_element(&mut rng, SMALL);
            let g = random_element(&mut rng, SMALL);
            let z = if pos < 100 { y.conjugate_by(&g).unwrap() } else { random_element(&mut rng, SMALL) };
            let (one, pw) = (verify(&y, &z, &g), verify(&y.power(n), &z.power(n), &g));
            ensure!(one == pw, "n = {n}: verify {one} but verify on powers {pw}");
            if one && pos < 100 {
                pos += 1;
            } else if !one && pos >= 100 {
                neg += 1;
            }
        }
    }
    Ok("n ∈ {2,3,5}: 100 conjugate and 100 non-conjugate instances each".into())
}

fn roots() -> Outcome {
    let x4 = x0().power(4);
    let got = all_roots(&x4).map_err(|e| e.to_string())?;
    let want = vec![(1, x4.clone()), (2, x0().power(2)), (4, x0())];
    ensure!(got == want, "all_roots(x0^4) = {got:?}");
    for (n, h) in &got {
        ensure!(h.power(*n as i64) == x4, "root of index {n} does not verify");
    }
    ensure!(nth_root(&x0(), 2).unwrap().is_none(), "x0 has a square root");
    Ok("all_roots(x₀⁴) = {x₀⁴, x₀², x₀}; nth_root(x₀, 2) = none".into())
}

fn centralizers() -> Outcome {
    let c0 = centralizer(&x0()).unwrap();
    ensure!((c0.m(), c0.n()) == (0, 1), "C(x0) has (m, n) = ({}, {})", c0.m(), c0.n());
    ensure!(c0.factors()[0].kind == FactorKind::Cyclic(x0()), "C(x0) generator is {:?}", c0.factors()[0].kind);
    let c1 = centralizer(&x1()).unwrap();
    ensure!((c1.m(), c1.n()) == (1, 1), "C(x1) has (m, n) = ({}, {})", c1.m(), c1.n());
    let mut rng = rng(7);
    let (mut yes, mut no) = (0, 0);
    while yes < 200 || no < 200 {
        let x = random_element(&mut rng, SMALL);
        let d = centralizer(&x).unwrap();
        if yes < 200 {
            let g = sample_member(&mut rng, &d);
            ensure!(g.commutes_with(&x).unwrap(), "sampled member does not commute");
            ensure!(membership(&d, &g), "commuting probe rejected: x = {x}, g = {g}");
            yes += 1;
        } else {
            let g = random_element(&mut rng, SMALL);
            if g.commutes_with(&x).unwrap() {
                continue;
            }
            ensure!(!membership(&d, &g), "non-commuting probe accepted: x = {x}, g = {g}");
            no += 1;
        }
    }
    Ok("C(x₀): (0,1) generated by x₀; C(x₁): (1,1); 200 + 200 membership probes".into())
}

fn intersections() -> Outcome {
    let d = intersect_centralizers(&[x0(), x1()]).unwrap();
    ensure!(d.factors().iter().all(|f| f.kind == FactorKind::Trivial), "C(x0) ∩ C(x1) = {d:?}");
    let mut rng = rng(8);
    let mut kinds = [0usize; 3];
    for i in 0..50 {
        let k = rng.gen_range(1..=3);
        let d = intersect_centralizers(&random_tuple(&mut rng, k)).unwrap();
        for f in d.factors() {
            kinds[match f.kind {
                FactorKind::Trivial => 0,
                FactorKind::Cyclic(_) => 1,
                FactorKind::Full => 2,
            }] += 1;
        }
        let (w1, w2) = reduce_to_two(&d).unwrap();
        let back = intersect_centralizers(&[w1, w2]).unwrap();
        ensure!(back == d, "descriptor {i} does not round-trip");
    }
    Ok(format!(
        "trivial intersection; 50 descriptors round-trip ({} trivial, {} cyclic, {} full cells)",
        kinds[0], kinds[1], kinds[2]
    ))
}

fn simultaneous() -> Outcome {
    let mut rng = rng(9);
    let t = Instant::now();
    for i in 0..300 {
        let k = rng.gen_range(2..=3);
        let xs = random_tuple(&mut rng, k);
        let g = random_element(&mut rng, Shape::default());
        let ys: Vec<PLMap> = xs.iter().map(|x| x.conjugate_by(&g).unwrap()).collect();
        let w = simultaneous_conjugate(&xs, &ys).map_err(|e| format!("instance {i}: {e}"))?;
        let w = w.ok_or_else(|| format!("planted instance {i} refused"))?;
        ensure!(xs.iter().zip(&ys).all(|(x, y)| verify(x, y, &w)), "instance {i}: witness fails");
    }
    let mut neg = 0;
    while neg < 300 {
        let k = rng.gen_range(2..=3);
        let xs = random_tuple(&mut rng, k);
        let g = random_element(&mut rng, Shape::default());
        let mut ys: Vec<PLMap> = xs.iter().map(|x| x.conjugate_by(&g).unwrap()).collect();
        let j = rng.gen_range(0..k);
        let w = random_element(&mut rng, SMALL);
        if conjugate(&xs[j], &w).unwrap().is_some() {
            continue;
        }
        ys[j] = w;
        let res = simultaneous_conjugate(&xs, &ys).map_err(|e| e.to_string())?;
        ensure!(res.is_none(), "perturbed instance {neg} accepted");
        neg += 1;
    }
    let el = t.elapsed();
    ensure!(el < Duration::from_secs(300), "took {}", secs(el));
    Ok(format!("300 planted solved, 300 perturbed refused in {}", secs(el)))
}

fn power_equations() -> Outcome {
    let mut rng = rng(10);
    let mut widest = 0;
    for i in 0..100 {
        let k = rng.gen_range(-6..=6);
        let eq = planted_equation(&mut rng, k);
        let (l0, k0) = bound_k(&eq).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(l0 <= k && k <= k0, "instance {i}: k* = {k} outside [{l0}, {k0}]");
        let found: Vec<i64> = (l0..=k0).filter(|&j| eq.holds(j)).collect();
        ensure!(found == vec![k], "instance {i}: scan found {found:?}, planted {k}");
        widest = widest.max(k0 - l0);
    }
    Ok(format!("100/100 bracketed and recovered exactly (widest bracket {widest})"))
}

fn orbits() -> Outcome {
    let cases = [("1/16", Some(3)), ("3/4", Some(-1)), ("1/3", None)];
    for (mu, want) in cases {
        let got = orbit_search(&x0(), &r("1/2"), &r(mu)).map_err(|e| e.to_string())?;
        ensure!(got == want, "(x0, 1/2, {mu}) gave {got:?}");
    }
    Ok("(x₀,1/2,1/16) → 3; (x₀,1/2,3/4) → −1; (x₀,1/2,1/3) → none".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("reachability example", reachability),
        ("conjugacy round trip", conjugacy_round_trip),
        ("stair uniqueness", stair_uniqueness),
        ("explicit conjugator formula", explicit_formula),
        ("conjugators of powers", conjugators_of_powers),
        ("roots", roots),
        ("centralizers", centralizers),
        ("intersection and reduction", intersections),
        ("simultaneous conjugacy", simultaneous),
        ("power-equation kernel", power_equations),
        ("orbit decisions", orbits),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
