//! One test per acceptance criterion; each prints a single pass line once
//! its assertions hold, so `cargo test --test acceptance -- --nocapture`
//! reads as a checklist.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superweyl::borels::{
    enumerate_borels, transport_weight, TransportMode,
};
use superweyl::characters::{g0_verma_character, verma_character};
use superweyl::gamma::{enumerate_gammas, odd_product_expansion, star};
use superweyl::mates::{
    check_nonsigned, find_perfect_mate, CentralCharacter,
};
use superweyl::rootdata::{build_root_system, AlgebraId, RootSystem, Weight};
use superweyl::scalar::Scalar;
use superweyl::verma::{
    is_dot_extremal, is_g0_verma_simple, is_strongly_typical, is_typical,
    is_verma_simple, leq, verma_decomposes, Extremal,
};
use superweyl::weyl::{weyl_group, WeylGroup};

const CATALOG: [&str; 11] = [
    "B(1,1)",
    "B(2,2)",
    "D(2,2)",
    "D(2,1,a)",
    "D(2,1,a=3/2)",
    "F(4)",
    "G(3)",
    "gl(1,1)",
    "gl(2,1)",
    "sl(2,1)",
    "osp(2,2)",
];

const TYPE_II: [&str; 7] = [
    "B(1,1)",
    "B(2,2)",
    "D(2,2)",
    "D(2,1,a)",
    "D(2,1,a=3/2)",
    "F(4)",
    "G(3)",
];

fn rs(name: &str) -> RootSystem {
    build_root_system(AlgebraId::parse(name).unwrap()).unwrap()
}

fn wt(r: &RootSystem, s: &str) -> Weight {
    Weight::parse(&r.id, s).unwrap()
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.random_range(-9i64..=9);
    let den = *[1i64, 2, 3, 5, 7]
        .get(rng.random_range(0usize..5))
        .unwrap();
    Scalar::from_frac(num, den)
}

fn rand_weight(r: &RootSystem, rng: &mut ChaCha8Rng) -> Weight {
    let delta = (0..r.id.n).map(|_| rand_rational(rng)).collect();
    let eps = (0..r.id.m).map(|_| rand_rational(rng)).collect();
    Weight::new(r.id.clone(), delta, eps)
}

fn rand_integral_weight(r: &RootSystem, rng: &mut ChaCha8Rng) -> Weight {
    let delta = (0..r.id.n)
        .map(|_| Scalar::from_int(rng.random_range(-5i64..=5)))
        .collect();
    let eps = (0..r.id.m)
        .map(|_| Scalar::from_int(rng.random_range(-5i64..=5)))
        .collect();
    Weight::new(r.id.clone(), delta, eps)
}

#[test]
fn criterion_01_catalog_fidelity() {
    let started = Instant::now();
    for name in CATALOG {
        let r = rs(name);
        let reduced: HashSet<&Weight> = r.reduced_odd.iter().collect();
        for beta in &r.odd_pos {
            assert_eq!(
                r.is_isotropic(beta).unwrap(),
                reduced.contains(beta),
                "{}: isotropy of {} disagrees with the reduced odd system",
                name,
                beta.root_string()
            );
        }
        for alpha in &r.simple {
            let two_pairing = &Scalar::from_int(2)
                * &r.bilinear(alpha, &r.rho).unwrap();
            assert_eq!(
                two_pairing,
                r.bilinear(alpha, alpha).unwrap(),
                "{}: 2(a,rho)=(a,a) fails at {}",
                name,
                alpha.root_string()
            );
        }
        if let Some(p) = r.catalog_p() {
            let mut delta_sum = Weight::zero(&r.id);
            for i in 0..r.id.n {
                delta_sum = delta_sum.with_coord(i, Scalar::one());
            }
            assert_eq!(r.rho1, delta_sum.scale(&p), "{}: rho1 shape", name);
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "catalog took {:?}", elapsed);
    println!("criterion 1 (catalog fidelity): pass");
}

#[test]
fn criterion_02_weyl_orders() {
    let started = Instant::now();
    let expected = [4usize, 64, 32, 8, 8, 96, 24, 1, 2, 2, 2];
    for (name, want) in CATALOG.iter().zip(expected) {
        let r = rs(name);
        let group = weyl_group(&r);
        assert_eq!(group.len(), want, "{}: Weyl order", name);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "orders took {:?}", elapsed);
    println!("criterion 2 (Weyl group orders): pass");
}

#[test]
fn criterion_03_star_identity_everywhere() {
    let started = Instant::now();
    for name in ["B(1,1)", "D(2,2)", "D(2,1,a)", "F(4)"] {
        let r = rs(name);
        let group = weyl_group(&r);
        let gammas = enumerate_gammas(&r).unwrap();
        for w in group.iter() {
            for gamma in &gammas {
                let starred = star(&r, w, gamma);
                let expected =
                    &w.apply(&(gamma.weight_sum() - &r.rho1)) + &r.rho1;
                assert_eq!(
                    *starred.weight_sum(),
                    expected,
                    "{}: |w*gamma| = w(|gamma|-rho1)+rho1 fails",
                    name
                );
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "star scan took {:?}", elapsed);
    println!("criterion 3 (star action identity): pass");
}

#[test]
fn criterion_04_dot_star_compatibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in TYPE_II {
        let r = rs(name);
        let group = weyl_group(&r);
        let gammas = enumerate_gammas(&r).unwrap();
        // |w*gamma| and w|gamma| depend only on (w, gamma); hoist them
        let per_w: Vec<(Vec<Weight>, Vec<Weight>)> = group
            .iter()
            .map(|w| {
                let starred: Vec<Weight> = gammas
                    .iter()
                    .map(|g| star(&r, w, g).weight_sum().clone())
                    .collect();
                let moved: Vec<Weight> = gammas
                    .iter()
                    .map(|g| w.apply(g.weight_sum()))
                    .collect();
                (starred, moved)
            })
            .collect();
        for _ in 0..100 {
            let lam = rand_weight(&r, &mut rng);
            let shifted0 = &lam + &r.rho0;
            for (w, (starred, moved)) in group.iter().zip(&per_w) {
                // w.lam - |w*g| + rho0 = w(lam - |g| + rho0), regrouped as
                // (w.lam + rho0) + w|g| = w(lam + rho0) + |w*g|
                let dotted0 = &w.dot(&lam, &r.rho) + &r.rho0;
                let applied0 = w.apply(&shifted0);
                for (sg, wg) in starred.iter().zip(moved) {
                    let dim = dotted0.dim();
                    let ok = (0..dim).all(|k| {
                        dotted0.coord(k) + wg.coord(k)
                            == applied0.coord(k) + sg.coord(k)
                    });
                    assert!(ok, "{}: Eq (w*) fails at {}", name, lam);
                }
            }
        }
    }
    println!("criterion 4 (dot/star compatibility): pass");
}

fn random_strongly_typical(
    r: &RootSystem,
    rng: &mut ChaCha8Rng,
) -> Weight {
    loop {
        let lam = rand_weight(r, rng);
        if is_strongly_typical(r, &lam) {
            return lam;
        }
    }
}

fn random_non_generic_shifted(
    r: &RootSystem,
    rng: &mut ChaCha8Rng,
) -> Option<Weight> {
    let id = &r.id;
    match name_of(r) {
        "D" => {
            // half-integer positive k's with trailing zeros, integer l's
            let d = rng.random_range(1..=id.n);
            let mut delta = Vec::new();
            for i in 0..id.n - d {
                delta.push(Scalar::from_frac(
                    2 * (id.n - i) as i64 + 2 * rng.random_range(0i64..3) + 1,
                    2,
                ));
            }
            delta.resize(id.n, Scalar::zero());
            let mut eps = Vec::new();
            for j in 0..id.m - 1 {
                eps.push(Scalar::from_int(
                    (id.m - j) as i64 + rng.random_range(0i64..3),
                ));
            }
            let bound = eps
                .last()
                .map(|s| s.as_rational().unwrap().to_integer())
                .unwrap_or_else(|| BigInt::from(1));
            let mut last = rng.random_range(1i64..=bound.try_into().unwrap_or(1));
            if rng.random_range(0..2) == 1 {
                last = -last;
            }
            eps.push(Scalar::from_int(last));
            Some(Weight::new(id.clone(), delta, eps))
        }
        "D21A" => {
            let l1 = rng.random_range(0i64..4);
            let l2 = if l1 == 0 {
                rng.random_range(1i64..4)
            } else {
                rng.random_range(0i64..4)
            };
            Some(Weight::new(
                id.clone(),
                vec![Scalar::zero()],
                vec![Scalar::from_int(l1), Scalar::from_int(l2)],
            ))
        }
        "F4" => {
            let l1 = rng.random_range(1i64..5);
            let l2 = rng.random_range(0i64..=l1);
            let l3 = rng.random_range(0i64..=l2);
            Some(Weight::new(
                id.clone(),
                vec![Scalar::zero()],
                vec![
                    Scalar::from_int(l1),
                    Scalar::from_int(l2),
                    Scalar::from_int(l3),
                ],
            ))
        }
        _ => None,
    }
}

fn name_of(r: &RootSystem) -> &'static str {
    use superweyl::rootdata::Family;
    match r.id.family {
        Family::OspD => "D",
        Family::D21A => "D21A",
        Family::F4 => "F4",
        _ => "",
    }
}

#[test]
fn criterion_05_perfect_mates() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in TYPE_II {
        let r = rs(name);
        let group = weyl_group(&r);
        let mut verified = 0;
        while verified < 100 {
            let lam = if verified % 3 == 2 {
                match random_non_generic_shifted(&r, &mut rng) {
                    Some(shifted) => &shifted - &r.rho,
                    None => random_strongly_typical(&r, &mut rng),
                }
            } else {
                random_strongly_typical(&r, &mut rng)
            };
            if !is_strongly_typical(&r, &lam) {
                continue;
            }
            let chi = CentralCharacter::new(lam);
            let cert = find_perfect_mate(&r, &group, &chi)
                .unwrap_or_else(|e| panic!("{}: {}", name, e));
            assert!(cert.is_perfect, "{}: imperfect certificate", name);
            verified += 1;
        }
    }

    // the worked shifted weights come out exactly
    let d21 = rs("D(2,1,a)");
    let group = weyl_group(&d21);
    let chi =
        CentralCharacter::new(&wt(&d21, "0;1,1") - &d21.rho);
    let cert = find_perfect_mate(&d21, &group, &chi).unwrap();
    assert_eq!(&cert.mate_weight + &d21.rho0, wt(&d21, "0;3,1"));

    let d22 = rs("D(2,2)");
    let group = weyl_group(&d22);
    let chi = CentralCharacter::new(&wt(&d22, "3,0;2,1") - &d22.rho);
    let cert = find_perfect_mate(&d22, &group, &chi).unwrap();
    assert_eq!(&cert.mate_weight + &d22.rho0, wt(&d22, "5,0;3,2"));

    let f4 = rs("F(4)");
    let group = weyl_group(&f4);
    let chi = CentralCharacter::new(&wt(&f4, "0;2,2,1") - &f4.rho);
    let cert = find_perfect_mate(&f4, &group, &chi).unwrap();
    assert_eq!(&cert.mate_weight + &f4.rho0, wt(&f4, "0;3,3,2"));

    println!("criterion 5 (perfect mates at desk scale): pass");
}

#[test]
fn criterion_06_nonsigned_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for round in 0..1000 {
        let s = rng.random_range(1usize..=4);
        let d_num = rng.random_range(1i64..=8);
        let d_den = rng.random_range(1i64..=3);
        let d = Scalar::from_frac(d_num, d_den);
        let mut a: Vec<Scalar> = (0..s)
            .map(|_| {
                Scalar::from_frac(
                    rng.random_range(1i64..=9),
                    rng.random_range(1i64..=3),
                )
            })
            .collect();
        if s > 1 && rng.random_range(0..3) == 0 {
            a[s - 1] = a[0].clone();
        }
        let r: Vec<Scalar> = if round % 2 == 0 {
            vec![Scalar::zero(); s]
        } else {
            (0..s)
                .map(|_| {
                    let t = rng.random_range(0i64..=2 * d_num);
                    Scalar::from_frac(t, d_den)
                })
                .collect()
        };
        let outcome = check_nonsigned(&d, &a, &r);
        let exists = outcome.unwrap_or_else(|e| {
            panic!("signed or shifted witness slipped through: {}", e)
        });
        if r.iter().all(Scalar::is_zero) {
            assert!(exists, "the identity permutation always matches r=0");
        } else {
            assert!(!exists, "a match forces r=0");
        }
    }
    println!("criterion 6 (sign-elimination lemma): pass");
}

fn descend_to_dot_minimal(
    r: &RootSystem,
    group: &WeylGroup,
    lam: &Weight,
) -> Weight {
    let mut current = lam.clone();
    'outer: loop {
        for w in group.iter() {
            let moved = w.dot(&current, &r.rho);
            if moved != current && leq(r, &moved, &current) {
                current = moved;
                continue 'outer;
            }
        }
        return current;
    }
}

#[test]
fn criterion_07_minimal_typical_simple() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in CATALOG {
        let r = rs(name);
        let group = weyl_group(&r);
        let mut checked = 0;
        while checked < 200 {
            let lam = rand_integral_weight(&r, &mut rng);
            if !is_typical(&r, &lam) {
                continue;
            }
            checked += 1;
            let minimal = descend_to_dot_minimal(&r, &group, &lam);
            assert!(
                is_dot_extremal(&r, &group, &minimal, Extremal::Min),
                "{}: descent did not reach a minimal member",
                name
            );
            assert!(is_typical(&r, &minimal));
            assert!(
                is_verma_simple(&r, &minimal),
                "{}: dot-minimal typical {} is not simple",
                name,
                minimal
            );
        }
    }
    println!("criterion 7 (dot-minimal typical weights are simple): pass");
}

#[test]
fn criterion_08_decomposition_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for name in CATALOG {
        let r = rs(name);
        let gammas = enumerate_gammas(&r).unwrap();
        let mut checked = 0;
        while checked < 200 {
            let lam = rand_weight(&r, &mut rng);
            if !is_strongly_typical(&r, &lam) || !is_verma_simple(&r, &lam) {
                continue;
            }
            checked += 1;
            let whole = verma_decomposes(&r, &lam).unwrap();
            let factorwise = gammas
                .iter()
                .all(|g| is_g0_verma_simple(&r, &(&lam - g.weight_sum())));
            assert_eq!(
                whole, factorwise,
                "{}: (ii) and (iii) disagree at {}",
                name, lam
            );
        }
    }
    println!("criterion 8 (decomposition equivalences): pass");
}

#[test]
fn criterion_09_character_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let depth = 6u32;
    for name in ["B(1,1)", "gl(2,1)"] {
        let r = rs(name);
        let gammas = enumerate_gammas(&r).unwrap();
        for _ in 0..3 {
            let lam = rand_weight(&r, &mut rng);
            let whole = verma_character(&r, &lam, depth);
            let mut sum: HashMap<Vec<u32>, i64> = HashMap::new();
            for gamma in &gammas {
                let piece =
                    g0_verma_character(&r, &(&lam - gamma.weight_sum()), depth);
                let offset = simple_coords(&r, gamma.weight_sum());
                for (nu, c) in piece.terms() {
                    let total: Vec<u32> =
                        nu.iter().zip(&offset).map(|(x, y)| x + y).collect();
                    if total.iter().sum::<u32>() <= depth {
                        *sum.entry(total).or_insert(0) += c;
                    }
                }
            }
            sum.retain(|_, c| *c != 0);
            let whole_map: HashMap<Vec<u32>, i64> =
                whole.terms().into_iter().collect();
            assert_eq!(whole_map, sum, "{}: filtration sum at {}", name, lam);
        }
    }

    for name in CATALOG {
        let r = rs(name);
        let expansion = odd_product_expansion(&r).unwrap();
        let mut counts: HashMap<Weight, BigInt> = HashMap::new();
        for gamma in enumerate_gammas(&r).unwrap() {
            *counts
                .entry(-gamma.weight_sum())
                .or_insert_with(|| BigInt::from(0)) += 1;
        }
        assert_eq!(expansion, counts, "{}: odd product identity", name);
    }
    println!("criterion 9 (character identities): pass");
}

fn simple_coords(r: &RootSystem, target: &Weight) -> Vec<u32> {
    // brute force the nonnegative decomposition in the simple basis
    let depth = 12u32;
    fn rec(
        r: &RootSystem,
        idx: usize,
        remaining: &Weight,
        acc: &mut Vec<u32>,
        depth_left: u32,
    ) -> Option<Vec<u32>> {
        if idx == r.simple.len() {
            return remaining.is_zero().then(|| acc.clone());
        }
        for k in 0..=depth_left {
            acc.push(k);
            let mut rest = remaining.clone();
            for _ in 0..k {
                rest = &rest - &r.simple[idx];
            }
            if let Some(hit) =
                rec(r, idx + 1, &rest, acc, depth_left - k)
            {
                return Some(hit);
            }
            acc.pop();
        }
        None
    }
    rec(r, 0, target, &mut Vec::new(), depth).expect("gamma sum in the cone")
}

#[test]
fn criterion_10_borels_and_transport() {
    for name in ["B(1,1)", "gl(1,1)", "D(2,1,a)"] {
        let r = rs(name);
        let enumerated = enumerate_borels(&r);
        let k = r.odd_pos.len();
        let mut closed = 0usize;
        for mask in 0u32..(1 << k) {
            let mut positive: Vec<Weight> = r.even_pos.clone();
            for (i, beta) in r.odd_pos.iter().enumerate() {
                positive.push(if mask & (1 << i) == 0 {
                    beta.clone()
                } else {
                    -beta
                });
            }
            let set: HashSet<&Weight> = positive.iter().collect();
            let ok = positive.iter().enumerate().all(|(a, x)| {
                positive.iter().skip(a).all(|y| {
                    let sum = x + y;
                    !r.is_root(&sum) || set.contains(&sum)
                })
            });
            if ok {
                closed += 1;
            }
        }
        assert_eq!(
            enumerated.len(),
            closed,
            "{}: Borel enumeration vs closed sign systems",
            name
        );

        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let lam = loop {
            let cand = rand_weight(&r, &mut rng);
            if is_strongly_typical(&r, &cand) {
                break cand;
            }
        };
        let shifted = &lam + &r.rho;
        for from in &enumerated {
            let seen_from = &shifted - from.rho_b();
            for to in &enumerated {
                let moved = transport_weight(
                    &r,
                    &seen_from,
                    from,
                    to,
                    TransportMode::Verma,
                )
                .unwrap();
                assert_eq!(
                    &moved + to.rho_b(),
                    shifted,
                    "{}: lambda + rho_b is not chain invariant",
                    name
                );
                let back = transport_weight(
                    &r,
                    &moved,
                    to,
                    from,
                    TransportMode::Verma,
                )
                .unwrap();
                assert_eq!(back, seen_from, "{}: transport round trip", name);
            }
        }
    }
    println!("criterion 10 (Borel oracle and transport): pass");
}
