//! The invariant suite behind the CLI verify verb: re-checks each module's
//! defining identities on one algebra by brute force, with deterministic
//! sample weights so runs are reproducible.

use num::{BigInt, ToPrimitive};

use crate::borels::{enumerate_borels, transport_weight, TransportMode};
use crate::characters::{g0_verma_character, typical_character, verma_character};
use crate::gamma::{enumerate_gammas, odd_product_expansion, star};
use crate::mates::{check_nonsigned, find_perfect_mate, CentralCharacter};
use crate::rootdata::{solve_naturals, Family, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::verma::{
    is_dot_extremal, is_g0_verma_simple, is_strongly_typical, is_typical,
    is_verma_simple, verma_decomposes, Extremal,
};
use crate::weyl::{weyl_group, WeylGroup};

pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> CheckResult {
    CheckResult { name, pass, detail }
}

/// Splitmix-style generator so the suite needs no external seed.
struct SampleRng(u64);

impl SampleRng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn rational(&mut self) -> Scalar {
        let num = (self.next() % 19) as i64 - 9;
        let den = [2i64, 3, 5, 7][(self.next() % 4) as usize];
        Scalar::from_frac(num, den)
    }

    fn weight(&mut self, rs: &RootSystem) -> Weight {
        let delta = (0..rs.id.n).map(|_| self.rational()).collect();
        let eps = (0..rs.id.m).map(|_| self.rational()).collect();
        Weight::new(rs.id.clone(), delta, eps)
    }
}

fn factorial(k: u64) -> u64 {
    (1..=k).product::<u64>().max(1)
}

fn expected_weyl_order(rs: &RootSystem) -> u64 {
    let n = rs.id.n as u64;
    let m = rs.id.m as u64;
    match rs.id.family {
        Family::Gl | Family::Sl => factorial(m) * factorial(n),
        Family::OspB => (1 << n) * factorial(n) * (1 << m) * factorial(m),
        Family::OspD => (1 << n) * factorial(n) * (1 << (m - 1)) * factorial(m),
        Family::OspC => (1 << n) * factorial(n),
        Family::D21A => 8,
        Family::F4 => 96,
        Family::G3 => 24,
    }
}

fn isotropy_classification(rs: &RootSystem) -> CheckResult {
    let mut bad = Vec::new();
    for beta in &rs.odd_pos {
        let isotropic = rs.is_isotropic(beta).unwrap();
        let doubled = beta + beta;
        if isotropic == rs.is_root(&doubled) {
            bad.push(beta.root_string());
        }
    }
    for alpha in &rs.even_pos {
        if rs.form(alpha, alpha).is_zero() {
            bad.push(alpha.root_string());
        }
    }
    check(
        "isotropy-classification",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} odd roots classified", rs.odd_pos.len())
        } else {
            format!("misclassified: {}", bad.join(", "))
        },
    )
}

fn simple_root_normalization(rs: &RootSystem) -> CheckResult {
    let mut bad = Vec::new();
    for alpha in &rs.simple {
        let two_pairing = &Scalar::from_int(2) * &rs.form(alpha, &rs.rho);
        if two_pairing != rs.form(alpha, alpha) {
            bad.push(alpha.root_string());
        }
    }
    check(
        "simple-root-normalization",
        bad.is_empty(),
        if bad.is_empty() {
            format!("2(a,rho)=(a,a) on {} simple roots", rs.simple.len())
        } else {
            format!("fails at {}", bad.join(", "))
        },
    )
}

fn rho_one_multiple(rs: &RootSystem) -> CheckResult {
    let mut half_sum = Weight::zero(&rs.id);
    for beta in &rs.odd_pos {
        half_sum = &half_sum + beta;
    }
    let half_sum = half_sum.half();
    if rs.rho1 != half_sum {
        return check(
            "rho-one-multiple",
            false,
            "rho1 is not the half-sum of the odd positive roots".into(),
        );
    }
    match rs.catalog_p() {
        Some(p) => {
            let mut delta_sum = Weight::zero(&rs.id);
            for i in 0..rs.id.n {
                delta_sum = delta_sum.with_coord(i, Scalar::one());
            }
            check(
                "rho-one-multiple",
                rs.rho1 == delta_sum.scale(&p),
                format!("rho1 = {} * sum of deltas", p),
            )
        }
        None => check(
            "rho-one-multiple",
            true,
            "half-sum of the odd positive roots".into(),
        ),
    }
}

fn weyl_order(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let expected = expected_weyl_order(rs);
    check(
        "weyl-order",
        group.len() as u64 == expected,
        format!("generated {}, formula {}", group.len(), expected),
    )
}

fn form_invariance(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    for w in group.iter() {
        for x in &rs.simple {
            for y in &rs.simple {
                if rs.form(&w.apply(x), &w.apply(y)) != rs.form(x, y) {
                    return check(
                        "form-invariance",
                        false,
                        format!(
                            "({},{}) moves under {}",
                            x.root_string(),
                            y.root_string(),
                            w.describe(rs).join(", ")
                        ),
                    );
                }
            }
        }
    }
    check(
        "form-invariance",
        true,
        format!("checked {} elements", group.len()),
    )
}

fn dot_action_composes(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let mut rng = SampleRng(11);
    let samples: Vec<Weight> = (0..3).map(|_| rng.weight(rs)).collect();
    for v in group.iter() {
        for w in group.iter() {
            let vw = v.compose(w);
            for lam in &samples {
                if vw.dot(lam, &rs.rho) != v.dot(&w.dot(lam, &rs.rho), &rs.rho)
                {
                    return check(
                        "dot-action",
                        false,
                        "dot action fails to compose".into(),
                    );
                }
            }
        }
    }
    check(
        "dot-action",
        true,
        format!("{} pairs on 3 sample weights", group.len() * group.len()),
    )
}

fn star_identity(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let gammas = match enumerate_gammas(rs) {
        Ok(g) => g,
        Err(e) => return check("star-identity", false, e.to_string()),
    };
    for gamma in &gammas {
        let shifted = &rs.rho1 - gamma.weight_sum();
        for w in group.iter() {
            let starred = star(rs, w, gamma);
            if w.apply(&shifted) != &rs.rho1 - starred.weight_sum() {
                return check(
                    "star-identity",
                    false,
                    format!("fails on mask {}", gamma.mask()),
                );
            }
        }
    }
    check(
        "star-identity",
        true,
        format!("{} (w, gamma) pairs", group.len() * gammas.len()),
    )
}

fn star_dot_compatibility(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let gammas = match enumerate_gammas(rs) {
        Ok(g) => g,
        Err(e) => return check("star-dot-compatibility", false, e.to_string()),
    };
    let mut rng = SampleRng(23);
    for _ in 0..3 {
        let lam = rng.weight(rs);
        for w in group.iter() {
            let dotted = w.dot(&lam, &rs.rho);
            for gamma in &gammas {
                let starred = star(rs, w, gamma);
                let lhs = &(&dotted - starred.weight_sum()) + &rs.rho0;
                let rhs =
                    w.apply(&(&(&lam - gamma.weight_sum()) + &rs.rho0));
                if lhs != rhs {
                    return check(
                        "star-dot-compatibility",
                        false,
                        format!(
                            "w.lambda - |w*gamma| + rho0 drifts at mask {}",
                            gamma.mask()
                        ),
                    );
                }
            }
        }
    }
    check(
        "star-dot-compatibility",
        true,
        format!("3 weights x {} pairs", group.len() * gammas.len()),
    )
}

fn odd_product_identity(rs: &RootSystem) -> CheckResult {
    let expansion = match odd_product_expansion(rs) {
        Ok(x) => x,
        Err(e) => return check("odd-product-expansion", false, e.to_string()),
    };
    let gammas = match enumerate_gammas(rs) {
        Ok(g) => g,
        Err(e) => return check("odd-product-expansion", false, e.to_string()),
    };
    let mut counts: std::collections::HashMap<Weight, BigInt> =
        std::collections::HashMap::new();
    for gamma in &gammas {
        *counts
            .entry(-gamma.weight_sum())
            .or_insert_with(|| BigInt::from(0)) += 1;
    }
    let pass = expansion == counts;
    check(
        "odd-product-expansion",
        pass,
        format!("{} distinct exponents", counts.len()),
    )
}

fn integral_samples(rs: &RootSystem) -> Vec<Weight> {
    let dim = rs.id.n + rs.id.m;
    let values = [-2i64, 1, 3];
    let mut out = Vec::new();
    for idx in 0..values.len().pow(dim as u32) {
        let mut rem = idx;
        let coords: Vec<Scalar> = (0..dim)
            .map(|_| {
                let v = values[rem % values.len()];
                rem /= values.len();
                Scalar::from_int(v)
            })
            .collect();
        out.push(Weight::new(
            rs.id.clone(),
            coords[..rs.id.n].to_vec(),
            coords[rs.id.n..].to_vec(),
        ));
    }
    out.push(Weight::zero(&rs.id));
    out.push(-&rs.rho);
    out
}

fn extremal_simplicity(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let mut minimal = 0usize;
    for lam in integral_samples(rs) {
        if !is_typical(rs, &lam)
            || !is_dot_extremal(rs, group, &lam, Extremal::Min)
        {
            continue;
        }
        minimal += 1;
        if !is_verma_simple(rs, &lam) {
            return check(
                "shapovalov-extremal-simplicity",
                false,
                format!("dot-minimal typical {} is not simple", lam),
            );
        }
    }
    check(
        "shapovalov-extremal-simplicity",
        true,
        format!("{} dot-minimal typical samples", minimal),
    )
}

fn t_strong_typicality(rs: &RootSystem) -> CheckResult {
    let mut rng = SampleRng(37);
    let mut samples: Vec<Weight> = (0..8).map(|_| rng.weight(rs)).collect();
    samples.push(Weight::zero(&rs.id));
    samples.push(-&rs.rho);
    for lam in &samples {
        let t = match crate::verma::eval_t(rs, lam, &rs.odd_pos) {
            Ok(t) => t,
            Err(e) => {
                return check("t-strong-typicality", false, e.to_string())
            }
        };
        if !t.is_zero() != is_strongly_typical(rs, lam) {
            return check(
                "t-strong-typicality",
                false,
                format!("t and the pairing test disagree at {}", lam),
            );
        }
    }
    check(
        "t-strong-typicality",
        true,
        format!("{} samples", samples.len()),
    )
}

fn decomposition_equivalence(rs: &RootSystem) -> CheckResult {
    let gammas = match enumerate_gammas(rs) {
        Ok(g) => g,
        Err(e) => {
            return check("decomposition-equivalence", false, e.to_string())
        }
    };
    let mut rng = SampleRng(41);
    let mut used = 0;
    let mut tries = 0;
    while used < 4 && tries < 200 {
        tries += 1;
        let lam = rng.weight(rs);
        if !is_strongly_typical(rs, &lam) || !is_verma_simple(rs, &lam) {
            continue;
        }
        used += 1;
        let whole = match verma_decomposes(rs, &lam) {
            Ok(b) => b,
            Err(e) => {
                return check("decomposition-equivalence", false, e.to_string())
            }
        };
        let factorwise = gammas
            .iter()
            .all(|g| is_g0_verma_simple(rs, &(&lam - g.weight_sum())));
        if whole != factorwise {
            return check(
                "decomposition-equivalence",
                false,
                format!("(ii) and (iii) disagree at {}", lam),
            );
        }
    }
    check(
        "decomposition-equivalence",
        used > 0,
        format!("{} strongly typical simple samples", used),
    )
}

fn borel_oracle(rs: &RootSystem) -> CheckResult {
    let enumerated = enumerate_borels(rs);
    let k = rs.odd_pos.len();
    if k > 16 {
        return check(
            "borel-enumeration",
            false,
            format!("{} odd roots exceed the oracle range", k),
        );
    }
    let mut closed = 0usize;
    for mask in 0u32..(1 << k) {
        let signs: Vec<i8> = (0..k)
            .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
            .collect();
        let mut positive: Vec<Weight> = rs.even_pos.clone();
        for (i, beta) in rs.odd_pos.iter().enumerate() {
            positive.push(if signs[i] == 1 {
                beta.clone()
            } else {
                -beta
            });
        }
        let set: std::collections::HashSet<&Weight> =
            positive.iter().collect();
        let ok = positive.iter().enumerate().all(|(a, x)| {
            positive.iter().skip(a).all(|y| {
                let sum = x + y;
                !rs.is_root(&sum) || set.contains(&sum)
            })
        });
        if ok {
            closed += 1;
        }
    }
    check(
        "borel-enumeration",
        enumerated.len() == closed,
        format!("reflections reach {}, oracle finds {}", enumerated.len(), closed),
    )
}

fn borel_transport(rs: &RootSystem) -> CheckResult {
    let mut rng = SampleRng(53);
    let lam = loop {
        let cand = rng.weight(rs);
        if is_strongly_typical(rs, &cand) {
            break cand;
        }
    };
    let borels = enumerate_borels(rs);
    let shifted = &lam + &rs.rho;
    for from in &borels {
        // the same module seen from each Borel: lambda + rho_b is fixed
        let seen_from = &shifted - from.rho_b();
        for to in &borels {
            let moved = match transport_weight(
                rs,
                &seen_from,
                from,
                to,
                TransportMode::Verma,
            ) {
                Ok(m) => m,
                Err(e) => {
                    return check("borel-transport", false, e.to_string())
                }
            };
            if &moved + to.rho_b() != shifted {
                return check(
                    "borel-transport",
                    false,
                    "lambda + rho_b drifts across a chain".into(),
                );
            }
            let back = match transport_weight(
                rs,
                &moved,
                to,
                from,
                TransportMode::Verma,
            ) {
                Ok(m) => m,
                Err(e) => return check("borel-transport", false, e.to_string()),
            };
            if back != seen_from {
                return check(
                    "borel-transport",
                    false,
                    "round trip does not return".into(),
                );
            }
        }
    }
    check(
        "borel-transport",
        true,
        format!("{} Borel pairs", borels.len() * borels.len()),
    )
}

fn character_filtration(rs: &RootSystem) -> CheckResult {
    let gammas = match enumerate_gammas(rs) {
        Ok(g) => g,
        Err(e) => return check("verma-character-filtration", false, e.to_string()),
    };
    let depth = 3u32;
    let mut rng = SampleRng(61);
    let lam = rng.weight(rs);
    let whole = verma_character(rs, &lam, depth);
    let mut pieces: std::collections::HashMap<Vec<u32>, i64> =
        std::collections::HashMap::new();
    for gamma in &gammas {
        let offset = match solve_naturals(&rs.simple, gamma.weight_sum()) {
            Some(sol) => sol,
            None => {
                return check(
                    "verma-character-filtration",
                    false,
                    "an odd subset sum leaves the positive cone".into(),
                )
            }
        };
        let offset: Vec<u32> = offset
            .iter()
            .map(|b| b.to_u32().expect("small offset"))
            .collect();
        if offset.iter().sum::<u32>() > depth {
            continue;
        }
        let piece = g0_verma_character(rs, &(&lam - gamma.weight_sum()), depth);
        for (nu, c) in piece.terms() {
            let total: Vec<u32> =
                nu.iter().zip(&offset).map(|(a, b)| a + b).collect();
            if total.iter().sum::<u32>() <= depth {
                *pieces.entry(total).or_insert(0) += c;
            }
        }
    }
    pieces.retain(|_, c| *c != 0);
    let whole_terms: std::collections::HashMap<Vec<u32>, i64> =
        whole.terms().into_iter().collect();
    check(
        "verma-character-filtration",
        whole_terms == pieces,
        format!("depth {} on {} odd subsets", depth, gammas.len()),
    )
}

fn typical_character_normalization(
    rs: &RootSystem,
    group: &WeylGroup,
) -> CheckResult {
    let mut rng = SampleRng(71);
    let lam = loop {
        let cand = rng.weight(rs);
        let shifted = &cand + &rs.rho;
        let stabilizer = group
            .iter()
            .filter(|w| w.apply(&shifted) == shifted)
            .count();
        if is_typical(rs, &cand) && stabilizer == 1 {
            break cand;
        }
    };
    let ch = match typical_character(rs, group, &lam, 3) {
        Ok(c) => c,
        Err(e) => {
            return check("typical-character-normalization", false, e.to_string())
        }
    };
    let zero = vec![0u32; rs.simple.len()];
    check(
        "typical-character-normalization",
        ch.coefficient(&zero) == 1,
        format!("leading coefficient {}", ch.coefficient(&zero)),
    )
}

fn perfect_mates(rs: &RootSystem, group: &WeylGroup) -> CheckResult {
    let mut rng = SampleRng(83);
    let mut samples = Vec::new();
    let mut tries = 0;
    while samples.len() < 4 && tries < 400 {
        tries += 1;
        let lam = rng.weight(rs);
        if is_strongly_typical(rs, &lam) {
            samples.push(lam);
        }
    }
    match rs.id.family {
        Family::OspD => {
            let mut shifted = Weight::zero(&rs.id);
            for i in 0..rs.id.n - 1 {
                shifted =
                    shifted.with_coord(i, Scalar::from_int(3 + (rs.id.n - i) as i64));
            }
            for j in 0..rs.id.m {
                shifted = shifted.with_coord(
                    rs.id.n + j,
                    Scalar::from_int((rs.id.m - j) as i64),
                );
            }
            samples.push(&shifted - &rs.rho);
        }
        Family::D21A => {
            samples.push(&Weight::parse(&rs.id, "0;1,1").unwrap() - &rs.rho);
        }
        Family::F4 => {
            samples.push(&Weight::parse(&rs.id, "0;2,2,1").unwrap() - &rs.rho);
            samples.push(&Weight::parse(&rs.id, "0;3,2,1").unwrap() - &rs.rho);
        }
        _ => {}
    }
    let mut verified = 0;
    for lam in &samples {
        if !is_strongly_typical(rs, lam) {
            continue;
        }
        let chi = CentralCharacter::new(lam.clone());
        match find_perfect_mate(rs, group, &chi) {
            Ok(cert) if cert.is_perfect => verified += 1,
            Ok(_) => {
                return check(
                    "perfect-mates",
                    false,
                    format!("certificate at {} is imperfect", lam),
                )
            }
            Err(e) => return check("perfect-mates", false, e.to_string()),
        }
    }
    check(
        "perfect-mates",
        verified > 0,
        format!("{} strongly typical characters", verified),
    )
}

fn nonsigned_lemma(_rs: &RootSystem) -> CheckResult {
    let mut rng = SampleRng(97);
    for _ in 0..20 {
        let d = 1 + (rng.next() % 3) as i64;
        let len = 1 + (rng.next() % 3) as usize;
        let a: Vec<Scalar> = (0..len)
            .map(|_| Scalar::from_int(1 + (rng.next() % 5) as i64))
            .collect();
        let r: Vec<Scalar> = (0..len)
            .map(|_| Scalar::from_int((rng.next() % (2 * d as u64 + 1)) as i64))
            .collect();
        let exists = match check_nonsigned(&Scalar::from_int(d), &a, &r) {
            Ok(b) => b,
            Err(e) => return check("nonsigned-lemma", false, e.to_string()),
        };
        if exists != r.iter().all(Scalar::is_zero) {
            return check(
                "nonsigned-lemma",
                false,
                "existence disagrees with the zero-shift test".into(),
            );
        }
    }
    check("nonsigned-lemma", true, "20 random tuples".into())
}

pub fn run_invariant_suite(rs: &RootSystem) -> Vec<CheckResult> {
    let group = weyl_group(rs);
    vec![
        isotropy_classification(rs),
        simple_root_normalization(rs),
        rho_one_multiple(rs),
        weyl_order(rs, &group),
        form_invariance(rs, &group),
        dot_action_composes(rs, &group),
        star_identity(rs, &group),
        star_dot_compatibility(rs, &group),
        odd_product_identity(rs),
        extremal_simplicity(rs, &group),
        t_strong_typicality(rs),
        decomposition_equivalence(rs),
        borel_oracle(rs),
        borel_transport(rs),
        character_filtration(rs),
        typical_character_normalization(rs, &group),
        perfect_mates(rs, &group),
        nonsigned_lemma(rs),
    ]
}
