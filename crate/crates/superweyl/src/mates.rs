//! Central characters as dot-orbits and the perfect-mate construction:
//! pick an orbit representative, read off the distinguished odd subset, and
//! certify the mate conditions by brute force over subsets and group
//! elements.

use std::collections::HashMap;

use num::BigRational;

use crate::gamma::{enumerate_gammas, GammaSet};
use crate::rootdata::{Family, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::verma::is_strongly_typical;
use crate::weyl::WeylGroup;
use crate::{Error, Result};

/// A central character named by one highest weight; the semantic identity
/// is the dot orbit of the representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralCharacter {
    rep: Weight,
}

impl CentralCharacter {
    pub fn new(rep: Weight) -> CentralCharacter {
        CentralCharacter { rep }
    }

    pub fn rep(&self) -> &Weight {
        &self.rep
    }

    pub fn is_strongly_typical(&self, rs: &RootSystem) -> bool {
        is_strongly_typical(rs, &self.rep)
    }

    /// Same character: the shifted representatives share a Weyl orbit.
    pub fn equals(
        &self,
        rs: &RootSystem,
        group: &WeylGroup,
        other: &CentralCharacter,
    ) -> bool {
        let a = &self.rep + &rs.rho;
        let b = &other.rep + &rs.rho;
        group.iter().any(|w| w.apply(&a) == b)
    }
}

/// No orbit member has a zero delta-coordinate of lambda + rho; only a
/// type II notion.
pub fn is_generic(rs: &RootSystem, chi: &CentralCharacter) -> Result<bool> {
    if rs.type_i() {
        return Err(Error::Domain(format!(
            "genericity applies to type II algebras only, not {}",
            rs.id
        )));
    }
    let shifted = chi.rep() + &rs.rho;
    Ok(shifted.delta_coords().iter().all(|c| !c.is_zero()))
}

fn rational_coords(coords: &[Scalar]) -> Result<Vec<BigRational>> {
    coords
        .iter()
        .map(|c| {
            c.as_rational().cloned().ok_or_else(|| {
                Error::Domain(
                    "weight coordinates must be rational-valued to order \
                     orbit members"
                        .into(),
                )
            })
        })
        .collect()
}

fn zero() -> BigRational {
    BigRational::from_integer(0.into())
}

/// The sorted shape required of lambda + rho in the non-generic branch.
fn non_generic_normal_form(rs: &RootSystem, shifted: &Weight) -> Result<bool> {
    let k = rational_coords(shifted.delta_coords())?;
    let l = rational_coords(shifted.eps_coords())?;
    Ok(match rs.id.family {
        Family::OspD => {
            let d = k.iter().filter(|c| **c == zero()).count();
            let n = k.len();
            let m = l.len();
            let positive_sorted = k[..n - d].windows(2).all(|w| w[0] >= w[1])
                && (n == d || k[n - d - 1] > zero())
                && k[n - d..].iter().all(|c| *c == zero());
            let body_sorted = l[..m - 1].windows(2).all(|w| w[0] >= w[1])
                && (m == 1 || l[m - 2] > zero());
            let tail_ok = (m == 1 || (l[m - 2] >= l[m - 1] && l[m - 2] >= -l[m - 1].clone()))
                && l[m - 1] != zero();
            positive_sorted && body_sorted && tail_ok
        }
        Family::D21A => {
            k[0] == zero()
                && l[0] >= zero()
                && l[1] >= zero()
                && (l[0] != zero() || l[1] != zero())
        }
        Family::F4 => {
            k[0] == zero()
                && l[0] >= l[1]
                && l[1] >= l[2]
                && l[2] >= zero()
                && l[0] != zero()
        }
        _ => false,
    })
}

/// An orbit member suitable for reading off the distinguished subset: all
/// delta-coordinates of lambda + rho positive in the generic case, the
/// family's sorted normal form otherwise.
pub fn dominant_rep(
    rs: &RootSystem,
    group: &WeylGroup,
    chi: &CentralCharacter,
) -> Result<Weight> {
    if rs.type_i() {
        return Err(Error::Domain(format!(
            "type I algebra {} needs no dominant representative, the empty \
             subset is already a mate",
            rs.id
        )));
    }
    let shifted = chi.rep() + &rs.rho;
    rational_coords(shifted.delta_coords())?;
    if is_generic(rs, chi)? {
        for w in group.iter() {
            let moved = w.apply(&shifted);
            let positive = moved
                .delta_coords()
                .iter()
                .all(|c| c.as_rational().map(|q| *q > zero()).unwrap_or(false));
            if positive {
                return Ok(&moved - &rs.rho);
            }
        }
        unreachable!("a generic orbit contains an all-positive member");
    }
    rational_coords(shifted.eps_coords())?;
    for w in group.iter() {
        let moved = w.apply(&shifted);
        if non_generic_normal_form(rs, &moved)? {
            return Ok(&moved - &rs.rho);
        }
    }
    Err(Error::Domain(format!(
        "no orbit member of {} matches the sorted normal form",
        chi.rep()
    )))
}

fn sn(l: &BigRational) -> i64 {
    if *l > zero() {
        1
    } else {
        -1
    }
}

/// The distinguished odd subset of a weight in normal form: empty in the
/// generic case, the explicit family recipes otherwise.
pub fn gamma_d(rs: &RootSystem, normal_lambda: &Weight) -> Result<GammaSet> {
    if !is_strongly_typical(rs, normal_lambda) {
        return Err(Error::Domain(format!(
            "{} is not strongly typical",
            normal_lambda
        )));
    }
    let shifted = normal_lambda + &rs.rho;
    if shifted.delta_coords().iter().all(|c| !c.is_zero()) {
        return Ok(GammaSet::empty(rs));
    }
    if !non_generic_normal_form(rs, &shifted)? {
        return Err(Error::Domain(format!(
            "{} is not in the sorted normal form",
            normal_lambda
        )));
    }
    let l = rational_coords(shifted.eps_coords())?;
    let mut roots: Vec<Weight> = Vec::new();
    let unit = |di: usize, ej: usize, sign: i64| {
        let mut delta = vec![Scalar::zero(); rs.id.n];
        let mut eps = vec![Scalar::zero(); rs.id.m];
        delta[di] = Scalar::one();
        eps[ej] = Scalar::from_int(sign);
        Weight::new(rs.id.clone(), delta, eps)
    };
    match rs.id.family {
        Family::OspD => {
            let k = rational_coords(shifted.delta_coords())?;
            let n = rs.id.n;
            let m = rs.id.m;
            let d = k.iter().filter(|c| **c == zero()).count();
            for i in n - d..n {
                for j in 0..m - 1 {
                    roots.push(unit(i, j, -1));
                }
                roots.push(unit(i, m - 1, -sn(&l[m - 1])));
            }
        }
        Family::D21A => {
            if l[0] != zero() {
                roots.push(Weight::parse(&rs.id, "1;-1,-1").unwrap());
                roots.push(Weight::parse(&rs.id, "1;-1,1").unwrap());
            } else {
                roots.push(Weight::parse(&rs.id, "1;-1,-1").unwrap());
                roots.push(Weight::parse(&rs.id, "1;1,-1").unwrap());
            }
        }
        Family::F4 => {
            if l[0] > l[1] {
                for (s2, s3) in [(-1, -1), (-1, 1), (1, -1), (1, 1)] {
                    roots.push(
                        Weight::parse(
                            &rs.id,
                            &format!("1/2;-1/2,{}/2,{}/2", s2, s3),
                        )
                        .unwrap(),
                    );
                }
            } else {
                for (s1, s2, s3) in
                    [(-1, -1, -1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
                {
                    roots.push(
                        Weight::parse(
                            &rs.id,
                            &format!("1/2;{}/2,{}/2,{}/2", s1, s2, s3),
                        )
                        .unwrap(),
                    );
                }
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "strongly typical characters of {} are generic",
                rs.id
            )));
        }
    }
    GammaSet::from_roots(rs, &roots)
}

/// How a mate certificate failed: a second subset landing in the same
/// shifted orbit, or a stabilizer element escaping the containment.
#[derive(Clone, Debug)]
pub enum MateWitness {
    OrbitCollision { gamma_prime: GammaSet, w: String },
    StabilizerEscape { w: String },
}

#[derive(Clone, Debug)]
pub struct MateCertificate {
    pub lambda: Weight,
    pub gamma: GammaSet,
    pub mate_weight: Weight,
    pub is_mate: bool,
    pub is_perfect: bool,
    pub witnesses: Vec<MateWitness>,
}

/// Check both mate conditions exhaustively: no other subset's shifted
/// weight may share the orbit of lambda - |gamma| + rho0, and every group
/// element fixing that weight must fix lambda + rho.
pub fn verify_mate(
    rs: &RootSystem,
    group: &WeylGroup,
    lambda: &Weight,
    gamma: &GammaSet,
) -> Result<MateCertificate> {
    let target = &(lambda - gamma.weight_sum()) + &rs.rho0;
    let mut orbit: HashMap<Weight, String> = HashMap::new();
    for w in group.iter() {
        orbit
            .entry(w.apply(&target))
            .or_insert_with(|| w.describe(rs).join(", "));
    }
    let mut witnesses = Vec::new();
    for other in enumerate_gammas(rs)? {
        if other.mask() == gamma.mask() {
            continue;
        }
        let shifted = &(lambda - other.weight_sum()) + &rs.rho0;
        if let Some(w) = orbit.get(&shifted) {
            witnesses.push(MateWitness::OrbitCollision {
                gamma_prime: other,
                w: w.clone(),
            });
        }
    }
    let is_mate = witnesses.is_empty();
    let dotted = lambda + &rs.rho;
    for w in group.iter() {
        if w.apply(&target) == target && w.apply(&dotted) != dotted {
            witnesses.push(MateWitness::StabilizerEscape {
                w: w.describe(rs).join(", "),
            });
        }
    }
    let is_perfect = witnesses.is_empty();
    Ok(MateCertificate {
        lambda: lambda.clone(),
        gamma: gamma.clone(),
        mate_weight: lambda - gamma.weight_sum(),
        is_mate,
        is_perfect,
        witnesses,
    })
}

/// End-to-end construction: representative, distinguished subset, and the
/// brute-force certificate, which must come back perfect.
pub fn find_perfect_mate(
    rs: &RootSystem,
    group: &WeylGroup,
    chi: &CentralCharacter,
) -> Result<MateCertificate> {
    if !chi.is_strongly_typical(rs) {
        return Err(Error::Domain(format!(
            "{} is not strongly typical",
            chi.rep()
        )));
    }
    let (lambda, gamma) = if rs.type_i() {
        (chi.rep().clone(), GammaSet::empty(rs))
    } else {
        let lambda = dominant_rep(rs, group, chi)?;
        let gamma = gamma_d(rs, &lambda)?;
        (lambda, gamma)
    };
    let certificate = verify_mate(rs, group, &lambda, &gamma)?;
    if !certificate.is_perfect {
        return Err(Error::Verification(format!(
            "the constructed subset fails the mate conditions at {} with {} \
             witnesses",
            lambda,
            certificate.witnesses.len()
        )));
    }
    Ok(certificate)
}

fn permutations(s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(s - 1) {
        for slot in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(slot, s - 1);
            out.push(p);
        }
    }
    out
}

/// Exhaustive check of the sign-elimination lemma: any signed permutation
/// sigma with sigma(a_i + d) = a_i + d - r_i must be plain and force r = 0.
/// Returns whether such a sigma exists at all.
pub fn check_nonsigned(d: &Scalar, a: &[Scalar], r: &[Scalar]) -> Result<bool> {
    let s = a.len();
    if r.len() != s {
        return Err(Error::Domain(
            "a and r must have the same length".into(),
        ));
    }
    if s > 6 {
        return Err(Error::Domain(format!(
            "{} entries exceed the exhaustive enumeration limit 6",
            s
        )));
    }
    if !d.is_positive()? {
        return Err(Error::Domain("d must be positive".into()));
    }
    let two_d = &Scalar::from_int(2) * d;
    for x in a {
        if !x.is_positive()? {
            return Err(Error::Domain("entries of a must be positive".into()));
        }
    }
    for x in r {
        if x.is_negative()? || (&two_d - x).is_negative()? {
            return Err(Error::Domain(
                "entries of r must lie between 0 and 2d".into(),
            ));
        }
    }
    let lhs: Vec<Scalar> = a.iter().map(|x| x + d).collect();
    let rhs: Vec<Scalar> = lhs.iter().zip(r).map(|(x, ri)| x - ri).collect();
    let mut found = false;
    for p in permutations(s) {
        for mask in 0u32..(1 << s) {
            let matches = (0..s).all(|i| {
                let signed = if mask & (1 << i) != 0 {
                    -&lhs[p[i]]
                } else {
                    lhs[p[i]].clone()
                };
                signed == rhs[i]
            });
            if matches {
                if mask != 0 {
                    return Err(Error::Verification(
                        "a genuinely signed permutation matched, which the \
                         sign-elimination lemma rules out"
                            .into(),
                    ));
                }
                if r.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Verification(
                        "a permutation matched with a nonzero shift, which \
                         the sign-elimination lemma rules out"
                            .into(),
                    ));
                }
                found = true;
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, AlgebraId};
    use crate::weyl::weyl_group;
    use proptest::prelude::*;

    fn rs(name: &str) -> RootSystem {
        build_root_system(AlgebraId::parse(name).unwrap()).unwrap()
    }

    fn wt(rs: &RootSystem, s: &str) -> Weight {
        Weight::parse(&rs.id, s).unwrap()
    }

    fn shifted_char(rs: &RootSystem, s: &str) -> CentralCharacter {
        CentralCharacter::new(&wt(rs, s) - &rs.rho)
    }

    #[test]
    fn genericity_examples() {
        let b = rs("B(1,1)");
        assert!(is_generic(&b, &shifted_char(&b, "3/2;1/2")).unwrap());
        let d = rs("D(2,2)");
        let non_generic = shifted_char(&d, "3,0;2,1");
        assert!(!is_generic(&d, &non_generic).unwrap());
        let d21 = rs("D(2,1,a)");
        assert!(is_generic(&d21, &shifted_char(&d21, "1;1,0")).unwrap());
        let gl = rs("gl(2,1)");
        assert!(is_generic(&gl, &CentralCharacter::new(Weight::zero(&gl.id)))
            .is_err());
    }

    #[test]
    fn genericity_is_orbit_invariant() {
        let d = rs("D(2,2)");
        let group = weyl_group(&d);
        for s in ["3,0;2,1", "3,1;2,1"] {
            let chi = shifted_char(&d, s);
            let expected = is_generic(&d, &chi).unwrap();
            let shifted = chi.rep() + &d.rho;
            for w in group.iter() {
                let member = CentralCharacter::new(&w.apply(&shifted) - &d.rho);
                assert_eq!(is_generic(&d, &member).unwrap(), expected);
            }
        }
    }

    #[test]
    fn dominant_rep_flips_and_sorts() {
        let b = rs("B(1,1)");
        let group = weyl_group(&b);
        let chi = shifted_char(&b, "-2;1");
        let rep = dominant_rep(&b, &group, &chi).unwrap();
        assert_eq!(&rep + &b.rho, wt(&b, "2;1"));
        // already dominant: comes back unchanged
        let chi = shifted_char(&b, "2;1");
        let again = dominant_rep(&b, &group, &chi).unwrap();
        assert_eq!(&again + &b.rho, wt(&b, "2;1"));

        let d = rs("D(2,2)");
        let group = weyl_group(&d);
        let chi = shifted_char(&d, "0,3;-1,-2");
        let rep = dominant_rep(&d, &group, &chi).unwrap();
        assert_eq!(&rep + &d.rho, wt(&d, "3,0;2,1"));
    }

    #[test]
    fn gamma_d_reads_off_the_recipes() {
        let d21 = rs("D(2,1,a)");
        let group = weyl_group(&d21);
        let lam = &wt(&d21, "0;1,1") - &d21.rho;
        let gamma = gamma_d(&d21, &lam).unwrap();
        assert_eq!(gamma.root_strings(&d21), vec!["d1-e1+e2", "d1-e1-e2"]);
        let mate_shifted = &(&lam - gamma.weight_sum()) + &d21.rho0;
        assert_eq!(mate_shifted, wt(&d21, "0;3,1"));
        let _ = group;

        let d = rs("D(2,2)");
        let lam = &wt(&d, "3,0;2,1") - &d.rho;
        let gamma = gamma_d(&d, &lam).unwrap();
        assert_eq!(gamma.root_strings(&d), vec!["d2-e1", "d2-e2"]);
        let mate_shifted = &(&lam - gamma.weight_sum()) + &d.rho0;
        assert_eq!(mate_shifted, wt(&d, "5,0;3,2"));

        let f = rs("F(4)");
        let lam = &wt(&f, "0;2,2,1") - &f.rho;
        let gamma = gamma_d(&f, &lam).unwrap();
        assert_eq!(gamma.len(), 4);
        assert_eq!(*gamma.weight_sum(), wt(&f, "2;-1,-1,-1"));
        let mate_shifted = &(&lam - gamma.weight_sum()) + &f.rho0;
        assert_eq!(mate_shifted, wt(&f, "0;3,3,2"));

        // generic weights read off the empty subset
        let b = rs("B(1,1)");
        let lam = &wt(&b, "3/2;1/5") - &b.rho;
        assert!(gamma_d(&b, &lam).unwrap().is_empty());
    }

    #[test]
    fn mate_certificates_on_the_worked_cases() {
        let d21 = rs("D(2,1,a)");
        let group = weyl_group(&d21);
        let lam = &wt(&d21, "0;1,1") - &d21.rho;
        let gamma = gamma_d(&d21, &lam).unwrap();
        let cert = verify_mate(&d21, &group, &lam, &gamma).unwrap();
        assert!(cert.is_mate && cert.is_perfect);
        assert_eq!(cert.mate_weight, &lam - gamma.weight_sum());
        let empty = verify_mate(&d21, &group, &lam, &GammaSet::empty(&d21))
            .unwrap();
        assert!(!empty.is_mate);
        assert!(matches!(
            empty.witnesses[0],
            MateWitness::OrbitCollision { .. }
        ));

        let b = rs("B(1,1)");
        let group = weyl_group(&b);
        let lam = &wt(&b, "2;1/3") - &b.rho;
        let cert = verify_mate(&b, &group, &lam, &GammaSet::empty(&b)).unwrap();
        assert!(cert.is_mate && cert.is_perfect);
    }

    #[test]
    fn find_perfect_mate_end_to_end() {
        let d21 = rs("D(2,1,a)");
        let group = weyl_group(&d21);
        let chi = CentralCharacter::new(&wt(&d21, "0;-1,1") - &d21.rho);
        let cert = find_perfect_mate(&d21, &group, &chi).unwrap();
        assert!(cert.is_perfect);
        assert_eq!(
            cert.gamma.root_strings(&d21),
            vec!["d1-e1+e2", "d1-e1-e2"]
        );

        let gl = rs("gl(2,1)");
        let group = weyl_group(&gl);
        let chi = CentralCharacter::new(wt(&gl, "1/3;2,1/5"));
        let cert = find_perfect_mate(&gl, &group, &chi).unwrap();
        assert!(cert.is_perfect && cert.gamma.is_empty());

        let b = rs("B(1,1)");
        let group = weyl_group(&b);
        let atypical = CentralCharacter::new(Weight::zero(&b.id));
        assert!(find_perfect_mate(&b, &group, &atypical).is_err());
    }

    #[test]
    fn character_equality_is_dot_orbit_equality() {
        let b = rs("B(1,1)");
        let group = weyl_group(&b);
        let chi = shifted_char(&b, "2;1");
        let same = shifted_char(&b, "-2;1");
        let other = shifted_char(&b, "2;2");
        assert!(chi.equals(&b, &group, &same));
        assert!(!chi.equals(&b, &group, &other));
        assert!(chi.is_strongly_typical(&b));
    }

    fn ints(vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|v| Scalar::from_int(*v)).collect()
    }

    #[test]
    fn nonsigned_check_examples() {
        let d = Scalar::from_int(2);
        assert!(check_nonsigned(&d, &ints(&[1, 2, 3]), &ints(&[0, 0, 0]))
            .unwrap());
        assert!(check_nonsigned(&d, &ints(&[1, 1, 2]), &ints(&[0, 0, 0]))
            .unwrap());
        assert!(!check_nonsigned(&d, &ints(&[1, 2, 3]), &ints(&[0, 1, 0]))
            .unwrap());
        assert!(check_nonsigned(&d, &ints(&[1]), &ints(&[0, 0])).is_err());
        assert!(check_nonsigned(&d, &ints(&[-1]), &ints(&[0])).is_err());
        assert!(check_nonsigned(&d, &ints(&[1]), &ints(&[5])).is_err());
        assert!(
            check_nonsigned(&Scalar::zero(), &ints(&[1]), &ints(&[0])).is_err()
        );
    }

    proptest! {
        #[test]
        fn nonsigned_lemma_holds(
            d in 1i64..5,
            pairs in prop::collection::vec((1i64..7, 0i64..100), 1..5),
        ) {
            let a: Vec<Scalar> =
                pairs.iter().map(|(x, _)| Scalar::from_int(*x)).collect();
            let r: Vec<Scalar> = pairs
                .iter()
                .map(|(_, raw)| Scalar::from_int(raw % (2 * d + 1)))
                .collect();
            let exists =
                check_nonsigned(&Scalar::from_int(d), &a, &r).unwrap();
            let all_zero = r.iter().all(Scalar::is_zero);
            prop_assert_eq!(exists, all_zero);
        }
    }
}
