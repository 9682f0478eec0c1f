//! Typicality, Shapovalov vanishing factors, and the block-collision test
//! for modules induced from an even Verma module.

use std::collections::HashMap;

use num::{BigInt, Signed};

use crate::gamma::{
    enumerate_gammas, gamma_limit, parity_class, GammaSet, LatticeClass,
};
use crate::rootdata::{solve_naturals, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::weyl::{OrbitKeys, WeylGroup};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactorKind {
    /// reduced even root with 2(lambda+rho,alpha)/(alpha,alpha) a positive
    /// integer
    EvenReduced,
    /// non-isotropic odd root with an odd positive integer level
    OddNonisotropic,
    /// isotropic odd root pairing to zero with lambda+rho
    Isotropic,
}

impl FactorKind {
    pub fn label(self) -> &'static str {
        match self {
            FactorKind::EvenReduced => "even",
            FactorKind::OddNonisotropic => "odd-nonisotropic",
            FactorKind::Isotropic => "isotropic",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShapovalovFactor {
    pub root: Weight,
    /// the level n, absent for isotropic factors
    pub n: Option<BigInt>,
    pub kind: FactorKind,
}

fn positive_integer(s: &Scalar) -> Option<BigInt> {
    let i = s.as_integer()?;
    if i.is_positive() {
        Some(i)
    } else {
        None
    }
}

/// No isotropic odd positive root pairs to zero with lambda+rho.
pub fn is_typical(rs: &RootSystem, lambda: &Weight) -> bool {
    let shifted = lambda + &rs.rho;
    rs.odd_pos.iter().all(|beta| {
        !rs.form(beta, beta).is_zero() || !rs.form(&shifted, beta).is_zero()
    })
}

/// No odd positive root at all pairs to zero with lambda+rho.
pub fn is_strongly_typical(rs: &RootSystem, lambda: &Weight) -> bool {
    let shifted = lambda + &rs.rho;
    rs.odd_pos
        .iter()
        .all(|beta| !rs.form(&shifted, beta).is_zero())
}

/// The vanishing factors of the contravariant form on the Verma module of
/// highest weight lambda.
pub fn vanishing_shapovalov_factors(
    rs: &RootSystem,
    lambda: &Weight,
) -> Vec<ShapovalovFactor> {
    let shifted = lambda + &rs.rho;
    let two = Scalar::from_int(2);
    let mut out = Vec::new();
    for alpha in &rs.reduced_even {
        let n = &(&two * &rs.form(&shifted, alpha)) / &rs.form(alpha, alpha);
        if let Some(n) = positive_integer(&n) {
            out.push(ShapovalovFactor {
                root: alpha.clone(),
                n: Some(n),
                kind: FactorKind::EvenReduced,
            });
        }
    }
    for beta in &rs.odd_pos {
        let norm = rs.form(beta, beta);
        if norm.is_zero() {
            if rs.form(&shifted, beta).is_zero() {
                out.push(ShapovalovFactor {
                    root: beta.clone(),
                    n: None,
                    kind: FactorKind::Isotropic,
                });
            }
        } else {
            let n = &(&two * &rs.form(&shifted, beta)) / &norm;
            if let Some(n) = positive_integer(&n) {
                if &n % BigInt::from(2) != BigInt::from(0) {
                    out.push(ShapovalovFactor {
                        root: beta.clone(),
                        n: Some(n),
                        kind: FactorKind::OddNonisotropic,
                    });
                }
            }
        }
    }
    out
}

pub fn is_verma_simple(rs: &RootSystem, lambda: &Weight) -> bool {
    vanishing_shapovalov_factors(rs, lambda).is_empty()
}

/// Product of (lambda + rho_b, beta) over the odd positive system of a
/// Borel subalgebra, where rho_b = rho0 - half the sum of that system.
pub fn eval_t(rs: &RootSystem, lambda: &Weight, odd_positive: &[Weight]) -> Result<Scalar> {
    let k = rs.odd_pos.len();
    if odd_positive.len() != k {
        return Err(Error::Domain(format!(
            "an odd positive system of {} has {} roots, got {}",
            rs.id,
            k,
            odd_positive.len()
        )));
    }
    let mut seen = vec![false; k];
    let mut sum = Weight::zero(&rs.id);
    for beta in odd_positive {
        let idx = rs
            .odd_index(beta)
            .or_else(|| rs.odd_index(&-beta))
            .ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not an odd root of {}",
                    beta.root_string(),
                    rs.id
                ))
            })?;
        if seen[idx] {
            return Err(Error::Domain(format!(
                "odd positive system lists {} twice (up to sign)",
                beta.root_string()
            )));
        }
        seen[idx] = true;
        sum = &sum + beta;
    }
    let rho_b = &rs.rho0 - &sum.half();
    let shifted = lambda + &rho_b;
    let mut t = Scalar::one();
    for beta in odd_positive {
        t = &t * &rs.form(&shifted, beta);
    }
    Ok(t)
}

/// Simplicity of the even Verma module with highest weight mu.
pub fn is_g0_verma_simple(rs: &RootSystem, mu: &Weight) -> bool {
    let shifted = mu + &rs.rho0;
    let two = Scalar::from_int(2);
    rs.even_pos.iter().all(|alpha| {
        let n = &(&two * &rs.form(&shifted, alpha)) / &rs.form(alpha, alpha);
        positive_integer(&n).is_none()
    })
}

/// mu <= lambda in the standard order: lambda - mu is a nonnegative-integer
/// combination of the simple roots.
pub fn leq(rs: &RootSystem, mu: &Weight, lambda: &Weight) -> bool {
    solve_naturals(&rs.simple, &(lambda - mu)).is_some()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extremal {
    Min,
    Max,
}

/// Whether lambda is extremal in its dot orbit: no w.lambda strictly below
/// (Min) or strictly above (Max) in the standard order.
pub fn is_dot_extremal(
    rs: &RootSystem,
    group: &WeylGroup,
    lambda: &Weight,
    which: Extremal,
) -> bool {
    group.iter().all(|w| {
        let moved = w.dot(lambda, &rs.rho);
        if moved == *lambda {
            return true;
        }
        match which {
            Extremal::Min => !leq(rs, &moved, lambda),
            Extremal::Max => !leq(rs, lambda, &moved),
        }
    })
}

/// Whether mu and mu' induce the same central character of the even part:
/// mu + rho0 and mu' + rho0 share a Weyl orbit.
pub fn g0_central_char_equal(
    rs: &RootSystem,
    group: &WeylGroup,
    mu: &Weight,
    mu_prime: &Weight,
) -> bool {
    let a = mu + &rs.rho0;
    let b = mu_prime + &rs.rho0;
    group.iter().any(|w| w.apply(&a) == b)
}

/// Highest weights of the even Verma filtration: the multiset
/// {lambda - |gamma|} over all subsets gamma, in mask order.
pub fn g0_factors(rs: &RootSystem, lambda: &Weight) -> Result<Vec<Weight>> {
    Ok(enumerate_gammas(rs)?
        .iter()
        .map(|gamma| lambda - gamma.weight_sum())
        .collect())
}

/// The even Verma filtration split by the lattice class of the generating
/// subset's weight sum.
pub fn parity_split_factors(
    rs: &RootSystem,
    lambda: &Weight,
) -> Result<(Vec<Weight>, Vec<Weight>)> {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for gamma in enumerate_gammas(rs)? {
        let factor = lambda - gamma.weight_sum();
        match parity_class(&gamma) {
            LatticeClass::Even => even.push(factor),
            LatticeClass::Odd => odd.push(factor),
            LatticeClass::Neither => unreachable!("gamma sums lie in the root lattice"),
        }
    }
    Ok((even, odd))
}

/// Two subsets of equal cardinality parity whose shifted weights share an
/// orbit while their sums differ.
#[derive(Clone, Debug)]
pub struct DecomposeConflict {
    pub gamma: GammaSet,
    pub gamma_prime: GammaSet,
    pub shifted: Weight,
    pub shifted_prime: Weight,
}

/// Whether the module induced from the even Verma module of highest weight
/// lambda splits into a direct sum over the odd subsets: within each
/// cardinality-parity class, subsets whose shifted weights
/// lambda - |gamma| + rho0 share a Weyl orbit must have equal |gamma|.
pub fn verma_decomposes(rs: &RootSystem, lambda: &Weight) -> Result<bool> {
    verma_decomposes_with_witness(rs, lambda).map(|(d, _)| d)
}

pub fn verma_decomposes_with_witness(
    rs: &RootSystem,
    lambda: &Weight,
) -> Result<(bool, Option<DecomposeConflict>)> {
    let k = rs.odd_pos.len();
    let limit = gamma_limit(14);
    if k > limit {
        return Err(Error::Domain(format!(
            "{} odd positive roots exceed the decomposition scan limit {} \
             (set SUPERWEYL_MAX_GAMMA to raise it)",
            k, limit
        )));
    }
    let keys = OrbitKeys::new(rs);
    let mut seen: HashMap<(u8, Weight), GammaSet> = HashMap::new();
    for mask in 0..(1u64 << k) {
        let gamma = GammaSet::from_mask(rs, mask as u32);
        let shifted = &(lambda - gamma.weight_sum()) + &rs.rho0;
        let key = keys.key(&shifted);
        match seen.get(&(gamma.parity(), key.clone())) {
            Some(prev) if prev.weight_sum() != gamma.weight_sum() => {
                let shifted_prime = &(lambda - prev.weight_sum()) + &rs.rho0;
                return Ok((
                    false,
                    Some(DecomposeConflict {
                        gamma: prev.clone(),
                        gamma_prime: gamma,
                        shifted: shifted_prime,
                        shifted_prime: shifted,
                    }),
                ));
            }
            Some(_) => {}
            None => {
                seen.insert((gamma.parity(), key), gamma);
            }
        }
    }
    Ok((true, None))
}
