//! Subsets of the odd positive roots, their weight sums, and the twisted
//! Weyl action on them.
//!
//! A subset gamma is stored as a bitmask over the catalog order of the odd
//! positive roots. The star action is fixed by the identity
//! w(rho1 - |gamma|) = rho1 - |w * gamma|: an odd positive root beta' lands
//! in w * gamma exactly when, writing beta' = +-w(beta), either beta is in
//! gamma and w(beta) is positive, or beta is not in gamma and w(beta) is
//! negative.

use std::collections::HashMap;

use num::BigInt;

use crate::rootdata::{solve_integers, Family, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::weyl::WeylElement;
use crate::{Error, Result};

/// Position of a weight relative to the root lattice ZDelta and the even
/// root lattice ZDelta_0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeClass {
    /// in ZDelta_0
    Even,
    /// in ZDelta but not in ZDelta_0
    Odd,
    /// outside ZDelta
    Neither,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GammaSet {
    mask: u32,
    weight_sum: Weight,
}

impl GammaSet {
    pub fn empty(rs: &RootSystem) -> GammaSet {
        GammaSet {
            mask: 0,
            weight_sum: Weight::zero(&rs.id),
        }
    }

    pub fn from_mask(rs: &RootSystem, mask: u32) -> GammaSet {
        let k = rs.odd_pos.len();
        assert!(k >= 32 || mask < (1u32 << k), "mask out of range");
        let mut sum = Weight::zero(&rs.id);
        for (i, beta) in rs.odd_pos.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = &sum + beta;
            }
        }
        GammaSet {
            mask,
            weight_sum: sum,
        }
    }

    /// Build from explicit roots, each of which must be odd positive.
    pub fn from_roots(rs: &RootSystem, roots: &[Weight]) -> Result<GammaSet> {
        let mut mask = 0u32;
        for beta in roots {
            let i = rs.odd_index(beta).ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not an odd positive root of {}",
                    beta.root_string(),
                    rs.id
                ))
            })?;
            if mask & (1 << i) != 0 {
                return Err(Error::Domain(format!(
                    "repeated root {}",
                    beta.root_string()
                )));
            }
            mask |= 1 << i;
        }
        Ok(GammaSet::from_mask(rs, mask))
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// Cardinality parity: 0 or 1.
    pub fn parity(&self) -> u8 {
        (self.mask.count_ones() % 2) as u8
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.mask & (1 << i) != 0
    }

    /// The weight |gamma|, the sum of the members.
    pub fn weight_sum(&self) -> &Weight {
        &self.weight_sum
    }

    pub fn roots(&self, rs: &RootSystem) -> Vec<Weight> {
        rs.odd_pos
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains_index(*i))
            .map(|(_, b)| b.clone())
            .collect()
    }

    /// Sorted root strings, the serialized form.
    pub fn root_strings(&self, rs: &RootSystem) -> Vec<String> {
        let mut out: Vec<String> = self
            .roots(rs)
            .iter()
            .map(Weight::root_string)
            .collect();
        out.sort();
        out
    }
}

pub(crate) fn gamma_limit(default: usize) -> usize {
    std::env::var("SUPERWEYL_MAX_GAMMA")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(default)
}

/// All 2^k subsets of the odd positive roots, in mask order. Guarded by
/// SUPERWEYL_MAX_GAMMA (default 20) since the count is exponential.
pub fn enumerate_gammas(rs: &RootSystem) -> Result<Vec<GammaSet>> {
    let k = rs.odd_pos.len();
    let limit = gamma_limit(20);
    if k > limit {
        return Err(Error::Domain(format!(
            "{} odd positive roots exceed the subset enumeration limit {} \
             (set SUPERWEYL_MAX_GAMMA to raise it)",
            k, limit
        )));
    }
    Ok((0..(1u64 << k))
        .map(|mask| GammaSet::from_mask(rs, mask as u32))
        .collect())
}

/// The twisted action of w on gamma.
pub fn star(rs: &RootSystem, w: &WeylElement, gamma: &GammaSet) -> GammaSet {
    let mut mask = 0u32;
    for (i, beta) in rs.odd_pos.iter().enumerate() {
        let img = w.apply(beta);
        if let Some(j) = rs.odd_index(&img) {
            if gamma.contains_index(i) {
                mask |= 1 << j;
            }
        } else {
            let j = rs
                .odd_index(&-&img)
                .expect("the Weyl group permutes the odd roots");
            if !gamma.contains_index(i) {
                mask |= 1 << j;
            }
        }
    }
    GammaSet::from_mask(rs, mask)
}

/// Classify mu against the root and even-root lattices.
pub fn q_lattice_class(rs: &RootSystem, mu: &Weight) -> LatticeClass {
    let Some(_) = solve_integers(&rs.simple, mu) else {
        return LatticeClass::Neither;
    };
    let odd_part = match rs.id.family {
        Family::Gl | Family::Sl | Family::OspC => {
            coord_sum_is_odd(mu.eps_coords())
        }
        Family::OspB | Family::OspD | Family::D21A | Family::G3 => {
            coord_sum_is_odd(mu.delta_coords())
        }
        Family::F4 => !mu.delta_coord(0).is_integer(),
    };
    if odd_part {
        LatticeClass::Odd
    } else {
        LatticeClass::Even
    }
}

fn coord_sum_is_odd(coords: &[Scalar]) -> bool {
    let mut sum = BigInt::from(0);
    for c in coords {
        match c.as_integer() {
            Some(i) => sum += i,
            // a root lattice member with fractional block sum cannot occur
            // for the families routed here
            None => return false,
        }
    }
    sum % BigInt::from(2) != BigInt::from(0)
}

/// Map cardinality parity to the lattice class of |gamma|.
pub fn parity_class(gamma: &GammaSet) -> LatticeClass {
    if gamma.parity() == 0 {
        LatticeClass::Even
    } else {
        LatticeClass::Odd
    }
}

/// Exact expansion of prod over odd positive beta of (1 + e^{-beta}) as a
/// weight-indexed coefficient map; the support is {-|gamma|}.
pub fn odd_product_expansion(rs: &RootSystem) -> Result<HashMap<Weight, BigInt>> {
    let k = rs.odd_pos.len();
    let limit = gamma_limit(20);
    if k > limit {
        return Err(Error::Domain(format!(
            "{} odd positive roots exceed the expansion limit {}",
            k, limit
        )));
    }
    let mut terms: HashMap<Weight, BigInt> = HashMap::new();
    terms.insert(Weight::zero(&rs.id), BigInt::from(1));
    for beta in &rs.odd_pos {
        let mut next: HashMap<Weight, BigInt> = HashMap::new();
        for (w, c) in &terms {
            *next.entry(w.clone()).or_default() += c;
            *next.entry(w - beta).or_default() += c;
        }
        terms = next;
    }
    Ok(terms)
}
