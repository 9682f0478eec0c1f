//! Borel subalgebras sharing the catalog even positive system, odd
//! reflections between them, and highest-weight transport along reflection
//! chains.
//!
//! The even part is fixed, so a Borel is just a choice of sign for each odd
//! root pair, stored against the catalog order of the odd positive roots.

use std::collections::{HashMap, HashSet};

use crate::rootdata::{RootSystem, Weight};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Borel {
    signs: Vec<i8>,
    rho_b: Weight,
}

impl Borel {
    /// The catalog Borel: every odd positive root kept positive.
    pub fn standard(rs: &RootSystem) -> Borel {
        Borel::from_signs(rs, vec![1; rs.odd_pos.len()])
    }

    fn from_signs(rs: &RootSystem, signs: Vec<i8>) -> Borel {
        let mut sum = Weight::zero(&rs.id);
        for (sign, beta) in signs.iter().zip(&rs.odd_pos) {
            sum = if *sign > 0 { &sum + beta } else { &sum - beta };
        }
        let rho_b = &rs.rho0 - &sum.half();
        Borel { signs, rho_b }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn rho_b(&self) -> &Weight {
        &self.rho_b
    }

    /// The odd positive system S of this Borel, in catalog pair order.
    pub fn odd_roots(&self, rs: &RootSystem) -> Vec<Weight> {
        self.signs
            .iter()
            .zip(&rs.odd_pos)
            .map(|(sign, beta)| if *sign > 0 { beta.clone() } else { -beta })
            .collect()
    }

    /// Sorted root strings of S, the serialized form.
    pub fn root_strings(&self, rs: &RootSystem) -> Vec<String> {
        let mut out: Vec<String> = self
            .odd_roots(rs)
            .iter()
            .map(Weight::root_string)
            .collect();
        out.sort();
        out
    }

    /// The full positive system of this Borel.
    pub fn positive_roots(&self, rs: &RootSystem) -> Vec<Weight> {
        let mut out = rs.even_pos.clone();
        out.extend(self.odd_roots(rs));
        out
    }
}

/// The members of S that are simple in the Borel's positive system and
/// isotropic, i.e. the legal odd reflection directions.
pub fn simple_isotropic_roots(rs: &RootSystem, b: &Borel) -> Vec<Weight> {
    let positive: HashSet<Weight> = b.positive_roots(rs).into_iter().collect();
    b.odd_roots(rs)
        .into_iter()
        .filter(|beta| {
            rs.form(beta, beta).is_zero()
                && positive.iter().all(|x| !positive.contains(&(beta - x)))
        })
        .collect()
}

/// Reflect b along a simple isotropic root beta of its odd system: S loses
/// beta and gains -beta, and rho_b moves by beta.
pub fn odd_reflect(rs: &RootSystem, b: &Borel, beta: &Weight) -> Result<Borel> {
    let index = b
        .odd_roots(rs)
        .iter()
        .position(|r| r == beta)
        .ok_or_else(|| {
            Error::Domain(format!(
                "{} is not in the odd positive system",
                beta.root_string()
            ))
        })?;
    if !rs.form(beta, beta).is_zero() {
        return Err(Error::Domain(format!(
            "{} is not isotropic",
            beta.root_string()
        )));
    }
    if !simple_isotropic_roots(rs, b).contains(beta) {
        return Err(Error::Domain(format!(
            "{} is not simple in this Borel",
            beta.root_string()
        )));
    }
    let mut signs = b.signs.clone();
    signs[index] = -signs[index];
    let reflected = Borel::from_signs(rs, signs);
    debug_assert_eq!(*reflected.rho_b(), b.rho_b() + beta);
    Ok(reflected)
}

/// Closure of the catalog Borel under odd reflections, BFS order.
pub fn enumerate_borels(rs: &RootSystem) -> Vec<Borel> {
    let start = Borel::standard(rs);
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    seen.insert(start.signs.clone());
    let mut queue = vec![start.clone()];
    let mut out = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for beta in simple_isotropic_roots(rs, &current) {
            let next = odd_reflect(rs, &current, &beta)
                .expect("reflection along a simple isotropic root");
            if seen.insert(next.signs.clone()) {
                queue.push(next.clone());
                out.push(next);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TransportMode {
    /// refuse steps where the pairing vanishes
    Verma,
    /// keep the weight fixed on such steps
    Simple,
}

/// Carry a highest weight from one Borel to another along a chain of odd
/// reflections: each step along beta subtracts beta when (lambda+rho_b,beta)
/// is nonzero and otherwise leaves the weight alone (mode Simple) or fails
/// (mode Verma).
pub fn transport_weight(
    rs: &RootSystem,
    lambda: &Weight,
    from: &Borel,
    to: &Borel,
    mode: TransportMode,
) -> Result<Weight> {
    let chain = reflection_chain(rs, from, to)?;
    let mut current = lambda.clone();
    let mut rho_b = from.rho_b().clone();
    for beta in chain {
        let pairing = rs.form(&(&current + &rho_b), &beta);
        if pairing.is_zero() {
            if mode == TransportMode::Verma {
                return Err(Error::Domain(format!(
                    "Verma transport undefined at {}",
                    beta.root_string()
                )));
            }
        } else {
            current = &current - &beta;
        }
        rho_b = &rho_b + &beta;
    }
    Ok(current)
}

/// The reflecting roots of a BFS path from one Borel to another.
fn reflection_chain(
    rs: &RootSystem,
    from: &Borel,
    to: &Borel,
) -> Result<Vec<Weight>> {
    if from.signs == to.signs {
        return Ok(Vec::new());
    }
    let mut parents: HashMap<Vec<i8>, (Vec<i8>, Weight)> = HashMap::new();
    let mut queue = vec![from.clone()];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for beta in simple_isotropic_roots(rs, &current) {
            let next = odd_reflect(rs, &current, &beta)
                .expect("reflection along a simple isotropic root");
            if next.signs != from.signs && !parents.contains_key(&next.signs) {
                parents.insert(next.signs.clone(), (current.signs.clone(), beta));
                if next.signs == to.signs {
                    let mut chain = Vec::new();
                    let mut cursor = &to.signs;
                    while let Some((prev, step)) = parents.get(cursor) {
                        chain.push(step.clone());
                        cursor = prev;
                    }
                    chain.reverse();
                    return Ok(chain);
                }
                queue.push(next);
            }
        }
    }
    Err(Error::Domain(
        "no odd reflection chain connects the given Borel subalgebras".into(),
    ))
}
