//! Formal characters truncated to a finite cone: coefficient maps over
//! nonnegative simple-root coordinates, with weights read as base - nu.pi.
//!
//! Series live in the cone because every positive root is a nonnegative
//! integer combination of the simple roots, so the D-factor expands there
//! and division by (1 - e^{-alpha}) becomes a geometric convolution.

use std::collections::HashMap;

use num::ToPrimitive;

use crate::rootdata::{solve_naturals, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::verma::is_typical;
use crate::weyl::WeylGroup;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalCharacter {
    base: Weight,
    depth: u32,
    coeffs: HashMap<Vec<u32>, i64>,
}

impl FormalCharacter {
    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn coefficient(&self, nu: &[u32]) -> i64 {
        self.coeffs.get(nu).copied().unwrap_or(0)
    }

    /// The weight base - sum(nu_i * pi_i) named by a coordinate vector.
    pub fn weight_at(&self, rs: &RootSystem, nu: &[u32]) -> Weight {
        let mut out = self.base.clone();
        for (count, alpha) in nu.iter().zip(&rs.simple) {
            out = &out - &alpha.scale(&Scalar::from_int(*count as i64));
        }
        out
    }

    /// Nonzero terms sorted by total height then lexicographically.
    pub fn terms(&self) -> Vec<(Vec<u32>, i64)> {
        let mut out: Vec<(Vec<u32>, i64)> = self
            .coeffs
            .iter()
            .filter(|(_, c)| **c != 0)
            .map(|(nu, c)| (nu.clone(), *c))
            .collect();
        out.sort_by_key(|(nu, _)| {
            (nu.iter().map(|x| *x as u64).sum::<u64>(), nu.clone())
        });
        out
    }
}

fn root_coords(rs: &RootSystem, root: &Weight) -> Vec<u32> {
    solve_naturals(&rs.simple, root)
        .expect("positive roots lie in the natural span of the simple roots")
        .iter()
        .map(|c| c.to_u32().expect("small root coordinates"))
        .collect()
}

fn cone_points(rank: usize, depth: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; rank];
    fn fill(
        out: &mut Vec<Vec<u32>>,
        current: &mut Vec<u32>,
        pos: usize,
        left: u32,
    ) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for v in 0..=left {
            current[pos] = v;
            fill(out, current, pos + 1, left - v);
        }
        current[pos] = 0;
    }
    fill(&mut out, &mut current, 0, depth);
    out.sort_by_key(|nu| (nu.iter().map(|x| *x as u64).sum::<u64>(), nu.clone()));
    out
}

fn add_shifted(nu: &[u32], shift: &[u32], depth: u32) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(nu.len());
    let mut height = 0u64;
    for (a, b) in nu.iter().zip(shift) {
        let v = a + b;
        height += v as u64;
        out.push(v);
    }
    (height <= depth as u64).then_some(out)
}

fn sub_checked(nu: &[u32], shift: &[u32]) -> Option<Vec<u32>> {
    nu.iter()
        .zip(shift)
        .map(|(a, b)| a.checked_sub(*b))
        .collect()
}

/// The D-factor expansion around a base weight: e^base times
/// prod over odd positive (1 + e^{-beta}) times
/// prod over even positive (1 - e^{-alpha})^{-1}, truncated at depth.
fn dressed_character(rs: &RootSystem, base: Weight, depth: u32) -> FormalCharacter {
    let rank = rs.simple.len();
    let mut coeffs: HashMap<Vec<u32>, i64> = HashMap::new();
    coeffs.insert(vec![0; rank], 1);
    for beta in &rs.odd_pos {
        let shift = root_coords(rs, beta);
        let mut next = coeffs.clone();
        for (nu, c) in &coeffs {
            if let Some(moved) = add_shifted(nu, &shift, depth) {
                *next.entry(moved).or_default() += c;
            }
        }
        coeffs = next;
    }
    let points = cone_points(rank, depth);
    for alpha in &rs.even_pos {
        let shift = root_coords(rs, alpha);
        for nu in &points {
            if let Some(prev) = sub_checked(nu, &shift) {
                let carry = coeffs.get(&prev).copied().unwrap_or(0);
                if carry != 0 {
                    *coeffs.entry(nu.clone()).or_default() += carry;
                }
            }
        }
    }
    FormalCharacter {
        base,
        depth,
        coeffs,
    }
}

/// The character of the Verma module with highest weight lambda.
pub fn verma_character(
    rs: &RootSystem,
    lambda: &Weight,
    depth: u32,
) -> FormalCharacter {
    dressed_character(rs, lambda.clone(), depth)
}

/// The character of the even Verma module with highest weight mu: the
/// Kostant series without the odd factor.
pub fn g0_verma_character(
    rs: &RootSystem,
    mu: &Weight,
    depth: u32,
) -> FormalCharacter {
    let rank = rs.simple.len();
    let mut coeffs: HashMap<Vec<u32>, i64> = HashMap::new();
    coeffs.insert(vec![0; rank], 1);
    let points = cone_points(rank, depth);
    for alpha in &rs.even_pos {
        let shift = root_coords(rs, alpha);
        for nu in &points {
            if let Some(prev) = sub_checked(nu, &shift) {
                let carry = coeffs.get(&prev).copied().unwrap_or(0);
                if carry != 0 {
                    *coeffs.entry(nu.clone()).or_default() += carry;
                }
            }
        }
    }
    FormalCharacter {
        base: mu.clone(),
        depth,
        coeffs,
    }
}

/// The alternating character formula for a typical highest weight: the
/// D-factor times the signed orbit sum of e^{w.lambda}. Orbit terms that do
/// not land in the lambda-based cone are dropped.
pub fn typical_character(
    rs: &RootSystem,
    group: &WeylGroup,
    lambda: &Weight,
    depth: u32,
) -> Result<FormalCharacter> {
    if !is_typical(rs, lambda) {
        return Err(Error::Domain(format!(
            "{} is atypical, the alternating formula does not apply",
            lambda
        )));
    }
    let dressed = dressed_character(rs, lambda.clone(), depth);
    let mut coeffs: HashMap<Vec<u32>, i64> = HashMap::new();
    for w in group.iter() {
        let moved = w.dot(lambda, &rs.rho);
        let Some(offset) = solve_naturals(&rs.simple, &(lambda - &moved)) else {
            continue;
        };
        let offset: Option<Vec<u32>> =
            offset.iter().map(|c| c.to_u32()).collect();
        let Some(offset) = offset else { continue };
        if offset.iter().map(|x| *x as u64).sum::<u64>() > depth as u64 {
            continue;
        }
        let sign = w.sign as i64;
        for (nu, c) in &dressed.coeffs {
            if let Some(moved_nu) = add_shifted(nu, &offset, depth) {
                *coeffs.entry(moved_nu).or_default() += sign * c;
            }
        }
    }
    coeffs.retain(|_, c| *c != 0);
    Ok(FormalCharacter {
        base: lambda.clone(),
        depth,
        coeffs,
    })
}

/// The stored multiplicity of mu, zero off the support, an error past the
/// truncation depth.
pub fn weight_multiplicity(
    rs: &RootSystem,
    ch: &FormalCharacter,
    mu: &Weight,
) -> Result<i64> {
    let Some(nu) = solve_naturals(&rs.simple, &(ch.base() - mu)) else {
        return Ok(0);
    };
    let height: u64 = nu
        .iter()
        .map(|c| c.to_u64().unwrap_or(u64::MAX))
        .sum();
    if height > ch.depth() as u64 {
        return Err(Error::Domain(format!(
            "depth {} is insufficient to read the multiplicity at {}",
            ch.depth(),
            mu
        )));
    }
    let nu: Vec<u32> = nu.iter().map(|c| c.to_u32().unwrap()).collect();
    Ok(ch.coefficient(&nu))
}
