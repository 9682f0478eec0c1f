//! The even Weyl group as exact coordinate matrices with a tracked sign
//! character.
//!
//! Elements act on weights through `apply`; the group is generated by
//! reflections in the even simple roots and closed off by breadth-first
//! multiplication. For G(3) every matrix (the identity included) is kept in
//! a normal form compatible with eps1+eps2+eps3 = 0: the eps3 column is
//! minus the sum of the eps1 and eps2 columns and the eps3 row is zero,
//! which is closed under products and maps canonical representatives to
//! canonical representatives.

use std::collections::{HashSet, VecDeque};

use crate::rootdata::{det, Family, RootSystem, Weight};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    /// row-major: (w v)_i = sum_j matrix[i][j] v_j
    pub matrix: Vec<Vec<Scalar>>,
    /// the sign character, +1 or -1
    pub sign: i8,
}

impl WeylElement {
    pub fn apply(&self, v: &Weight) -> Weight {
        let dim = v.dim();
        let n = v.algebra.n;
        let mut out: Vec<Scalar> = Vec::with_capacity(dim);
        for row in &self.matrix {
            let mut acc = Scalar::zero();
            for (j, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let c = v.coord(j);
                if c.is_zero() {
                    continue;
                }
                if entry.is_one() {
                    acc = &acc + c;
                } else {
                    acc = &acc + &(entry * c);
                }
            }
            out.push(acc);
        }
        let eps = out.split_off(n);
        Weight::new(v.algebra.clone(), out, eps)
    }

    /// Group product, self after other.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let dim = self.matrix.len();
        let mut matrix = vec![vec![Scalar::zero(); dim]; dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = &self.matrix[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = &other.matrix[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    matrix[i][j] = &matrix[i][j] + &(a * b);
                }
            }
        }
        WeylElement {
            matrix,
            sign: self.sign * other.sign,
        }
    }

    /// Shifted action w.v = w(v + shift) - shift.
    pub fn dot(&self, v: &Weight, shift: &Weight) -> Weight {
        &self.apply(&(v + shift)) - shift
    }

    /// Basis images in root-string form, for reports.
    pub fn describe(&self, rs: &RootSystem) -> Vec<String> {
        let names = basis_columns(rs);
        names
            .iter()
            .map(|(name, w)| format!("{}->{}", name, self.apply(w).root_string()))
            .collect()
    }
}

fn basis_columns(rs: &RootSystem) -> Vec<(String, Weight)> {
    let mut out = Vec::new();
    let zero = Weight::zero(&rs.id);
    for i in 0..rs.id.n {
        out.push((format!("d{}", i + 1), zero.with_coord(i, Scalar::one())));
    }
    let eps_named = if rs.id.family == Family::G3 { 2 } else { rs.id.m };
    for j in 0..eps_named {
        out.push((
            format!("e{}", j + 1),
            zero.with_coord(rs.id.n + j, Scalar::one()),
        ));
    }
    out
}

fn effective_dim(rs: &RootSystem) -> usize {
    if rs.id.family == Family::G3 {
        3
    } else {
        rs.id.dim()
    }
}

fn identity_element(rs: &RootSystem) -> WeylElement {
    let dim = rs.id.dim();
    let eff = effective_dim(rs);
    let mut matrix = vec![vec![Scalar::zero(); dim]; dim];
    for k in 0..eff {
        matrix[k][k] = Scalar::one();
    }
    if rs.id.family == Family::G3 {
        matrix[1][3] = Scalar::from_int(-1);
        matrix[2][3] = Scalar::from_int(-1);
    }
    WeylElement { matrix, sign: 1 }
}

/// Reflection in a non-isotropic root.
pub fn reflection(rs: &RootSystem, alpha: &Weight) -> Result<WeylElement> {
    if !rs.is_root(alpha) {
        return Err(Error::Domain(format!(
            "{} is not a root of {}",
            alpha.root_string(),
            rs.id
        )));
    }
    let norm = rs.form(alpha, alpha);
    if norm.is_zero() {
        return Err(Error::Domain(format!(
            "no reflection in the isotropic root {}",
            alpha.root_string()
        )));
    }
    let dim = rs.id.dim();
    let eff = effective_dim(rs);
    let two = Scalar::from_int(2);
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
    let zero = Weight::zero(&rs.id);
    for j in 0..eff {
        let ej = zero.with_coord(j, Scalar::one());
        let coef = &(&two * &rs.form(&ej, alpha)) / &norm;
        let img = &ej - &alpha.scale(&coef);
        cols.push((0..dim).map(|i| img.coord(i).clone()).collect());
    }
    if rs.id.family == Family::G3 {
        let col3: Vec<Scalar> = (0..dim)
            .map(|i| -&(&cols[1][i] + &cols[2][i]))
            .collect();
        cols.push(col3);
    }
    let matrix: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| (0..dim).map(|j| cols[j][i].clone()).collect())
        .collect();
    Ok(WeylElement { matrix, sign: -1 })
}

pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, WeylElement> {
        self.elements.iter()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }
}

/// Generate the even Weyl group by closing the simple reflections.
pub fn weyl_group(rs: &RootSystem) -> WeylGroup {
    let gens: Vec<WeylElement> = rs
        .even_simple
        .iter()
        .map(|a| reflection(rs, a).expect("even simple roots are non-isotropic"))
        .collect();
    let identity = identity_element(rs);
    let mut seen: HashSet<Vec<Vec<Scalar>>> = HashSet::new();
    seen.insert(identity.matrix.clone());
    let mut elements = vec![identity];
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let current = elements[i].clone();
        for g in &gens {
            let next = current.compose(g);
            if seen.insert(next.matrix.clone()) {
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    WeylGroup { elements }
}

// ---- orbit canonical forms ----

/// Canonical orbit representatives under the even Weyl group. Two weights
/// receive the same key exactly when they lie in the same orbit, so keys
/// replace pairwise orbit scans when grouping many weights.
pub struct OrbitKeys<'a> {
    rs: &'a RootSystem,
    /// only G(3) falls back to a minimum over the full group
    group: Option<WeylGroup>,
}

impl<'a> OrbitKeys<'a> {
    pub fn new(rs: &'a RootSystem) -> OrbitKeys<'a> {
        let group = if rs.id.family == Family::G3 {
            Some(weyl_group(rs))
        } else {
            None
        };
        OrbitKeys { rs, group }
    }

    pub fn key(&self, v: &Weight) -> Weight {
        let id = self.rs.id.clone();
        match id.family {
            // permutations within each block
            Family::Gl | Family::Sl => Weight::new(
                id.clone(),
                sorted_desc(v.delta_coords()),
                sorted_desc(v.eps_coords()),
            ),
            // signed permutations within each block
            Family::OspB => Weight::new(
                id.clone(),
                abs_sorted_desc(v.delta_coords()),
                abs_sorted_desc(v.eps_coords()),
            ),
            // signed permutations of the deltas only
            Family::OspC => Weight::new(
                id.clone(),
                abs_sorted_desc(v.delta_coords()),
                v.eps_coords().to_vec(),
            ),
            // sign changes on deltas are free; eps signs flip in pairs
            Family::OspD => {
                let delta = abs_sorted_desc(v.delta_coords());
                let eps = d_type_canonical(v.eps_coords());
                Weight::new(id.clone(), delta, eps)
            }
            // independent sign changes, no permutations
            Family::D21A => Weight::new(
                id.clone(),
                vec![v.delta_coord(0).abs_canonical()],
                v.eps_coords()
                    .iter()
                    .map(Scalar::abs_canonical)
                    .collect(),
            ),
            // delta sign change times signed permutations of the eps block
            Family::F4 => Weight::new(
                id.clone(),
                vec![v.delta_coord(0).abs_canonical()],
                abs_sorted_desc(v.eps_coords()),
            ),
            Family::G3 => self
                .group
                .as_ref()
                .unwrap()
                .iter()
                .map(|w| w.apply(v))
                .min()
                .unwrap(),
        }
    }
}

fn sorted_desc(coords: &[Scalar]) -> Vec<Scalar> {
    let mut v = coords.to_vec();
    v.sort();
    v.reverse();
    v
}

fn abs_sorted_desc(coords: &[Scalar]) -> Vec<Scalar> {
    let mut v: Vec<Scalar> = coords.iter().map(Scalar::abs_canonical).collect();
    v.sort();
    v.reverse();
    v
}

/// Orbit representative under even numbers of sign flips plus permutations:
/// absolute values sorted descending, with the smallest entry negated when
/// the flip count is odd and no coordinate vanishes.
fn d_type_canonical(coords: &[Scalar]) -> Vec<Scalar> {
    let mut flips = 0usize;
    let mut v: Vec<Scalar> = Vec::with_capacity(coords.len());
    for c in coords {
        let a = c.abs_canonical();
        if a != *c {
            flips += 1;
        }
        v.push(a);
    }
    v.sort();
    v.reverse();
    let has_zero = v.iter().any(Scalar::is_zero);
    if !has_zero && flips % 2 == 1 {
        let last = v.last().unwrap().clone();
        *v.last_mut().unwrap() = -&last;
    }
    v
}

/// Determinant of the action on the coordinate space (the effective
/// three-dimensional block for G(3)).
pub fn action_det(rs: &RootSystem, w: &WeylElement) -> Scalar {
    let eff = effective_dim(rs);
    let block: Vec<Vec<Scalar>> = (0..eff)
        .map(|i| (0..eff).map(|j| w.matrix[i][j].clone()).collect())
        .collect();
    det(&block)
}
