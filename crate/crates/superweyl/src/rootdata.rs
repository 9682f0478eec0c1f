//! Algebra identifiers, weights, and the catalog of root systems with their
//! invariant bilinear forms.
//!
//! Coordinates are always ordered delta-block first: a weight is stored as
//! [k1..kn; l1..lm] for mu = sum ki*delta_i + sum lj*eps_j, and the textual
//! form is "k1,..,kn;l1,..,lm". For G(3) the relation eps1+eps2+eps3 = 0 is
//! resolved on construction by eliminating eps3, so weight equality is
//! equality of canonical representatives.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// The supported families. m counts eps coordinates, n counts deltas.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    /// gl(m,n)
    Gl,
    /// sl(m,n), modeled in gl coordinates (enlarged Cartan for m = n)
    Sl,
    /// B(m,n) = osp(2m+1,2n)
    OspB,
    /// D(m,n) = osp(2m,2n), m >= 2
    OspD,
    /// osp(2,2n)
    OspC,
    /// D(2,1,alpha)
    D21A,
    /// F(4)
    F4,
    /// G(3)
    G3,
}

impl Family {
    pub fn is_type_i(self) -> bool {
        matches!(self, Family::Gl | Family::Sl | Family::OspC)
    }

    pub fn is_type_ii(self) -> bool {
        !self.is_type_i()
    }
}

/// The parameter of D(2,1,alpha): generic formal symbol or a rational value.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum AlphaParam {
    Formal,
    Rational(BigRational),
}

impl AlphaParam {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            AlphaParam::Formal => Scalar::alpha(),
            AlphaParam::Rational(r) => Scalar::from_big(r.clone()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct AlgebraId {
    pub family: Family,
    /// number of eps coordinates
    pub m: usize,
    /// number of delta coordinates
    pub n: usize,
    /// present exactly for D(2,1,alpha)
    pub alpha: Option<AlphaParam>,
}

impl AlgebraId {
    pub fn new(
        family: Family,
        m: usize,
        n: usize,
        alpha: Option<AlphaParam>,
    ) -> Result<AlgebraId> {
        let id = AlgebraId { family, m, n, alpha };
        id.validate()?;
        Ok(id)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parse(msg));
        if self.family != Family::D21A && self.alpha.is_some() {
            return bad("only D(2,1,a) carries a parameter".into());
        }
        match self.family {
            Family::Gl | Family::Sl | Family::OspB => {
                if self.m == 0 || self.n == 0 {
                    return bad(format!("{:?} needs positive ranks", self.family));
                }
            }
            Family::OspD => {
                if self.m < 2 || self.n == 0 {
                    return bad("D(m,n) needs m >= 2 and n >= 1".into());
                }
            }
            Family::OspC => {
                if self.m != 1 || self.n == 0 {
                    return bad("osp(2,2n) has one eps coordinate and n >= 1".into());
                }
            }
            Family::D21A => {
                if self.m != 2 || self.n != 1 {
                    return bad("D(2,1,a) has fixed ranks".into());
                }
                match &self.alpha {
                    None => return bad("D(2,1,a) needs its parameter".into()),
                    Some(AlphaParam::Rational(r)) => {
                        if r.is_zero() || *r == -BigRational::one() {
                            return bad("D(2,1,a) is degenerate at a = 0 and a = -1".into());
                        }
                    }
                    Some(AlphaParam::Formal) => {}
                }
            }
            Family::F4 | Family::G3 => {
                if self.m != 3 || self.n != 1 {
                    return bad("exceptional ranks are fixed".into());
                }
            }
        }
        Ok(())
    }

    /// Coordinate dimension, deltas plus epsilons.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn is_type_i(&self) -> bool {
        self.family.is_type_i()
    }

    pub fn parse(input: &str) -> Result<AlgebraId> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad algebra name '{}'", input));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').collect();
        let num = |t: &str| -> Result<usize> {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad rank '{}' in '{}'", t, input)))
        };
        match (name, args.len()) {
            ("F", 1) if args[0] == "4" => AlgebraId::new(Family::F4, 3, 1, None),
            ("G", 1) if args[0] == "3" => AlgebraId::new(Family::G3, 3, 1, None),
            ("B", 2) => AlgebraId::new(Family::OspB, num(args[0])?, num(args[1])?, None),
            ("D", 2) => AlgebraId::new(Family::OspD, num(args[0])?, num(args[1])?, None),
            ("D", 3) => {
                if args[0] != "2" || args[1] != "1" {
                    return Err(bad());
                }
                let alpha = if args[2] == "a" {
                    AlphaParam::Formal
                } else if let Some(v) = args[2].strip_prefix("a=") {
                    match Scalar::parse(v)? {
                        Scalar::Rat(r) => AlphaParam::Rational(r),
                        _ => return Err(Error::Parse(format!("bad parameter value '{}'", v))),
                    }
                } else {
                    return Err(bad());
                };
                AlgebraId::new(Family::D21A, 2, 1, Some(alpha))
            }
            ("gl", 2) => AlgebraId::new(Family::Gl, num(args[0])?, num(args[1])?, None),
            ("sl", 2) => AlgebraId::new(Family::Sl, num(args[0])?, num(args[1])?, None),
            ("osp", 2) => {
                let first = num(args[0])?;
                let second = num(args[1])?;
                if first != 2 || second == 0 || second % 2 != 0 {
                    return Err(bad());
                }
                AlgebraId::new(Family::OspC, 1, second / 2, None)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gl => write!(f, "gl({},{})", self.m, self.n),
            Family::Sl => write!(f, "sl({},{})", self.m, self.n),
            Family::OspB => write!(f, "B({},{})", self.m, self.n),
            Family::OspD => write!(f, "D({},{})", self.m, self.n),
            Family::OspC => write!(f, "osp(2,{})", 2 * self.n),
            Family::F4 => write!(f, "F(4)"),
            Family::G3 => write!(f, "G(3)"),
            Family::D21A => match self.alpha.as_ref().unwrap() {
                AlphaParam::Formal => write!(f, "D(2,1,a)"),
                AlphaParam::Rational(r) => write!(f, "D(2,1,a={})", r),
            },
        }
    }
}

/// A weight in the (delta; eps) coordinate basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Weight {
    pub algebra: AlgebraId,
    delta: Vec<Scalar>,
    eps: Vec<Scalar>,
}

impl Weight {
    pub fn new(algebra: AlgebraId, delta: Vec<Scalar>, eps: Vec<Scalar>) -> Weight {
        assert_eq!(delta.len(), algebra.n, "delta coordinate count");
        assert_eq!(eps.len(), algebra.m, "eps coordinate count");
        let mut w = Weight { algebra, delta, eps };
        w.canonicalize();
        w
    }

    fn canonicalize(&mut self) {
        if self.algebra.family == Family::G3 && !self.eps[2].is_zero() {
            let l3 = std::mem::replace(&mut self.eps[2], Scalar::zero());
            self.eps[0] = &self.eps[0] - &l3;
            self.eps[1] = &self.eps[1] - &l3;
        }
    }

    pub fn zero(algebra: &AlgebraId) -> Weight {
        Weight {
            algebra: algebra.clone(),
            delta: vec![Scalar::zero(); algebra.n],
            eps: vec![Scalar::zero(); algebra.m],
        }
    }

    pub fn delta_coords(&self) -> &[Scalar] {
        &self.delta
    }

    pub fn eps_coords(&self) -> &[Scalar] {
        &self.eps
    }

    /// mu_{delta_{i+1}} (zero-based i).
    pub fn delta_coord(&self, i: usize) -> &Scalar {
        &self.delta[i]
    }

    /// mu_{eps_{j+1}} (zero-based j).
    pub fn eps_coord(&self, j: usize) -> &Scalar {
        &self.eps[j]
    }

    /// Flat coordinate access, deltas then epsilons.
    pub fn coord(&self, k: usize) -> &Scalar {
        if k < self.delta.len() {
            &self.delta[k]
        } else {
            &self.eps[k - self.delta.len()]
        }
    }

    pub fn dim(&self) -> usize {
        self.delta.len() + self.eps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.delta.iter().chain(self.eps.iter()).all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Weight {
        Weight {
            algebra: self.algebra.clone(),
            delta: self.delta.iter().map(|c| c * k).collect(),
            eps: self.eps.iter().map(|c| c * k).collect(),
        }
    }

    pub fn half(&self) -> Weight {
        self.scale(&Scalar::from_frac(1, 2))
    }

    /// Replace one coordinate; canonical form is restored for G(3).
    pub fn with_coord(&self, k: usize, value: Scalar) -> Weight {
        let mut delta = self.delta.clone();
        let mut eps = self.eps.clone();
        if k < delta.len() {
            delta[k] = value;
        } else {
            eps[k - delta.len()] = value;
        }
        Weight::new(self.algebra.clone(), delta, eps)
    }

    /// "k1,..,kn;l1,..,lm" with canonical scalars.
    pub fn coord_string(&self) -> String {
        let side = |v: &[Scalar]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{};{}", side(&self.delta), side(&self.eps))
    }

    /// Short basis-combination form like "d1-e1" or "1/2d1+1/2e1".
    pub fn root_string(&self) -> String {
        let mut out = String::new();
        let mut push = |name: String, c: &Scalar| {
            if c.is_zero() {
                return;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if mag != "1" {
                if mag.contains('+') || mag.contains('-') {
                    out.push_str(&format!("({})", mag));
                } else {
                    out.push_str(&mag);
                }
            }
            out.push_str(&name);
        };
        for (i, c) in self.delta.iter().enumerate() {
            push(format!("d{}", i + 1), c);
        }
        for (j, c) in self.eps.iter().enumerate() {
            push(format!("e{}", j + 1), c);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(algebra: &AlgebraId, input: &str) -> Result<Weight> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "weight '{}' must have one ';' separating delta and eps parts",
                input
            )));
        }
        let side = |text: &str, want: usize, label: &str| -> Result<Vec<Scalar>> {
            let mut items: Vec<&str> = text.split(',').collect();
            if items.len() == want + 1 && items.last() == Some(&"") {
                items.pop();
            }
            if items.len() != want {
                return Err(Error::Parse(format!(
                    "expected {} {} coordinates in '{}'",
                    want, label, input
                )));
            }
            items.iter().map(|t| Scalar::parse(t)).collect()
        };
        let delta = side(parts[0], algebra.n, "delta")?;
        // G(3) input may give either the 3-coordinate form or the canonical
        // 2-coordinate representative.
        let eps = if algebra.family == Family::G3 {
            side(parts[1], 3, "eps").or_else(|_| {
                let mut two = side(parts[1], 2, "eps")?;
                two.push(Scalar::zero());
                Ok(two)
            })?
        } else {
            side(parts[1], algebra.m, "eps")?
        };
        Ok(Weight::new(algebra.clone(), delta, eps))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coord_string())
    }
}

impl std::ops::Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.algebra, rhs.algebra, "weight algebra mismatch");
        Weight {
            algebra: self.algebra.clone(),
            delta: self
                .delta
                .iter()
                .zip(&rhs.delta)
                .map(|(a, b)| a + b)
                .collect(),
            eps: self.eps.iter().zip(&rhs.eps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.algebra, rhs.algebra, "weight algebra mismatch");
        Weight {
            algebra: self.algebra.clone(),
            delta: self
                .delta
                .iter()
                .zip(&rhs.delta)
                .map(|(a, b)| a - b)
                .collect(),
            eps: self.eps.iter().zip(&rhs.eps).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            algebra: self.algebra.clone(),
            delta: self.delta.iter().map(|c| -c).collect(),
            eps: self.eps.iter().map(|c| -c).collect(),
        }
    }
}

// ---- exact linear algebra over Scalar ----

/// Solve sum_j x_j basis_j = target. Returns None when the system is
/// inconsistent or a basis column turns out dependent on earlier ones.
pub(crate) fn solve_in_basis(basis: &[Weight], target: &Weight) -> Option<Vec<Scalar>> {
    let dim = target.dim();
    let k = basis.len();
    if k == 0 {
        return if target.is_zero() { Some(Vec::new()) } else { None };
    }
    let mut mat: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Scalar> =
                basis.iter().map(|b| b.coord(i).clone()).collect();
            row.push(target.coord(i).clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in 0..k {
        let Some(pr) = (next_row..dim).find(|&i| !mat[i][col].is_zero()) else {
            return None;
        };
        mat.swap(next_row, pr);
        let pivot = mat[next_row][col].clone();
        for i in 0..dim {
            if i != next_row && !mat[i][col].is_zero() {
                let factor = &mat[i][col] / &pivot;
                for c in col..=k {
                    let delta = &factor * &mat[next_row][c];
                    mat[i][c] = &mat[i][c] - &delta;
                }
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == dim {
            break;
        }
    }
    if pivots.len() < k {
        return None;
    }
    for i in next_row..dim {
        if !mat[i][k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Scalar::zero(); k];
    for (r, c) in pivots {
        sol[c] = &mat[r][k] / &mat[r][c];
    }
    Some(sol)
}

/// Integer solution over the given basis, any sign.
pub(crate) fn solve_integers(basis: &[Weight], target: &Weight) -> Option<Vec<BigInt>> {
    let sol = solve_in_basis(basis, target)?;
    sol.iter().map(Scalar::as_integer).collect()
}

/// Nonnegative-integer solution over the given basis.
pub(crate) fn solve_naturals(basis: &[Weight], target: &Weight) -> Option<Vec<BigInt>> {
    let ints = solve_integers(basis, target)?;
    if ints.iter().all(|c| !c.is_negative()) {
        Some(ints)
    } else {
        None
    }
}

pub(crate) fn det(matrix: &[Vec<Scalar>]) -> Scalar {
    let n = matrix.len();
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut sign = false;
    let mut result = Scalar::one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Scalar::zero();
        };
        if pr != col {
            m.swap(col, pr);
            sign = !sign;
        }
        let pivot = m[col][col].clone();
        result = &result * &pivot;
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let factor = &m[i][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[i][c] = &m[i][c] - &delta;
                }
            }
        }
    }
    if sign {
        -result
    } else {
        result
    }
}

// ---- root systems ----

pub struct RootSystem {
    pub id: AlgebraId,
    pub even_pos: Vec<Weight>,
    pub odd_pos: Vec<Weight>,
    /// even positive roots alpha with alpha/2 not an odd root
    pub reduced_even: Vec<Weight>,
    /// odd positive roots beta with 2*beta not an even root
    pub reduced_odd: Vec<Weight>,
    pub simple: Vec<Weight>,
    pub even_simple: Vec<Weight>,
    pub rho0: Weight,
    pub rho1: Weight,
    pub rho: Weight,
    /// Gram matrix of the invariant form over the (delta; eps) basis
    pub gram: Vec<Vec<Scalar>>,
    odd_index: HashMap<Weight, usize>,
    root_set: HashSet<Weight>,
}

pub fn build_root_system(id: AlgebraId) -> Result<RootSystem> {
    id.validate()?;
    let n = id.n;
    let m = id.m;
    let dim = id.dim();
    let unit = |k: usize| -> Weight {
        let mut delta = vec![Scalar::zero(); n];
        let mut eps = vec![Scalar::zero(); m];
        if k < n {
            delta[k] = Scalar::one();
        } else {
            eps[k - n] = Scalar::one();
        }
        Weight::new(id.clone(), delta, eps)
    };
    let dlt: Vec<Weight> = (0..n).map(unit).collect();
    let ep: Vec<Weight> = (n..dim).map(unit).collect();
    let mut even: Vec<Weight> = Vec::new();
    let mut odd: Vec<Weight> = Vec::new();
    let mut simple: Vec<Weight> = Vec::new();
    let mut even_simple: Vec<Weight> = Vec::new();
    let mut gram: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); dim]; dim];

    match id.family {
        Family::Gl | Family::Sl => {
            for i in 0..m {
                for j in i + 1..m {
                    even.push(&ep[i] - &ep[j]);
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    even.push(&dlt[i] - &dlt[j]);
                }
            }
            for i in 0..m {
                for j in 0..n {
                    odd.push(&ep[i] - &dlt[j]);
                }
            }
            for i in 0..m - 1 {
                simple.push(&ep[i] - &ep[i + 1]);
            }
            simple.push(&ep[m - 1] - &dlt[0]);
            for j in 0..n - 1 {
                simple.push(&dlt[j] - &dlt[j + 1]);
            }
            for i in 0..m - 1 {
                even_simple.push(&ep[i] - &ep[i + 1]);
            }
            for j in 0..n - 1 {
                even_simple.push(&dlt[j] - &dlt[j + 1]);
            }
            for k in 0..dim {
                gram[k][k] = if k < n { Scalar::from_int(-1) } else { Scalar::one() };
            }
        }
        Family::OspB | Family::OspD => {
            for i in 0..n {
                for j in i + 1..n {
                    even.push(&dlt[i] - &dlt[j]);
                    even.push(&dlt[i] + &dlt[j]);
                }
            }
            for i in 0..n {
                even.push(dlt[i].scale(&Scalar::from_int(2)));
            }
            for i in 0..m {
                for j in i + 1..m {
                    even.push(&ep[i] - &ep[j]);
                    even.push(&ep[i] + &ep[j]);
                }
            }
            if id.family == Family::OspB {
                for i in 0..m {
                    even.push(ep[i].clone());
                }
                for i in 0..n {
                    odd.push(dlt[i].clone());
                }
            }
            for i in 0..n {
                for j in 0..m {
                    odd.push(&dlt[i] + &ep[j]);
                    odd.push(&dlt[i] - &ep[j]);
                }
            }
            for i in 0..n - 1 {
                simple.push(&dlt[i] - &dlt[i + 1]);
            }
            simple.push(&dlt[n - 1] - &ep[0]);
            for j in 0..m - 1 {
                simple.push(&ep[j] - &ep[j + 1]);
            }
            if id.family == Family::OspB {
                simple.push(ep[m - 1].clone());
            } else {
                if m >= 2 {
                    simple.push(&ep[m - 2] + &ep[m - 1]);
                }
            }
            for i in 0..n - 1 {
                even_simple.push(&dlt[i] - &dlt[i + 1]);
            }
            even_simple.push(dlt[n - 1].scale(&Scalar::from_int(2)));
            for j in 0..m - 1 {
                even_simple.push(&ep[j] - &ep[j + 1]);
            }
            if id.family == Family::OspB {
                even_simple.push(ep[m - 1].clone());
            } else {
                even_simple.push(&ep[m - 2] + &ep[m - 1]);
            }
            for k in 0..dim {
                gram[k][k] = if k < n { Scalar::one() } else { Scalar::from_int(-1) };
            }
        }
        Family::OspC => {
            for i in 0..n {
                for j in i + 1..n {
                    even.push(&dlt[i] - &dlt[j]);
                    even.push(&dlt[i] + &dlt[j]);
                }
            }
            for i in 0..n {
                even.push(dlt[i].scale(&Scalar::from_int(2)));
            }
            for i in 0..n {
                odd.push(&ep[0] - &dlt[i]);
                odd.push(&ep[0] + &dlt[i]);
            }
            simple.push(&ep[0] - &dlt[0]);
            for i in 0..n - 1 {
                simple.push(&dlt[i] - &dlt[i + 1]);
            }
            simple.push(dlt[n - 1].scale(&Scalar::from_int(2)));
            for i in 0..n - 1 {
                even_simple.push(&dlt[i] - &dlt[i + 1]);
            }
            even_simple.push(dlt[n - 1].scale(&Scalar::from_int(2)));
            for k in 0..dim {
                gram[k][k] = if k < n { Scalar::one() } else { Scalar::from_int(-1) };
            }
        }
        Family::D21A => {
            let two = Scalar::from_int(2);
            even.push(dlt[0].scale(&two));
            even.push(ep[0].scale(&Scalar::from_int(-2)));
            even.push(ep[1].scale(&Scalar::from_int(-2)));
            odd.push(&(&dlt[0] + &ep[0]) + &ep[1]);
            odd.push(&(&dlt[0] + &ep[0]) - &ep[1]);
            odd.push(&(&dlt[0] - &ep[0]) + &ep[1]);
            odd.push(&(&dlt[0] - &ep[0]) - &ep[1]);
            simple.push(&(&dlt[0] + &ep[0]) + &ep[1]);
            simple.push(ep[0].scale(&Scalar::from_int(-2)));
            simple.push(ep[1].scale(&Scalar::from_int(-2)));
            even_simple = even.clone();
            let alpha = id.alpha.as_ref().unwrap().to_scalar();
            gram[0][0] = &Scalar::one() + &alpha;
            gram[1][1] = Scalar::from_int(-1);
            gram[2][2] = -&alpha;
        }
        Family::F4 => {
            even.push(dlt[0].clone());
            for j in 0..3 {
                even.push(-&ep[j]);
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    even.push(&ep[i] - &ep[j]);
                }
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    even.push(-&(&ep[i] + &ep[j]));
                }
            }
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    for s3 in [1i64, -1] {
                        let v = &(&dlt[0] + &ep[0].scale(&Scalar::from_int(s1)))
                            + &(&ep[1].scale(&Scalar::from_int(s2))
                                + &ep[2].scale(&Scalar::from_int(s3)));
                        odd.push(v.half());
                    }
                }
            }
            simple.push(
                (&(&ep[0] + &ep[1]) + &(&ep[2] + &dlt[0])).half(),
            );
            simple.push(-&ep[0]);
            simple.push(&ep[0] - &ep[1]);
            simple.push(&ep[1] - &ep[2]);
            even_simple.push(dlt[0].clone());
            even_simple.push(-&ep[0]);
            even_simple.push(&ep[0] - &ep[1]);
            even_simple.push(&ep[1] - &ep[2]);
            gram[0][0] = Scalar::from_int(3);
            for k in 1..4 {
                gram[k][k] = Scalar::from_int(-1);
            }
        }
        Family::G3 => {
            even.push(dlt[0].scale(&Scalar::from_int(2)));
            even.push(ep[1].clone());
            even.push(ep[2].clone());
            even.push(-&ep[0]);
            even.push(&ep[2] - &ep[1]);
            even.push(&ep[2] - &ep[0]);
            even.push(&ep[1] - &ep[0]);
            odd.push(dlt[0].clone());
            for j in 0..3 {
                odd.push(&dlt[0] + &ep[j]);
                odd.push(&dlt[0] - &ep[j]);
            }
            simple.push(&dlt[0] + &ep[0]);
            simple.push(ep[1].clone());
            simple.push(&ep[2] - &ep[1]);
            even_simple.push(dlt[0].scale(&Scalar::from_int(2)));
            even_simple.push(ep[1].clone());
            even_simple.push(&ep[2] - &ep[1]);
            gram[0][0] = Scalar::from_int(-2);
            for i in 1..4 {
                for j in 1..4 {
                    gram[i][j] = if i == j {
                        Scalar::from_int(2)
                    } else {
                        Scalar::from_int(-1)
                    };
                }
            }
        }
    }

    let half_sum = |roots: &[Weight]| -> Weight {
        let mut acc = Weight::zero(&id);
        for r in roots {
            acc = &acc + r;
        }
        acc.half()
    };
    let rho0 = half_sum(&even);
    let rho1 = half_sum(&odd);
    let rho = &rho0 - &rho1;

    let even_set: HashSet<Weight> = even.iter().cloned().collect();
    let odd_set: HashSet<Weight> = odd.iter().cloned().collect();
    let reduced_even: Vec<Weight> = even
        .iter()
        .filter(|a| !odd_set.contains(&a.half()))
        .cloned()
        .collect();
    let reduced_odd: Vec<Weight> = odd
        .iter()
        .filter(|b| !even_set.contains(&b.scale(&Scalar::from_int(2))))
        .cloned()
        .collect();

    let mut root_set: HashSet<Weight> = HashSet::new();
    for r in even.iter().chain(odd.iter()) {
        root_set.insert(r.clone());
        root_set.insert(-r);
    }
    let odd_index: HashMap<Weight, usize> = odd
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();

    Ok(RootSystem {
        id,
        even_pos: even,
        odd_pos: odd,
        reduced_even,
        reduced_odd,
        simple,
        even_simple,
        rho0,
        rho1,
        rho,
        gram,
        odd_index,
        root_set,
    })
}

impl RootSystem {
    /// Value of the invariant form; errors on an algebra mismatch.
    pub fn bilinear(&self, mu: &Weight, nu: &Weight) -> Result<Scalar> {
        if mu.algebra != self.id || nu.algebra != self.id {
            return Err(Error::Domain(
                "bilinear form on weights of a different algebra".into(),
            ));
        }
        Ok(self.form(mu, nu))
    }

    /// Same as `bilinear` but for weights already known to match.
    pub(crate) fn form(&self, mu: &Weight, nu: &Weight) -> Scalar {
        debug_assert_eq!(mu.algebra, self.id);
        debug_assert_eq!(nu.algebra, self.id);
        let mut acc = Scalar::zero();
        for i in 0..mu.dim() {
            let a = mu.coord(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..nu.dim() {
                let g = &self.gram[i][j];
                if g.is_zero() {
                    continue;
                }
                let b = nu.coord(j);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(&(a * b) * g);
            }
        }
        acc
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_set.contains(w)
    }

    pub fn odd_index(&self, beta: &Weight) -> Option<usize> {
        self.odd_index.get(beta).copied()
    }

    /// True iff (beta,beta) = 0; beta must be a root.
    pub fn is_isotropic(&self, beta: &Weight) -> Result<bool> {
        if !self.is_root(beta) {
            return Err(Error::Domain(format!(
                "{} is not a root of {}",
                beta.root_string(),
                self.id
            )));
        }
        Ok(self.form(beta, beta).is_zero())
    }

    pub fn all_roots(&self) -> Vec<Weight> {
        let mut out: Vec<Weight> = Vec::new();
        for r in self.even_pos.iter().chain(self.odd_pos.iter()) {
            out.push(r.clone());
        }
        for r in self.even_pos.iter().chain(self.odd_pos.iter()) {
            out.push(-r);
        }
        out
    }

    pub fn type_i(&self) -> bool {
        self.id.is_type_i()
    }

    /// The scalar p with rho1 = p * sum(delta_i), for type II algebras.
    pub fn catalog_p(&self) -> Option<Scalar> {
        match self.id.family {
            Family::OspB => Some(
                &Scalar::from_int(self.id.m as i64) + &Scalar::from_frac(1, 2),
            ),
            Family::OspD => Some(Scalar::from_int(self.id.m as i64)),
            Family::D21A | Family::F4 => Some(Scalar::from_int(2)),
            Family::G3 => Some(Scalar::from_frac(7, 2)),
            _ => None,
        }
    }

    /// Split all roots by sign of a coordinate functional h (plain dot
    /// product with h's coordinates). Errors when h vanishes on some root.
    pub fn partition_positive(&self, h: &Weight) -> Result<(Vec<Weight>, Vec<Weight>)> {
        let pairing = |root: &Weight| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for k in 0..root.dim() {
                acc = &acc + &(h.coord(k) * root.coord(k));
            }
            Ok(acc)
        };
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for root in self.all_roots() {
            let v = pairing(&root)?;
            if v.is_zero() {
                return Err(Error::Domain(format!(
                    "functional is not regular: vanishes on {}",
                    root.root_string()
                )));
            }
            if v.is_positive()? {
                pos.push(root);
            } else {
                neg.push(root);
            }
        }
        Ok((pos, neg))
    }
}

/// Simple roots of a positive system: the indecomposable elements. The input
/// is validated by checking that every element is a nonnegative-integer
/// combination of the result.
pub fn simple_roots(positive: &[Weight]) -> Result<Vec<Weight>> {
    let set: HashSet<&Weight> = positive.iter().collect();
    if positive.iter().any(|a| set.contains(&-a)) {
        return Err(Error::Domain(
            "not a positive system: contains a root and its negative".into(),
        ));
    }
    let mut simple: Vec<Weight> = Vec::new();
    for a in positive {
        let decomposable = positive.iter().any(|b| {
            let rest = a - b;
            !rest.is_zero() && set.contains(&rest)
        });
        if !decomposable {
            simple.push(a.clone());
        }
    }
    for a in positive {
        if solve_naturals(&simple, a).is_none() {
            return Err(Error::Domain(format!(
                "not a positive system: {} is not a natural combination of the indecomposables",
                a.root_string()
            )));
        }
    }
    Ok(simple)
}
