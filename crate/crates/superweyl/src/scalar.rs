//! Exact scalars: arbitrary-precision rationals, extended by rational
//! functions in a single formal parameter `a` (the α of D(2,1,α)).
//!
//! A [`Scalar`] is canonical by construction, so derived equality and hashing
//! are semantic equality. Rational functions are stored as reduced fractions
//! of integer polynomials with joint content 1 and a positive leading
//! denominator coefficient; a fraction of constants demotes to the rational
//! variant automatically.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::{Error, Result};

// ---- integer polynomials, ascending coefficients, no trailing zeros ----

type Poly = Vec<BigInt>;

fn poly_trim(p: &mut Poly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_from(coeffs: Vec<BigInt>) -> Poly {
    let mut p = coeffs;
    poly_trim(&mut p);
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    poly_from(out)
}

fn poly_neg(a: &Poly) -> Poly {
    a.iter().map(|c| -c).collect()
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    poly_add(a, &poly_neg(b))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_from(out)
}

fn poly_scale(a: &Poly, k: &BigInt) -> Poly {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|c| c * k).collect()
}

/// gcd of the coefficients, always nonnegative; zero for the zero polynomial.
fn poly_content(a: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    g
}

fn poly_divide_content(a: &Poly, c: &BigInt) -> Poly {
    a.iter().map(|x| x / c).collect()
}

fn poly_primitive(a: &Poly) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = poly_content(a);
    poly_divide_content(a, &c)
}

/// Remainder of lc(b)^(deg a - deg b + 1) * a divided by b.
fn poly_pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty(), "pseudo remainder by zero polynomial");
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        r = poly_scale(&r, &lb);
        let mut shift = vec![BigInt::zero(); dr - db];
        shift.push(lead);
        r = poly_sub(&r, &poly_mul(b, &shift));
        poly_trim(&mut r);
        if r.len() > dr {
            unreachable!("pseudo remainder failed to reduce degree");
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = poly_primitive(a);
    let mut y = poly_primitive(b);
    while !y.is_empty() {
        let r = poly_primitive(&poly_pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    if x.last().map_or(false, |c| c.is_negative()) {
        x = poly_neg(&x);
    }
    x
}

/// Exact long division; panics if the division is not exact over the integers.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    assert!(!b.is_empty(), "exact division by zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while r.len() > db {
        let dr = r.len() - 1;
        let (quot, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        q[dr - db] = quot.clone();
        let mut shift = vec![BigInt::zero(); dr - db];
        shift.push(quot);
        r = poly_sub(&r, &poly_mul(b, &shift));
        poly_trim(&mut r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    poly_from(q)
}

fn poly_str(p: &Poly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = mag.is_one();
        match i {
            0 => out.push_str(&mag.to_string()),
            1 => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push('a');
            }
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&format!("a^{}", i));
            }
        }
    }
    out
}

// ---- rational functions ----

/// Reduced fraction of integer polynomials in the formal parameter.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn num_coeffs(&self) -> &[BigInt] {
        &self.num
    }
    pub fn den_coeffs(&self) -> &[BigInt] {
        &self.den
    }
}

/// An exact scalar: a rational number or a rational function in `a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fun(RatFun),
}

/// Canonicalize a raw fraction of integer polynomials into a `Scalar`.
fn make(num: Poly, den: Poly) -> Scalar {
    let num = poly_from(num);
    let mut den = poly_from(den);
    assert!(!den.is_empty(), "scalar with zero denominator");
    if num.is_empty() {
        return Scalar::Rat(BigRational::zero());
    }
    let g = poly_gcd(&num, &den);
    let mut num = poly_div_exact(&num, &g);
    den = poly_div_exact(&den, &g);
    let c = poly_content(&num).gcd(&poly_content(&den));
    num = poly_divide_content(&num, &c);
    den = poly_divide_content(&den, &c);
    if den.last().unwrap().is_negative() {
        num = poly_neg(&num);
        den = poly_neg(&den);
    }
    if num.len() <= 1 && den.len() <= 1 {
        return Scalar::Rat(BigRational::new(num[0].clone(), den[0].clone()));
    }
    Scalar::Fun(RatFun { num, den })
}

fn promote(s: &Scalar) -> (Poly, Poly) {
    match s {
        Scalar::Rat(r) => {
            if r.is_zero() {
                (Vec::new(), vec![BigInt::one()])
            } else {
                (vec![r.numer().clone()], vec![r.denom().clone()])
            }
        }
        Scalar::Fun(f) => (f.num.clone(), f.den.clone()),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    /// The formal parameter itself.
    pub fn alpha() -> Self {
        Scalar::Fun(RatFun {
            num: vec![BigInt::zero(), BigInt::one()],
            den: vec![BigInt::one()],
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    /// True when the value carries no formal parameter.
    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fun(_) => None,
        }
    }

    /// True for rational integers only; a genuine rational function is never
    /// an integer under the generic-parameter reading.
    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_integer())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Sign query; only rational-valued scalars are ordered.
    pub fn is_positive(&self) -> Result<bool> {
        match self {
            Scalar::Rat(r) => Ok(r.is_positive()),
            Scalar::Fun(_) => Err(Error::Domain(
                "sign of a non-rational scalar is undefined".into(),
            )),
        }
    }

    pub fn is_negative(&self) -> Result<bool> {
        match self {
            Scalar::Rat(r) => Ok(r.is_negative()),
            Scalar::Fun(_) => Err(Error::Domain(
                "sign of a non-rational scalar is undefined".into(),
            )),
        }
    }

    /// Canonical representative of the pair {x, -x}: |x| for rationals, the
    /// structurally larger of the two otherwise. Used for orbit normal forms
    /// under coordinate sign flips.
    pub fn abs_canonical(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            Scalar::Fun(_) => {
                let neg = -self;
                if *self >= neg {
                    self.clone()
                } else {
                    neg
                }
            }
        }
    }

    pub fn parse(input: &str) -> Result<Scalar> {
        parse_scalar(input)
    }
}

// Total order: numeric on rationals, rationals before genuine functions,
// functions by coefficient lists. Consistent with equality because values
// are canonical.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Fun(_)) => Ordering::Less,
            (Scalar::Fun(_), Scalar::Rat(_)) => Ordering::Greater,
            (Scalar::Fun(a), Scalar::Fun(b)) => {
                (&a.num, &a.den).cmp(&(&b.num, &b.den))
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Fun(rf) => {
                if rf.den.len() == 1 && rf.den[0].is_one() {
                    write!(f, "{}", poly_str(&rf.num))
                } else {
                    write!(f, "({})/({})", poly_str(&rf.num), poly_str(&rf.den))
                }
            }
        }
    }
}

// ---- arithmetic ----

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fun(f) => Scalar::Fun(RatFun {
                num: poly_neg(&f.num),
                den: f.den.clone(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (n1, d1) = promote(self);
                let (n2, d2) = promote(rhs);
                make(
                    poly_add(&poly_mul(&n1, &d2), &poly_mul(&n2, &d1)),
                    poly_mul(&d1, &d2),
                )
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Scalar::zero();
                }
                let (n1, d1) = promote(self);
                let (n2, d2) = promote(rhs);
                make(poly_mul(&n1, &n2), poly_mul(&d1, &d2))
            }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a / b),
            _ => {
                let (n1, d1) = promote(self);
                let (n2, d2) = promote(rhs);
                make(poly_mul(&n1, &d2), poly_mul(&d1, &n2))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

// ---- parsing ----

fn parse_big_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational '{}'", s));
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = d.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{}'", s)));
        }
        Ok(BigRational::new(numer, denom))
    } else {
        let numer: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(numer))
    }
}

/// One term of an `a`-polynomial: optional rational coefficient, optional
/// power of `a`. Returns (coefficient, power).
fn parse_term(term: &str) -> Result<(BigRational, usize)> {
    let bad = || Error::Parse(format!("bad term '{}'", term));
    if term.is_empty() {
        return Err(bad());
    }
    let (coeff_part, var_part) = match term.find('a') {
        Some(pos) => (&term[..pos], &term[pos..]),
        None => (term, ""),
    };
    let power = if var_part.is_empty() {
        0
    } else if var_part == "a" {
        1
    } else if let Some(exp) = var_part.strip_prefix("a^") {
        exp.parse::<usize>().map_err(|_| bad())?
    } else {
        return Err(bad());
    };
    let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
    let coeff = if coeff_part.is_empty() || coeff_part == "+" {
        BigRational::one()
    } else if coeff_part == "-" {
        -BigRational::one()
    } else {
        parse_big_rational(coeff_part)?
    };
    Ok((coeff, power))
}

/// Polynomial in `a` with rational coefficients, e.g. "1+2a", "3/2a-1".
fn parse_poly(s: &str) -> Result<Vec<BigRational>> {
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut term_start = 0;
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/'
        {
            terms.push(&s[term_start..i]);
            term_start = i;
        }
    }
    terms.push(&s[term_start..]);
    for t in terms {
        let t = t.strip_prefix('+').unwrap_or(t);
        let (c, p) = parse_term(t)?;
        if coeffs.len() <= p {
            coeffs.resize(p + 1, BigRational::zero());
        }
        coeffs[p] += c;
    }
    Ok(coeffs)
}

fn poly_of_rationals(coeffs: &[BigRational]) -> Scalar {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let num: Poly = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    make(num, vec![lcm])
}

fn parse_scalar(input: &str) -> Result<Scalar> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    // Fraction of parenthesized polynomials, "(num)/(den)".
    if s.starts_with('(') && s.ends_with(')') {
        if let Some(mid) = s.find(")/(") {
            let num = &s[1..mid];
            let den = &s[mid + 3..s.len() - 1];
            let n = poly_of_rationals(&parse_poly(num)?);
            let d = poly_of_rationals(&parse_poly(den)?);
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{}'", input)));
            }
            return Ok(&n / &d);
        }
        return Err(Error::Parse(format!("unbalanced parentheses in '{}'", input)));
    }
    Ok(poly_of_rationals(&parse_poly(&s)?))
}
