//! Homogeneous polynomials on the plane and bihomogeneous polynomials on the
//! quadric, with coordinates over fixed monomial bases.
//!
//! Plane polynomials live in `Q[x0, x1, x2]`, quadric ones in
//! `Q[s0, s1; t0, t1]`. Monomials are ordered graded-lexicographically with
//! `x0 > x1 > x2` (resp. `s0 > s1 > t0 > t1`); the position of a monomial in
//! this order is its coordinate index.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{zero_vec, Scalar};

/// Exponent vector. Plane monomials use the first three slots; quadric
/// monomials use `[s0, s1, t0, t1]`.
pub type Exponents = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grading {
    /// Degree `d` in `x0, x1, x2`.
    Plane(i64),
    /// Bidegree `(a, b)` in `(s0, s1) x (t0, t1)`.
    Quadric(i64, i64),
}

impl Grading {
    pub fn basis_size(self) -> usize {
        match self {
            Grading::Plane(d) if d >= 0 => ((d + 1) * (d + 2) / 2) as usize,
            Grading::Quadric(a, b) if a >= 0 && b >= 0 => ((a + 1) * (b + 1)) as usize,
            _ => 0,
        }
    }

    fn same_family(self, other: Grading) -> bool {
        matches!(
            (self, other),
            (Grading::Plane(_), Grading::Plane(_)) | (Grading::Quadric(..), Grading::Quadric(..))
        )
    }

    fn combine(self, other: Grading) -> Grading {
        match (self, other) {
            (Grading::Plane(a), Grading::Plane(b)) => Grading::Plane(a + b),
            (Grading::Quadric(a, b), Grading::Quadric(c, d)) => Grading::Quadric(a + c, b + d),
            _ => unreachable!("gradings checked by caller"),
        }
    }

    fn of_exponents(self, e: &Exponents) -> Grading {
        match self {
            Grading::Plane(_) => Grading::Plane((e[0] + e[1] + e[2]) as i64),
            Grading::Quadric(..) => Grading::Quadric((e[0] + e[1]) as i64, (e[2] + e[3]) as i64),
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grading::Plane(d) => write!(f, "degree {d}"),
            Grading::Quadric(a, b) => write!(f, "bidegree ({a},{b})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("polynomial is not homogeneous: found {first} and {second}")]
    NonHomogeneous { first: Grading, second: Grading },
    #[error("grading mismatch: {left} vs {right}")]
    GradingMismatch { left: Grading, right: Grading },
}

/// Ordered monomial basis of a graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub grading: Grading,
    pub monomials: Vec<Exponents>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

pub fn basis(grading: Grading) -> MonomialBasis {
    let mut monomials = Vec::with_capacity(grading.basis_size());
    match grading {
        Grading::Plane(d) if d >= 0 => {
            let d = d as u32;
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    monomials.push([a, b, d - a - b, 0]);
                }
            }
        }
        Grading::Quadric(a, b) if a >= 0 && b >= 0 => {
            let (a, b) = (a as u32, b as u32);
            for s0 in (0..=a).rev() {
                for t0 in (0..=b).rev() {
                    monomials.push([s0, a - s0, t0, b - t0]);
                }
            }
        }
        _ => {}
    }
    MonomialBasis { grading, monomials }
}

/// Position of a monomial in `basis(grading)`.
pub fn monomial_index(grading: Grading, e: &Exponents) -> usize {
    match grading {
        Grading::Plane(d) => {
            let da = d as usize - e[0] as usize;
            da * (da + 1) / 2 + e[2] as usize
        }
        Grading::Quadric(_, b) => {
            let b = b as usize;
            (e[1] as usize) * (b + 1) + e[3] as usize
        }
    }
}

/// A homogeneous (or bihomogeneous) polynomial with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    grading: Grading,
    terms: BTreeMap<Exponents, Scalar>,
}

impl GradedPoly {
    pub fn zero(grading: Grading) -> Self {
        GradedPoly { grading, terms: BTreeMap::new() }
    }

    /// The constant polynomial `c` on the plane.
    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Grading::Plane(0), [0; 4], c)
    }

    /// The coordinate `x_i` on the plane.
    pub fn x(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Self::monomial(Grading::Plane(1), e, Scalar::one())
    }

    /// The linear form `c0*x0 + c1*x1 + c2*x2`.
    pub fn linear(c: &[Scalar; 3]) -> Self {
        let mut p = Self::zero(Grading::Plane(1));
        for (i, ci) in c.iter().enumerate() {
            let mut e = [0; 4];
            e[i] = 1;
            p.add_term(e, ci.clone());
        }
        p
    }

    /// A single term; `exponents` must match `grading`.
    pub fn monomial(grading: Grading, exponents: Exponents, c: Scalar) -> Self {
        assert_eq!(grading.of_exponents(&exponents), grading, "monomial does not match grading");
        let mut p = Self::zero(grading);
        p.add_term(exponents, c);
        p
    }

    fn add_term(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Plane degree; panics on quadric polynomials.
    pub fn degree(&self) -> i64 {
        match self.grading {
            Grading::Plane(d) => d,
            Grading::Quadric(..) => panic!("degree() called on a bihomogeneous polynomial"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coord_vector(&self) -> Vec<Scalar> {
        let mut v = zero_vec(self.grading.basis_size());
        for (e, c) in &self.terms {
            v[monomial_index(self.grading, e)] = c.clone();
        }
        v
    }

    pub fn from_coords(grading: Grading, coords: &[Scalar]) -> Self {
        let b = basis(grading);
        assert_eq!(coords.len(), b.len(), "coordinate vector has wrong length");
        let terms = b
            .monomials
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c.clone()))
            .collect();
        GradedPoly { grading, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.grading);
        }
        GradedPoly {
            grading: self.grading,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        if self.grading != other.grading {
            return Err(PolyError::GradingMismatch { left: self.grading, right: other.grading });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly, PolyError> {
        if !self.grading.same_family(other.grading) {
            return Err(PolyError::GradingMismatch { left: self.grading, right: other.grading });
        }
        let mut out = Self::zero(self.grading.combine(other.grading));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Evaluates at a point given by 3 (plane) or 4 (quadric) coordinates.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("adding polynomials of different gradings")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            grading: self.grading,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("multiplying plane and quadric polynomials")
    }
}

/// Determinant of the symmetric matrix `S` of a plane quadratic form, with
/// `S_ii = coef(x_i^2)` and `S_ij = coef(x_i x_j) / 2`.
pub fn quadratic_form_det(p: &GradedPoly) -> Option<Scalar> {
    if p.grading != Grading::Plane(2) {
        return None;
    }
    let half = Scalar::new(1.into(), 2.into());
    let s = |i: usize, j: usize| -> Scalar {
        let mut e = [0u32; 4];
        e[i] += 1;
        e[j] += 1;
        let c = p.coefficient(&e);
        if i == j {
            c
        } else {
            c * &half
        }
    };
    Some(
        s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(1, 2)) - s(0, 1) * (s(0, 1) * s(2, 2) - s(1, 2) * s(0, 2))
            + s(0, 2) * (s(0, 1) * s(1, 2) - s(1, 1) * s(0, 2)),
    )
}

const PLANE_VARS: [&str; 3] = ["x0", "x1", "x2"];
const QUADRIC_VARS: [&str; 4] = ["s0", "s1", "t0", "t1"];

fn write_monomial(f: &mut fmt::Formatter<'_>, grading: Grading, e: &Exponents) -> fmt::Result {
    let names: &[&str] = match grading {
        Grading::Plane(_) => &PLANE_VARS,
        Grading::Quadric(..) => &QUADRIC_VARS,
    };
    let mut first = true;
    for (name, &k) in names.iter().zip(e.iter()) {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{name}")?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // BTreeMap order is ascending lex; basis order is the reverse.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
            } else if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, self.grading, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Plane,
    Quadric,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn nat(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| PolyError::Parse { position: start, message: "number too large".into() })
    }

    fn rational(&mut self) -> Result<Scalar, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num: num_bigint::BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| PolyError::Parse { position: start, message: "expected a number".into() })?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.nat()?;
            if den == 0 {
                return Err(PolyError::Parse { position: den_pos, message: "zero denominator".into() });
            }
            Ok(Scalar::new(num, den.into()))
        } else {
            Ok(Scalar::from_integer(num))
        }
    }

    /// Parses `var ["^" nat]`, returning the variable family and slot.
    fn factor(&mut self) -> Result<(Family, usize, u32), PolyError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.src.get(self.pos..self.pos + 2).ok_or_else(|| self.err("expected a variable"))?;
        let (family, slot) = match name {
            b"x0" => (Family::Plane, 0),
            b"x1" => (Family::Plane, 1),
            b"x2" => (Family::Plane, 2),
            b"s0" => (Family::Quadric, 0),
            b"s1" => (Family::Quadric, 1),
            b"t0" => (Family::Quadric, 2),
            b"t1" => (Family::Quadric, 3),
            _ => return Err(self.err("expected one of x0 x1 x2 s0 s1 t0 t1")),
        };
        self.pos += 2;
        if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
            return Err(PolyError::Parse { position: start, message: "unknown variable".into() });
        }
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.nat()?;
            power = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
        }
        Ok((family, slot, power))
    }

    /// Parses one term, returning its family (if it has variables), exponents
    /// and coefficient.
    fn term(&mut self) -> Result<(Option<Family>, Exponents, Scalar), PolyError> {
        let mut coef = Scalar::one();
        let mut exps = [0u32; 4];
        let mut family = None;
        let mut need_factor = true;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coef = self.rational()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                need_factor = false;
            }
        }
        if need_factor {
            loop {
                let at = self.pos;
                let (fam, slot, k) = self.factor()?;
                if family.is_some_and(|f| f != fam) {
                    return Err(PolyError::Parse {
                        position: at,
                        message: "plane and quadric variables cannot be mixed".into(),
                    });
                }
                family = Some(fam);
                exps[slot] += k;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok((family, exps, coef))
    }

    fn poly(&mut self, forced: Option<Grading>) -> Result<GradedPoly, PolyError> {
        let mut terms: Vec<(usize, Option<Family>, Exponents, Scalar)> = Vec::new();
        let mut sign = Scalar::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            let (fam, e, c) = self.term()?;
            terms.push((at, fam, e, sign * c));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Scalar::one();
                }
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
        }

        let mut family = forced.map(|g| match g {
            Grading::Plane(_) => Family::Plane,
            Grading::Quadric(..) => Family::Quadric,
        });
        for (at, fam, _, _) in &terms {
            if let Some(f) = fam {
                if family.is_some_and(|g| g != *f) {
                    return Err(PolyError::Parse {
                        position: *at,
                        message: "plane and quadric variables cannot be mixed".into(),
                    });
                }
                family = Some(*f);
            }
        }
        let probe = match family.unwrap_or(Family::Plane) {
            Family::Plane => Grading::Plane(0),
            Family::Quadric => Grading::Quadric(0, 0),
        };

        // Grading comes from the syntactic monomials, zero coefficients included.
        let mut grading = forced;
        let mut inferred: Option<Grading> = None;
        for (_, _, e, _) in &terms {
            let g = probe.of_exponents(e);
            match inferred {
                None => inferred = Some(g),
                Some(first) if first != g => {
                    return Err(PolyError::NonHomogeneous { first, second: g });
                }
                _ => {}
            }
        }
        let inferred = inferred.expect("at least one term");
        let all_zero = terms.iter().all(|t| t.3.is_zero());
        match grading {
            Some(g) if g != inferred && !all_zero => {
                return Err(PolyError::NonHomogeneous { first: g, second: inferred });
            }
            None => grading = Some(inferred),
            _ => {}
        }
        let mut p = GradedPoly::zero(grading.expect("set above"));
        for (_, _, e, c) in terms {
            if !c.is_zero() {
                p.add_term(e, c);
            }
        }
        Ok(p)
    }
}

/// Parses a polynomial literal, inferring its grading from the monomials.
///
/// A literal with no variables (such as `"0"` or `"3/2"`) is a plane
/// constant of degree 0.
pub fn parse(text: &str) -> Result<GradedPoly, PolyError> {
    parse_inner(text, None)
}

/// Parses a literal that must have the given grading. The literal `"0"` (or
/// any expression whose terms cancel) is accepted for every grading.
pub fn parse_as(text: &str, grading: Grading) -> Result<GradedPoly, PolyError> {
    parse_inner(text, Some(grading))
}

fn parse_inner(text: &str, forced: Option<Grading>) -> Result<GradedPoly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return Err(p.err("empty polynomial"));
    }
    let poly = p.poly(forced)?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

impl std::str::FromStr for GradedPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int, span_dim};
    use proptest::prelude::*;

    fn x(i: usize) -> GradedPoly {
        GradedPoly::x(i)
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(Grading::Plane(2)).len(), 6);
        assert_eq!(basis(Grading::Plane(0)).len(), 1);
        assert_eq!(basis(Grading::Plane(-1)).len(), 0);
        assert_eq!(basis(Grading::Quadric(1, 3)).len(), 8);
        assert_eq!(basis(Grading::Quadric(-1, 3)).len(), 0);
    }

    #[test]
    fn basis_order_is_graded_lex() {
        let b = basis(Grading::Plane(2));
        let shown: Vec<String> = b
            .monomials
            .iter()
            .map(|e| GradedPoly::monomial(Grading::Plane(2), *e, int(1)).to_string())
            .collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn index_matches_basis_position() {
        for g in [Grading::Plane(0), Grading::Plane(3), Grading::Plane(7), Grading::Quadric(2, 3)] {
            for (i, e) in basis(g).monomials.iter().enumerate() {
                assert_eq!(monomial_index(g, e), i);
            }
        }
    }

    #[test]
    fn basis_generating_function() {
        // (1 - z)^-3 = sum C(d+2, 2) z^d
        for d in 0..=12 {
            let expected = (d + 1) * (d + 2) / 2;
            assert_eq!(basis(Grading::Plane(d)).len() as i64, expected);
        }
    }

    #[test]
    fn products() {
        let p = &x(0) * &x(1);
        assert_eq!(p.grading(), Grading::Plane(2));
        assert_eq!(p.to_string(), "x0*x1");
        assert!((&x(0) * &GradedPoly::zero(Grading::Plane(3))).is_zero());
        let s = &x(0) + &x(1);
        assert_eq!((&s * &s).to_string(), "x0^2 + 2*x0*x1 + x1^2");
    }

    #[test]
    fn mixed_families_rejected() {
        let q = parse("s0*t1").unwrap();
        assert!(matches!(x(0).checked_mul(&q), Err(PolyError::GradingMismatch { .. })));
    }

    #[test]
    fn coordinate_vectors() {
        assert_eq!(GradedPoly::zero(Grading::Plane(2)).coord_vector(), zero_vec(6));
        let v = (&x(2) * &x(2)).coord_vector();
        assert_eq!(v[5], int(1));
        assert!(v[..5].iter().all(Zero::is_zero));
        let quads: Vec<Vec<Scalar>> = ["x0^2", "x1^2", "x2^2", "x0*x1", "x0*x2", "x1*x2"]
            .iter()
            .map(|s| parse(s).unwrap().coord_vector())
            .collect();
        assert_eq!(span_dim(&quads, 6), 6);
    }

    #[test]
    fn parse_examples() {
        let p = parse("x0^2 + x1*x2").unwrap();
        assert_eq!(p.grading(), Grading::Plane(2));
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            parse("x0 + x1^2"),
            Err(PolyError::NonHomogeneous { first: Grading::Plane(1), second: Grading::Plane(2) })
        );
        let r = parse("2/3*x0*x1 - x2^2").unwrap();
        assert_eq!(r.coefficient(&[1, 1, 0, 0]), frac(2, 3));
        assert_eq!(r.coefficient(&[0, 0, 2, 0]), int(-1));
    }

    #[test]
    fn parse_quadric_and_constants() {
        let p = parse("s0*t1^3 - 2*s1*t0^3").unwrap();
        assert_eq!(p.grading(), Grading::Quadric(1, 3));
        assert!(matches!(parse("s0 + t0"), Err(PolyError::NonHomogeneous { .. })));
        assert_eq!(parse("-3/4").unwrap(), GradedPoly::constant(frac(-3, 4)));
        assert_eq!(parse_as("0", Grading::Plane(2)).unwrap(), GradedPoly::zero(Grading::Plane(2)));
        assert!(parse_as("x0", Grading::Plane(2)).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse("x0 + y1"),
            Err(PolyError::Parse { position: 5, message: "expected one of x0 x1 x2 s0 s1 t0 t1".into() })
        );
        assert!(matches!(parse("x0*s0"), Err(PolyError::Parse { position: 3, .. })));
        assert!(matches!(parse(""), Err(PolyError::Parse { .. })));
        assert!(matches!(parse("x0 +"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse("1/0*x0"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse("x01"), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn quadratic_form_determinants() {
        assert_eq!(quadratic_form_det(&parse("x0^2 + x1^2 + x2^2").unwrap()), Some(int(1)));
        assert_eq!(quadratic_form_det(&parse("x0*x1").unwrap()), Some(int(0)));
        assert_eq!(quadratic_form_det(&parse("x0*x1 - x2^2").unwrap()), Some(frac(1, 4)));
        assert_eq!(quadratic_form_det(&parse("x0").unwrap()), None);
    }

    #[test]
    fn eval_at_point() {
        let p = parse("x0^2 + x1*x2").unwrap();
        assert_eq!(p.eval(&[int(1), int(2), int(3)]), int(7));
    }

    fn arb_plane(d: i64) -> impl Strategy<Value = GradedPoly> {
        let n = Grading::Plane(d).basis_size();
        proptest::collection::vec((0..n, -5i64..=5), 0..5).prop_map(move |ts| {
            let mut v = zero_vec(n);
            for (i, c) in ts {
                v[i] += int(c);
            }
            GradedPoly::from_coords(Grading::Plane(d), &v)
        })
    }

    fn arb_quadric(a: i64, b: i64) -> impl Strategy<Value = GradedPoly> {
        let n = Grading::Quadric(a, b).basis_size();
        proptest::collection::vec((0..n, -5i64..=5, 1i64..=4), 0..5).prop_map(move |ts| {
            let mut v = zero_vec(n);
            for (i, c, d) in ts {
                v[i] += frac(c, d);
            }
            GradedPoly::from_coords(Grading::Quadric(a, b), &v)
        })
    }

    proptest! {
        #[test]
        fn mul_commutes(p in arb_plane(2), q in arb_plane(3)) {
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn mul_associates(p in arb_plane(1), q in arb_plane(2), r in arb_plane(1)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn mul_distributes(p in arb_plane(2), q in arb_plane(1), r in arb_plane(1)) {
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn coords_round_trip(p in arb_quadric(2, 3)) {
            prop_assert_eq!(GradedPoly::from_coords(p.grading(), &p.coord_vector()), p);
        }

        #[test]
        fn print_parse_round_trip(p in arb_plane(3), q in arb_quadric(1, 2)) {
            prop_assert_eq!(parse_as(&p.to_string(), p.grading()).unwrap(), p.clone());
            prop_assert_eq!(parse_as(&q.to_string(), q.grading()).unwrap(), q.clone());
            if !p.is_zero() {
                prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
            }
        }
    }
}
