//! Sections of `S^2 T(d)` as symmetric polynomial matrices modulo
//! `S -> S + x v^T + v x^T`.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::exactlin::{frac, QuotientSpace, Scalar, SubQuotient};
use crate::polyring::{basis, Grading, GradedPoly};

use super::{
    cached_space, check_degree, concat_coords, regrade_zero, split_coords, unit, EulerError,
    SpaceKey, TwistedVectorField,
};

/// Upper-triangular positions `(0,0), (0,1), (0,2), (1,1), (1,2), (2,2)`.
const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn slot(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (a, b)).expect("valid index pair")
}

/// A section of `S^2 T(d)`: the upper triangle of a symmetric matrix of
/// degree `d+2` polynomials, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sym2Section {
    twist: i64,
    entries: [GradedPoly; 6],
}

fn space(d: i64) -> Arc<SubQuotient> {
    cached_space(SpaceKey::Sym2(d), || {
        let g = Grading::Plane(d + 2);
        let n = 6 * g.basis_size();
        let mut moves = Vec::new();
        for j in 0..3 {
            for e in basis(Grading::Plane(d + 1)).monomials {
                let m = GradedPoly::monomial(Grading::Plane(d + 1), e, Scalar::one());
                let entries = PAIRS.map(|(a, b)| {
                    let mut s = GradedPoly::zero(g);
                    if b == j {
                        s = &s + &(&GradedPoly::x(a) * &m);
                    }
                    if a == j {
                        s = &s + &(&GradedPoly::x(b) * &m);
                    }
                    s
                });
                moves.push(concat_coords(&entries));
            }
        }
        let everything: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
        SubQuotient::new(QuotientSpace::new(n, &moves), &everything)
    })
}

/// Number of independent Euler moves for `S^2 T(d)`.
pub fn sym2_move_rank(d: i64) -> usize {
    space(d).quotient.sub_dim()
}

impl Sym2Section {
    /// Builds a section from the upper-triangular entries in the order
    /// `00, 01, 02, 11, 12, 22`.
    pub fn new(twist: i64, entries: [GradedPoly; 6]) -> Result<Self, EulerError> {
        for e in &entries {
            check_degree(e, twist + 2)?;
        }
        let entries = entries.map(|e| regrade_zero(&e, twist + 2));
        Ok(Self::from_ambient(twist, &concat_coords(&entries)))
    }

    fn from_ambient(twist: i64, coords: &[Scalar]) -> Self {
        let reduced = space(twist).quotient.reduce(coords);
        let v = split_coords(Grading::Plane(twist + 2), 6, &reduced);
        Sym2Section { twist, entries: std::array::from_fn(|i| v[i].clone()) }
    }

    pub fn zero(twist: i64) -> Self {
        Sym2Section { twist, entries: std::array::from_fn(|_| GradedPoly::zero(Grading::Plane(twist + 2))) }
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[slot(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GradedPoly::is_zero)
    }

    /// Coordinates in `sym2_basis` (for twist 0) or the analogous basis.
    pub fn coords(&self) -> Vec<Scalar> {
        space(self.twist)
            .coords_in_basis(&concat_coords(&self.entries))
            .expect("every symmetric matrix is a section")
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.twist, other.twist, "adding sections of different twists");
        let e: [GradedPoly; 6] = std::array::from_fn(|i| &self.entries[i] + &other.entries[i]);
        Self::from_ambient(self.twist, &concat_coords(&e))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Sym2Section { twist: self.twist, entries: self.entries.clone().map(|p| p.scale(c)) }
    }

    pub fn mul_poly(&self, f: &GradedPoly) -> Self {
        let e = self.entries.clone().map(|p| &p * f);
        Self::from_ambient(self.twist + f.degree(), &concat_coords(&e))
    }
}

impl fmt::Display for Sym2Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..3 {
            write!(f, "{}[", if i > 0 { ", " } else { "" })?;
            for j in 0..3 {
                write!(f, "{}{}", if j > 0 { ", " } else { "" }, self.entry(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The symmetric product `u . v`, i.e. `(P P'^T + P' P^T) / 2`.
pub fn sym_prod(u: &TwistedVectorField, v: &TwistedVectorField) -> Sym2Section {
    let p = u.components();
    let q = v.components();
    let half = frac(1, 2);
    let entries = PAIRS.map(|(a, b)| (&(&p[a] * &q[b]) + &(&p[b] * &q[a])).scale(&half));
    Sym2Section::from_ambient(u.twist() + v.twist(), &concat_coords(&entries))
}

/// Canonical basis of `H^0(S^2 T)`.
pub fn sym2_basis() -> Vec<Sym2Section> {
    space(0)
        .basis_vectors()
        .iter()
        .map(|v| {
            let p = split_coords(Grading::Plane(2), 6, v);
            Sym2Section { twist: 0, entries: std::array::from_fn(|i| p[i].clone()) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulercalc::tfield_basis;
    use crate::exactlin::{int, span_dim};
    use crate::sampling::{random_poly, random_tfield, rng};

    #[test]
    fn symmetric_square_dimension() {
        let b = sym2_basis();
        assert_eq!(b.len(), 27);
        assert_eq!(6 * Grading::Plane(2).basis_size(), 36);
        assert_eq!(sym2_move_rank(0), 9);
        assert!(b.iter().all(|s| !s.is_zero()));
    }

    #[test]
    fn products_span_symmetric_square() {
        let t = tfield_basis(0);
        let mut coords = Vec::new();
        for i in 0..t.len() {
            for j in i..t.len() {
                coords.push(sym_prod(&t[i], &t[j]).coords());
            }
        }
        assert_eq!(span_dim(&coords, 27), 27);
    }

    #[test]
    fn constant_square() {
        let c = TwistedVectorField::constant_ints([1, 0, 0]);
        let s = sym_prod(&c, &c);
        assert_eq!(s.twist(), -2);
        assert_eq!(s.entry(0, 0), &GradedPoly::constant(int(1)));
        for (a, b) in PAIRS.iter().skip(1) {
            assert!(s.entry(*a, *b).is_zero());
        }
    }

    #[test]
    fn symmetric_and_well_defined() {
        let mut r = rng(5);
        for _ in 0..200 {
            let u = random_tfield(&mut r, 0);
            let v = random_tfield(&mut r, -1);
            let s = sym_prod(&u, &v);
            assert_eq!(s, sym_prod(&v, &u));
            let q = random_poly(&mut r, 0);
            let shifted = TwistedVectorField::new(0, u.euler_shift(&q)).unwrap();
            assert_eq!(sym_prod(&shifted, &v), s);
            let raw = Sym2Section::from_ambient(
                -1,
                &concat_coords(&PAIRS.map(|(a, b)| {
                    let p = u.euler_shift(&q);
                    let w = v.components();
                    (&(&p[a] * &w[b]) + &(&p[b] * &w[a])).scale(&frac(1, 2))
                })),
            );
            assert_eq!(raw, s);
        }
    }
}
