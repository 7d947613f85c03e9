//! Sections of `T(d)` as polynomial triples modulo the Euler relation.

use std::fmt;
use std::sync::Arc;

use crate::exactlin::{QuotientSpace, Scalar, SubQuotient};
use crate::polyring::{basis, parse_as, Grading, GradedPoly};

use super::{
    cached_space, check_degree, concat_coords, cross, regrade_zero, split_coords, unit, EulerError,
    ProjPoint, Section, SpaceKey,
};

/// A section of `T(d)`, stored as the canonical representative triple
/// `(P0, P1, P2)` of degree `d+1` polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedVectorField {
    twist: i64,
    comps: [GradedPoly; 3],
}

fn space(d: i64) -> Arc<SubQuotient> {
    cached_space(SpaceKey::TField(d), || {
        let n = 3 * Grading::Plane(d + 1).basis_size();
        let moves: Vec<Vec<Scalar>> = basis(Grading::Plane(d))
            .monomials
            .iter()
            .map(|e| {
                let q = GradedPoly::monomial(Grading::Plane(d), *e, Scalar::from_integer(1.into()));
                concat_coords(&[0, 1, 2].map(|i| &q * &GradedPoly::x(i)))
            })
            .collect();
        let everything: Vec<Vec<Scalar>> = (0..n).map(|i| unit(n, i)).collect();
        SubQuotient::new(QuotientSpace::new(n, &moves), &everything)
    })
}

impl TwistedVectorField {
    pub fn new(twist: i64, comps: [GradedPoly; 3]) -> Result<Self, EulerError> {
        for c in &comps {
            check_degree(c, twist + 1)?;
        }
        let comps = comps.map(|c| regrade_zero(&c, twist + 1));
        Ok(Self::from_ambient(twist, &concat_coords(&comps)))
    }

    /// Keeps `comps` as given rather than reducing modulo the Euler
    /// relation. Used to check that operations ignore the representative;
    /// equality and coordinates of the result are not canonical.
    pub fn from_representative(twist: i64, comps: [GradedPoly; 3]) -> Result<Self, EulerError> {
        for c in &comps {
            check_degree(c, twist + 1)?;
        }
        Ok(TwistedVectorField { twist, comps: comps.map(|c| regrade_zero(&c, twist + 1)) })
    }

    fn from_ambient(twist: i64, coords: &[Scalar]) -> Self {
        let reduced = space(twist).quotient.reduce(coords);
        let v = split_coords(Grading::Plane(twist + 1), 3, &reduced);
        TwistedVectorField { twist, comps: [v[0].clone(), v[1].clone(), v[2].clone()] }
    }

    pub fn zero(twist: i64) -> Self {
        let z = GradedPoly::zero(Grading::Plane(twist + 1));
        TwistedVectorField { twist, comps: [z.clone(), z.clone(), z] }
    }

    /// The section of `T(-1)` given by a constant triple.
    pub fn constant(a: [Scalar; 3]) -> Self {
        TwistedVectorField { twist: -1, comps: a.map(GradedPoly::constant) }
    }

    pub fn constant_ints(a: [i64; 3]) -> Self {
        Self::constant(a.map(crate::exactlin::int))
    }

    /// Parses `"P0, P1, P2"` as a section of `T(twist)`.
    pub fn parse(text: &str, twist: i64) -> Result<Self, EulerError> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(EulerError::ComponentCount { expected: 3, found: parts.len() });
        }
        let g = Grading::Plane(twist + 1);
        // A homogeneous literal of the wrong degree is reported as such.
        let component = |t: &str| {
            parse_as(t, g).map_err(|e| match crate::polyring::parse(t) {
                Ok(p) => EulerError::DegreeMismatch { expected: twist + 1, found: p.degree() },
                Err(_) => e.into(),
            })
        };
        let comps = [component(parts[0])?, component(parts[1])?, component(parts[2])?];
        Self::new(twist, comps)
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn components(&self) -> &[GradedPoly; 3] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GradedPoly::is_zero)
    }

    /// Coordinates in `tfield_basis(twist)`.
    pub fn coords(&self) -> Vec<Scalar> {
        space(self.twist)
            .coords_in_basis(&concat_coords(&self.comps))
            .expect("every triple is a section")
    }

    pub fn from_coords(twist: i64, coords: &[Scalar]) -> Self {
        Self::from_ambient(twist, &space(twist).lift_basis_coords(coords))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.twist, other.twist, "adding sections of different twists");
        let c = [0, 1, 2].map(|i| &self.comps[i] + &other.comps[i]);
        Self::from_ambient(self.twist, &concat_coords(&c))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TwistedVectorField { twist: self.twist, comps: self.comps.clone().map(|p| p.scale(c)) }
    }

    /// The section `f * self` of `T(twist + deg f)`.
    pub fn mul_poly(&self, f: &GradedPoly) -> Self {
        let d = self.twist + f.degree();
        let c = self.comps.clone().map(|p| &p * f);
        Self::from_ambient(d, &concat_coords(&c))
    }

    /// Adds `Q (x0, x1, x2)`; the result represents the same section.
    pub fn euler_shift(&self, q: &GradedPoly) -> [GradedPoly; 3] {
        [0, 1, 2].map(|i| &self.comps[i] + &(q * &GradedPoly::x(i)))
    }

    /// `P(p)` for the canonical representative.
    pub fn eval(&self, p: &ProjPoint) -> [Scalar; 3] {
        [0, 1, 2].map(|i| self.comps[i].eval(p.coords()))
    }
}

impl Section for TwistedVectorField {
    fn value_at(&self, p: &ProjPoint) -> Vec<Scalar> {
        cross(p.coords(), &self.eval(p)).to_vec()
    }

    fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        self.add(&other.scale(c))
    }

    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for TwistedVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.comps[0], self.comps[1], self.comps[2])
    }
}

/// Canonical basis of `H^0(T(d))`.
pub fn tfield_basis(d: i64) -> Vec<TwistedVectorField> {
    let s = space(d);
    s.basis_vectors()
        .iter()
        .map(|v| {
            let p = split_coords(Grading::Plane(d + 1), 3, v);
            TwistedVectorField { twist: d, comps: [p[0].clone(), p[1].clone(), p[2].clone()] }
        })
        .collect()
}

/// The point where a nonzero section of `T(-1)` vanishes: a constant
/// triple `a` is proportional to `x` exactly at `[a0 : a1 : a2]`.
pub fn zero_locus(c: &TwistedVectorField) -> Result<ProjPoint, EulerError> {
    if c.twist != -1 {
        return Err(EulerError::DegreeMismatch { expected: 0, found: c.twist + 1 });
    }
    if c.is_zero() {
        return Err(EulerError::ZeroSection);
    }
    ProjPoint::new([0, 1, 2].map(|i| c.comps[i].coefficient(&[0; 4])))
}

/// The pairing `T(d1) x T(d2) -> O(d1 + d2 + 3)`, `det[[x], [P], [P']]`.
pub fn wedge(u: &TwistedVectorField, v: &TwistedVectorField) -> GradedPoly {
    let [p0, p1, p2] = &u.comps;
    let [q0, q1, q2] = &v.comps;
    let m0 = &(p1 * q2) - &(p2 * q1);
    let m1 = &(p0 * q2) - &(p2 * q0);
    let m2 = &(p0 * q1) - &(p1 * q0);
    let t0 = &GradedPoly::x(0) * &m0;
    let t1 = &GradedPoly::x(1) * &m1;
    let t2 = &GradedPoly::x(2) * &m2;
    &(&t0 - &t1) + &t2
}
