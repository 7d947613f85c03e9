//! Explicit global sections on the plane through the Euler sequence
//! `0 -> O -> O(1)^3 -> T -> 0`.
//!
//! A section of `T(d)` is a triple of degree `d+1` polynomials modulo
//! `Q (x0, x1, x2)`; sections of `S^2 T(d)` and `End_0 T(d)` are polynomial
//! matrices modulo the corresponding Euler moves. Every space is realized as a
//! quotient (or subquotient) of a coordinate space, so representatives are
//! canonical and dimensions are exact ranks.

mod endot;
mod sym2;
mod tfield;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{ExactMatrix, Scalar, SubQuotient};
use crate::polyring::{Grading, GradedPoly};

pub use endot::{end0t_basis, EndoTSection};
pub use sym2::{sym2_basis, sym2_move_rank, sym_prod, Sym2Section};
pub use tfield::{tfield_basis, wedge, zero_locus, TwistedVectorField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("expected polynomials of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("matrix does not preserve the Euler line: M x is not tr(M) x")]
    NotEulerCompatible,
    #[error("the section is identically zero")]
    ZeroSection,
    #[error("[0 : 0 : 0] is not a point of the plane")]
    InvalidPoint,
    #[error("expected {expected} comma-separated components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] crate::polyring::PolyError),
}

/// A point `[a0 : a1 : a2]` of the plane, scaled so its first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint([Scalar; 3]);

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self, EulerError> {
        let lead = coords.iter().find(|c| !c.is_zero()).cloned().ok_or(EulerError::InvalidPoint)?;
        Ok(ProjPoint(coords.map(|c| c / &lead)))
    }

    pub fn from_ints(a: [i64; 3]) -> Result<Self, EulerError> {
        Self::new(a.map(crate::exactlin::int))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.0[0], self.0[1], self.0[2])
    }
}

/// Sections that can be combined linearly and tested for vanishing at a
/// point. `value_at` must be zero exactly when the section vanishes at `p`,
/// independently of the chosen representative.
pub trait Section: Clone {
    fn value_at(&self, p: &ProjPoint) -> Vec<Scalar>;
    fn add_scaled(&self, other: &Self, c: &Scalar) -> Self;
    fn scaled(&self, c: &Scalar) -> Self;
}

impl Section for GradedPoly {
    fn value_at(&self, p: &ProjPoint) -> Vec<Scalar> {
        vec![self.eval(p.coords())]
    }

    fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        self + &other.scale(c)
    }

    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

/// Canonical basis of the sections in `span(basis)` that vanish at `p`.
///
/// The result is expressed through the reduced echelon basis of the kernel
/// of the evaluation map, so it depends only on the input basis order.
pub fn sections_vanishing_at<S: Section>(basis: &[S], p: &ProjPoint) -> Vec<S> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let columns: Vec<Vec<Scalar>> = basis.iter().map(|s| s.value_at(p)).collect();
    let eval = ExactMatrix::from_columns(columns[0].len(), &columns).expect("uniform value length");
    eval.kernel_basis()
        .into_iter()
        .map(|c| {
            basis
                .iter()
                .zip(&c)
                .fold(first.scaled(&Scalar::zero()), |acc, (s, ci)| acc.add_scaled(s, ci))
        })
        .collect()
}

fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn concat_coords(polys: &[GradedPoly]) -> Vec<Scalar> {
    polys.iter().flat_map(GradedPoly::coord_vector).collect()
}

fn split_coords(grading: Grading, count: usize, coords: &[Scalar]) -> Vec<GradedPoly> {
    let n = grading.basis_size();
    debug_assert_eq!(coords.len(), n * count);
    (0..count).map(|i| GradedPoly::from_coords(grading, &coords[i * n..(i + 1) * n])).collect()
}

fn check_degree(p: &GradedPoly, expected: i64) -> Result<(), EulerError> {
    // Zero polynomials parsed without context carry degree 0; accept them.
    match p.grading() {
        Grading::Plane(d) if d == expected => Ok(()),
        Grading::Plane(_) if p.is_zero() => Ok(()),
        Grading::Plane(d) => Err(EulerError::DegreeMismatch { expected, found: d }),
        Grading::Quadric(..) => Err(EulerError::DegreeMismatch { expected, found: -1 }),
    }
}

fn regrade_zero(p: &GradedPoly, d: i64) -> GradedPoly {
    if p.is_zero() {
        GradedPoly::zero(Grading::Plane(d))
    } else {
        p.clone()
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = crate::exactlin::zero_vec(n);
    v[i] = Scalar::one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum SpaceKey {
    TField(i64),
    Sym2(i64),
    End0(i64),
}

/// Section spaces are built once per twist and shared.
fn cached_space(key: SpaceKey, build: impl FnOnce() -> SubQuotient) -> Arc<SubQuotient> {
    static SPACES: OnceLock<Mutex<HashMap<SpaceKey, Arc<SubQuotient>>>> = OnceLock::new();
    let map = SPACES.get_or_init(Default::default);
    if let Some(s) = map.lock().expect("section cache poisoned").get(&key) {
        return Arc::clone(s);
    }
    let built = Arc::new(build());
    map.lock().expect("section cache poisoned").entry(key).or_insert(built).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::polyring::{basis, parse};

    #[test]
    fn linear_forms_through_a_point() {
        let lin: Vec<GradedPoly> = basis(Grading::Plane(1))
            .monomials
            .iter()
            .map(|e| GradedPoly::monomial(Grading::Plane(1), *e, int(1)))
            .collect();
        let p = ProjPoint::from_ints([1, 0, 0]).unwrap();
        let through = sections_vanishing_at(&lin, &p);
        assert_eq!(through, vec![parse("x1").unwrap(), parse("x2").unwrap()]);
    }

    #[test]
    fn all_sections_vanish() {
        let quads = vec![parse("x1*x2").unwrap(), parse("x1^2").unwrap()];
        let p = ProjPoint::from_ints([1, 0, 0]).unwrap();
        assert_eq!(sections_vanishing_at(&quads, &p).len(), 2);
    }

    #[test]
    fn projective_point_normalization() {
        let p = ProjPoint::from_ints([0, 2, 4]).unwrap();
        assert_eq!(p.to_string(), "[0 : 1 : 2]");
        assert_eq!(ProjPoint::from_ints([0, 0, 0]), Err(EulerError::InvalidPoint));
    }
}
