//! Sections of `End_0 T(d)`.
//!
//! An endomorphism of `T` lifts to a 3x3 polynomial matrix `M` on `O(1)^3`
//! preserving the Euler line, `M x = g x`. The induced trace is
//! `tr(M) - g`, so trace-free sections are the solutions of
//! `M x = tr(M) x`, taken modulo the matrices `x w^T` that induce zero.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactlin::{ExactMatrix, QuotientSpace, Scalar, SubQuotient};
use crate::polyring::{basis, Grading, GradedPoly};

use super::{
    cached_space, check_degree, concat_coords, cross, regrade_zero, split_coords, EulerError,
    ProjPoint, Section, SpaceKey,
};

/// A section of `End_0 T(d)`: the canonical lift `M` (row-major entries of
/// degree `d`) with scalar-part witness `g = tr(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoTSection {
    twist: i64,
    m: [GradedPoly; 9],
}

fn trace(m: &[GradedPoly; 9]) -> GradedPoly {
    &(&m[0] + &m[4]) + &m[8]
}

/// `M x - tr(M) x`, row by row.
fn euler_defect(m: &[GradedPoly; 9]) -> [GradedPoly; 3] {
    let tr = trace(m);
    std::array::from_fn(|i| {
        let mx = (0..3).fold(GradedPoly::zero(Grading::Plane(tr.degree() + 1)), |acc, j| {
            &acc + &(&m[3 * i + j] * &GradedPoly::x(j))
        });
        &mx - &(&tr * &GradedPoly::x(i))
    })
}

fn space(d: i64) -> Arc<SubQuotient> {
    cached_space(SpaceKey::End0(d), || {
        let g = Grading::Plane(d);
        let nd = g.basis_size();
        let n = 9 * nd;
        let mut moves = Vec::new();
        for j in 0..3 {
            for e in basis(Grading::Plane(d - 1)).monomials {
                let w = GradedPoly::monomial(Grading::Plane(d - 1), e, Scalar::one());
                let m: [GradedPoly; 9] = std::array::from_fn(|k| {
                    let (a, b) = (k / 3, k % 3);
                    if b == j {
                        &GradedPoly::x(a) * &w
                    } else {
                        GradedPoly::zero(g)
                    }
                });
                moves.push(concat_coords(&m));
            }
        }
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|c| {
                let mut coords = crate::exactlin::zero_vec(n);
                coords[c] = Scalar::one();
                let m: [GradedPoly; 9] = split_coords(g, 9, &coords).try_into().expect("nine entries");
                concat_coords(&euler_defect(&m))
            })
            .collect();
        let rows = 3 * Grading::Plane(d + 1).basis_size();
        let solutions = if n == 0 {
            Vec::new()
        } else {
            ExactMatrix::from_columns(rows, &columns).expect("uniform columns").kernel_basis()
        };
        SubQuotient::new(QuotientSpace::new(n, &moves), &solutions)
    })
}

impl EndoTSection {
    /// Builds a section from a row-major 3x3 matrix of degree-`twist`
    /// polynomials satisfying `M x = tr(M) x`.
    pub fn new(twist: i64, m: [GradedPoly; 9]) -> Result<Self, EulerError> {
        for e in &m {
            check_degree(e, twist)?;
        }
        let m = m.map(|e| regrade_zero(&e, twist));
        if !euler_defect(&m).iter().all(GradedPoly::is_zero) {
            return Err(EulerError::NotEulerCompatible);
        }
        Ok(Self::from_ambient(twist, &concat_coords(&m)))
    }

    /// Keeps the lift `m` as given; see
    /// `TwistedVectorField::from_representative`.
    pub fn from_representative(twist: i64, m: [GradedPoly; 9]) -> Result<Self, EulerError> {
        for e in &m {
            check_degree(e, twist)?;
        }
        let m = m.map(|e| regrade_zero(&e, twist));
        if !euler_defect(&m).iter().all(GradedPoly::is_zero) {
            return Err(EulerError::NotEulerCompatible);
        }
        Ok(EndoTSection { twist, m })
    }

    fn from_ambient(twist: i64, coords: &[Scalar]) -> Self {
        let reduced = space(twist).quotient.reduce(coords);
        let v = split_coords(Grading::Plane(twist), 9, &reduced);
        EndoTSection { twist, m: v.try_into().expect("nine entries") }
    }

    pub fn zero(twist: i64) -> Self {
        EndoTSection { twist, m: std::array::from_fn(|_| GradedPoly::zero(Grading::Plane(twist))) }
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.m[3 * i + j]
    }

    /// The scalar-part witness `g` with `M x = g x`.
    pub fn witness(&self) -> GradedPoly {
        trace(&self.m)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(GradedPoly::is_zero)
    }

    /// Coordinates in `end0t_basis(twist)`.
    pub fn coords(&self) -> Vec<Scalar> {
        space(self.twist)
            .coords_in_basis(&concat_coords(&self.m))
            .expect("section satisfies the Euler constraint")
    }

    pub fn from_coords(twist: i64, coords: &[Scalar]) -> Self {
        Self::from_ambient(twist, &space(twist).lift_basis_coords(coords))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.twist, other.twist, "adding sections of different twists");
        let m: [GradedPoly; 9] = std::array::from_fn(|i| &self.m[i] + &other.m[i]);
        Self::from_ambient(self.twist, &concat_coords(&m))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        EndoTSection { twist: self.twist, m: self.m.clone().map(|p| p.scale(c)) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn mul_poly(&self, f: &GradedPoly) -> Self {
        let m = self.m.clone().map(|p| &p * f);
        Self::from_ambient(self.twist + f.degree(), &concat_coords(&m))
    }

    /// Adds `x w^T`; the result induces the same endomorphism.
    pub fn with_move(&self, w: &[GradedPoly; 3]) -> [GradedPoly; 9] {
        std::array::from_fn(|k| &self.m[k] + &(&GradedPoly::x(k / 3) * &w[k % 3]))
    }

    fn matmul(a: &[GradedPoly; 9], b: &[GradedPoly; 9]) -> [GradedPoly; 9] {
        std::array::from_fn(|k| {
            let (i, j) = (k / 3, k % 3);
            let g = Grading::Plane(a[0].degree() + b[0].degree());
            (0..3).fold(GradedPoly::zero(g), |acc, l| &acc + &(&a[3 * i + l] * &b[3 * l + j]))
        })
    }

    /// `[a, b] = ab - ba`, a section of `End_0 T(d1 + d2)`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        let ab = Self::matmul(&a.m, &b.m);
        let ba = Self::matmul(&b.m, &a.m);
        let c: [GradedPoly; 9] = std::array::from_fn(|k| &ab[k] - &ba[k]);
        Self::from_ambient(a.twist + b.twist, &concat_coords(&c))
    }

    /// Determinant of the induced endomorphism of `T`, a section of
    /// `O(2d)`. Since the induced trace vanishes, it equals the sum of the
    /// principal 2x2 minors of the lift.
    pub fn det(&self) -> GradedPoly {
        let m = |i: usize, j: usize| &self.m[3 * i + j];
        let minor = |i: usize, j: usize| &(m(i, i) * m(j, j)) - &(m(i, j) * m(j, i));
        &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2)
    }

    /// `M(p)`, row-major.
    pub fn eval(&self, p: &ProjPoint) -> [Scalar; 9] {
        std::array::from_fn(|k| self.m[k].eval(p.coords()))
    }

    /// Raw matrix entries of the canonical lift.
    pub fn entries(&self) -> &[GradedPoly; 9] {
        &self.m
    }
}

impl Section for EndoTSection {
    /// The induced map on `T_p = C^3 / p` vanishes iff every column of
    /// `M(p)` is proportional to `p`.
    fn value_at(&self, p: &ProjPoint) -> Vec<Scalar> {
        let v = self.eval(p);
        (0..3)
            .flat_map(|j| cross(p.coords(), &[v[j].clone(), v[3 + j].clone(), v[6 + j].clone()]))
            .collect()
    }

    fn add_scaled(&self, other: &Self, c: &Scalar) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        self.add(&other.scale(c))
    }

    fn scaled(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

impl fmt::Display for EndoTSection {
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

/// Canonical basis of `H^0(End_0 T(d))`.
pub fn end0t_basis(d: i64) -> Vec<EndoTSection> {
    space(d)
        .basis_vectors()
        .iter()
        .map(|v| EndoTSection {
            twist: d,
            m: split_coords(Grading::Plane(d), 9, v).try_into().expect("nine entries"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use crate::sampling::{random_end0t, random_poly, rng, small_vec};
    use crate::sheafdim::{chi_rr, endo_ch, tangent_chern};

    #[test]
    fn dimensions() {
        assert!(end0t_basis(0).is_empty());
        assert_eq!(end0t_basis(1).len(), 6);
        let chi = chi_rr(&endo_ch(&tangent_chern()), 2).unwrap();
        assert_eq!(end0t_basis(2).len() as i64, chi);
        assert_eq!(end0t_basis(2).len(), 15);
        assert_eq!(end0t_basis(3).len(), 27);
    }

    #[test]
    fn basis_satisfies_constraint() {
        for b in end0t_basis(1) {
            assert!(euler_defect(&b.m).iter().all(GradedPoly::is_zero));
            assert!(!b.is_zero());
        }
    }

    #[test]
    fn rejects_incompatible_matrix() {
        let mut m: [GradedPoly; 9] = std::array::from_fn(|_| GradedPoly::zero(Grading::Plane(1)));
        m[1] = GradedPoly::x(0);
        assert_eq!(EndoTSection::new(1, m), Err(EulerError::NotEulerCompatible));
    }

    #[test]
    fn commutator_laws() {
        let b = end0t_basis(1);
        for a in &b {
            assert!(EndoTSection::commutator(a, a).is_zero());
            for c in &b {
                assert_eq!(EndoTSection::commutator(a, c), EndoTSection::commutator(c, a).neg());
            }
        }
    }

    #[test]
    fn jacobi_identity() {
        let b = end0t_basis(1);
        let br = EndoTSection::commutator;
        for a in &b {
            for c in &b {
                for e in &b {
                    let s = br(&br(a, c), e).add(&br(&br(c, e), a)).add(&br(&br(e, a), c));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn commutator_well_defined() {
        let mut r = rng(17);
        for _ in 0..200 {
            let a = random_end0t(&mut r, 1);
            let b = random_end0t(&mut r, 1);
            let w = [0, 1, 2].map(|_| random_poly(&mut r, 0));
            let shifted = EndoTSection { twist: 1, m: a.with_move(&w) };
            assert_eq!(
                EndoTSection::commutator(&shifted, &b),
                EndoTSection::commutator(&a, &b)
            );
        }
    }

    #[test]
    fn determinant_is_well_defined_and_even() {
        let mut r = rng(23);
        for _ in 0..20 {
            let a = random_end0t(&mut r, 1);
            let w = [0, 1, 2].map(|_| random_poly(&mut r, 0));
            let shifted = EndoTSection { twist: 1, m: a.with_move(&w) };
            assert_eq!(shifted.det(), a.det());
            assert_eq!(a.neg().det(), a.det());
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let mut r = rng(29);
        let c = small_vec(&mut r, 15);
        let s = EndoTSection::from_coords(2, &c);
        assert_eq!(s.coords(), c);
    }

    #[test]
    fn point_conditions() {
        let p = ProjPoint::from_ints([2, -1, 3]).unwrap();
        let through = crate::eulercalc::sections_vanishing_at(&end0t_basis(2), &p);
        assert_eq!(through.len(), 15 - 3);
        for s in &through {
            assert!(s.value_at(&p).iter().all(|v| *v == int(0)));
        }
    }
}
