//! First-order deformations of a co-Higgs bundle `(V, Phi)` through the
//! spectral sequence of the complex
//! `End_0 V -> End_0 V (x) T -> End_0 V (x) ∧^2 T`, whose maps are
//! `psi -> [psi, Phi]` and `Theta -> Phi ^ Theta + Theta ^ Phi`.
//!
//! `H^1` sits in `0 -> E2^{1,0} -> H^1 -> E2^{0,1} -> E2^{2,0}`, so
//! `h1 = e2_10 + e2_01 - rank d2`.

use serde::Serialize;
use thiserror::Error;

use crate::eulercalc::{end0t_basis, sections_vanishing_at, tfield_basis, wedge, ProjPoint, TwistedVectorField};
use crate::exactlin::{int, ExactMatrix, Scalar};
use crate::higgsfields::{
    is_stable_split, phi_wedge_phi, tangent_wedge_linearization, HiggsError, SplitHiggs, Stability,
    TangentHiggs,
};
use crate::polyring::{basis, Grading, GradedPoly};
use crate::schwarz::{build_table, SchwarzError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefError {
    #[error("d2 rank {rank} exceeds dim E2^(0,1) = {source_dim}")]
    RankExceedsSource { rank: u64, source_dim: u64 },
    #[error("the Higgs field is not integrable")]
    NotIntegrable,
    #[error("the Higgs field is not stable: {0}")]
    NotStable(String),
    #[error("the Higgs field is zero")]
    ZeroField,
    #[error("coefficient table has rank {rank}; a simple tensor has rank 1")]
    NotSimpleTensor { rank: usize },
    #[error(transparent)]
    Higgs(#[from] HiggsError),
    #[error(transparent)]
    Schwarz(#[from] SchwarzError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Summary {
    pub e2_10: u64,
    pub e2_01: u64,
    pub d2_rank_on_01: u64,
    pub h1: u64,
    pub ledger: Vec<String>,
}

pub fn hyper_h1(e2_10: u64, e2_01: u64, d2_rank: u64) -> Result<u64, DefError> {
    if d2_rank > e2_01 {
        return Err(DefError::RankExceedsSource { rank: d2_rank, source_dim: e2_01 });
    }
    Ok(e2_10 + e2_01 - d2_rank)
}

fn summary(e2_10: u64, e2_01: u64, d2: u64, mut ledger: Vec<String>) -> Result<E2Summary, DefError> {
    let h1 = hyper_h1(e2_10, e2_01, d2)?;
    ledger.push(format!("h1 = {e2_10} + {e2_01} − {d2} = {h1}"));
    Ok(E2Summary { e2_10, e2_01, d2_rank_on_01: d2, h1, ledger })
}

fn times(f: &GradedPoly, u: &TwistedVectorField, twist: i64) -> TwistedVectorField {
    if f.is_zero() || u.is_zero() {
        TwistedVectorField::zero(twist)
    } else {
        u.mul_poly(f)
    }
}

fn monomials(d: i64) -> Vec<GradedPoly> {
    let g = Grading::Plane(d);
    basis(g).monomials.into_iter().map(|e| GradedPoly::monomial(g, e, int(1))).collect()
}

/// Sections `(A, B, C)` of `End_0 V (x) T` on a split bundle.
type Triple = [TwistedVectorField; 3];

fn triple_coords(t: &Triple) -> Vec<Scalar> {
    t.iter().flat_map(TwistedVectorField::coords).collect()
}

/// `[psi, Phi]` for `psi = [[alpha, beta], [gamma, -alpha]]`.
fn bracket(h: &SplitHiggs, alpha: &GradedPoly, beta: &GradedPoly, gamma: &GradedPoly) -> Triple {
    let (m1, m2) = h.bundle();
    let two = int(2);
    let (a, b, c) = (h.a(), h.b(), h.c());
    [
        times(beta, c, 0).sub(&times(gamma, b, 0)),
        times(alpha, b, m1 - m2).sub(&times(beta, a, m1 - m2)).scale(&two),
        times(gamma, a, m2 - m1).sub(&times(alpha, c, m2 - m1)).scale(&two),
    ]
}

/// `Phi ^ Theta + Theta ^ Phi` in `End_0 V (x) ∧^2 T`, as the polynomial
/// entries `(1,1), (1,2), (2,1)`.
fn wedge_with(h: &SplitHiggs, t: &Triple) -> Vec<Scalar> {
    let (a, b, c) = (h.a(), h.b(), h.c());
    let [ta, tb, tc] = t;
    let two = int(2);
    let w11 = &wedge(b, tc) + &wedge(tb, c);
    let w12 = (&wedge(a, tb) + &wedge(ta, b)).scale(&two);
    let w21 = (&wedge(c, ta) + &wedge(tc, a)).scale(&two);
    [w11, w12, w21].iter().flat_map(GradedPoly::coord_vector).collect()
}

fn matrix(rows: usize, cols: &[Vec<Scalar>]) -> ExactMatrix {
    ExactMatrix::from_columns(rows, cols).expect("uniform column length")
}

/// Explicit matrices of the two maps of the deformation complex.
pub struct SplitComplex {
    pub d0: ExactMatrix,
    pub d1: ExactMatrix,
    /// Basis of `H^0(End_0 V (x) T)`, matching the columns of `d1`.
    pub theta_basis: Vec<Vec<Scalar>>,
}

pub fn split_complex(h: &SplitHiggs) -> SplitComplex {
    let (m1, m2) = h.bundle();
    let (e, f) = (m1 - m2, m2 - m1);
    let zero = |d: i64| GradedPoly::zero(Grading::Plane(d));
    let mut psi = vec![(GradedPoly::constant(int(1)), zero(e), zero(f))];
    psi.extend(monomials(e).into_iter().map(|p| (zero(0), p, zero(f))));
    psi.extend(monomials(f).into_iter().map(|p| (zero(0), zero(e), p)));

    let mut thetas: Vec<Triple> = Vec::new();
    for u in tfield_basis(0) {
        thetas.push([u, TwistedVectorField::zero(e), TwistedVectorField::zero(f)]);
    }
    for u in tfield_basis(e) {
        thetas.push([TwistedVectorField::zero(0), u, TwistedVectorField::zero(f)]);
    }
    for u in tfield_basis(f) {
        thetas.push([TwistedVectorField::zero(0), TwistedVectorField::zero(e), u]);
    }
    let n_theta = thetas.len();
    let n_wedge = [3, 3 + e, 3 + f].iter().map(|&d| Grading::Plane(d).basis_size()).sum();

    let d0_cols: Vec<Vec<Scalar>> =
        psi.iter().map(|(a, b, c)| triple_coords(&bracket(h, a, b, c))).collect();
    let d1_cols: Vec<Vec<Scalar>> = thetas.iter().map(|t| wedge_with(h, t)).collect();
    SplitComplex {
        d0: matrix(n_theta, &d0_cols),
        d1: matrix(n_wedge, &d1_cols),
        theta_basis: thetas.iter().map(triple_coords).collect(),
    }
}

/// `E_2` terms of an integrable field on `O(m1) + O(m2)` by exact ranks.
pub fn split_e2(h: &SplitHiggs) -> Result<E2Summary, DefError> {
    if h.is_zero() {
        return Err(DefError::ZeroField);
    }
    if phi_wedge_phi(h).iter().flatten().any(|p| !p.is_zero()) {
        return Err(DefError::NotIntegrable);
    }
    let stab = is_stable_split(h);
    if matches!(stab.verdict, Stability::Unstable | Stability::Semistable) {
        return Err(DefError::NotStable(stab.witness.unwrap_or_default()));
    }
    let cx = split_complex(h);
    let (n0, n1, n2) = (cx.d0.cols() as u64, cx.d1.cols() as u64, cx.d1.rows() as u64);
    let (r0, r1) = (cx.d0.rank() as u64, cx.d1.rank() as u64);
    let e2_10 = n1 - r1 - r0;
    let ledger = vec![
        format!("h0(End0 V) = {n0}, h0(End0 V ⊗ T) = {n1}, h0(End0 V ⊗ ∧²T) = {n2}"),
        format!("rank [−, Φ] = {r0}, rank ∧Φ = {r1}"),
        format!("E2^(1,0) = {n1} − {r1} − {r0} = {e2_10}"),
        "E2^(0,1) = 0 since h1 of every line bundle on the plane is 0".into(),
    ];
    summary(e2_10, 0, 0, ledger)
}

/// `E_2` terms of a simple tensor `Phi = phi (x) C` on the tangent bundle.
pub fn tangent_e2(phi: &TangentHiggs) -> Result<E2Summary, DefError> {
    match phi.rank() {
        0 => return Err(DefError::ZeroField),
        1 => {}
        rank => return Err(DefError::NotSimpleTensor { rank }),
    }
    let lin = tangent_wedge_linearization(phi);
    let r1 = lin.rank() as u64;
    let n1 = lin.cols() as u64;
    let h0_end0 = end0t_basis(0).len() as u64;
    let e2_10 = n1 - r1 - h0_end0;
    let ledger = vec![
        format!("h0(End0 T) = {h0_end0}, h0(End0 T ⊗ T) = {n1}"),
        format!("rank ∧Φ = {r1}"),
        format!("E2^(1,0) = {n1} − {r1} − {h0_end0} = {e2_10}"),
        "E2^(0,1) = 0 since h1(End0 T) = 0 (T is rigid)".into(),
    ];
    summary(e2_10, 0, 0, ledger)
}

/// Counting for the point condition at the zero of `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConstraint {
    pub point: String,
    pub linear_forms_through_point: usize,
    pub ledger: Vec<String>,
}

/// Linear forms through the zero `x` of `C` give the two degrees of freedom
/// in `s`; together with the 1-dimensional kernel of `^C` they make up the
/// 3-dimensional `E2^{1,0}` for `k = 3`.
pub fn point_constraint_ledger(x: &ProjPoint) -> PointConstraint {
    let through = sections_vanishing_at(&monomials(1), x).len();
    let ledger = vec![
        format!("linear forms through {x}: {through}"),
        format!("{} − 1 = {through}", monomials(1).len()),
        format!("1 + {through} = {}", 1 + through),
    ];
    PointConstraint { point: x.to_string(), linear_forms_through_point: through, ledger }
}

/// `E_2` terms for a Schwarzenberger bundle with `Phi = phi_0 (x) C != 0`.
pub fn schwarz_e2(k: u64) -> Result<E2Summary, DefError> {
    let table = build_table(k)?;
    let row = |i: usize| table.rows[i].dims;
    let (end0, twist1, twist2, tensor_t) = (row(0), row(1), row(2), row(3));
    let h0_o2 = Grading::Plane(2).basis_size() as u64;
    let mut ledger = vec![
        format!("h0(End0 V) = {}, so im [−, Φ] = 0", end0[0]),
        "d2 = 0: d2(ψ) = [θ, φ] C ∧ C = 0".into(),
    ];
    let (e2_10, e2_01) = if k > 3 {
        let through = twist2[0] - 1;
        ledger.push(format!("E2^(1,0) = h0(End0 V ⊗ T) = {}", tensor_t[0]));
        ledger.push(format!(
            "ker [−, φ0] on H1(End0 V) = h0(O(2)) − h0(End0 V(1)) = {h0_o2} − {} = {}",
            twist1[0],
            h0_o2 - twist1[0]
        ));
        ledger.push(format!("h0(End0 V(2) ⊗ I_x) = {} − 1 = {through}", twist2[0]));
        ledger.push(format!(
            "{} + {through} = {} = h0(End0 V ⊗ T), so ∧C is injective on H1(End0 V(1))",
            twist1[0],
            twist1[0] + through
        ));
        (tensor_t[0], h0_o2 - twist1[0])
    } else {
        let pc = point_constraint_ledger(&ProjPoint::from_ints([1, 0, 0]).expect("valid point"));
        ledger.extend(pc.ledger);
        let e2_10 = twist1[0] + pc.linear_forms_through_point as u64;
        ledger.push(format!("h1(End0 V) = {}, h1(End0 V ⊗ T) = {}", end0[1], tensor_t[1]));
        ledger.push(format!("E2^(0,1) = {}", end0[1]));
        (e2_10, end0[1])
    };
    summary(e2_10, e2_01, 0, ledger)
}
