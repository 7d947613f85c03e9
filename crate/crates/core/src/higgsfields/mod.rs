//! Rank-two Higgs fields on split bundles `O(m1) + O(m2)` and trace-free
//! Higgs fields on the tangent bundle of the plane.
//!
//! A split Higgs field is the matrix `[[A, B], [C, -A]]` with
//! `A` in `H^0(T)`, `B` in `H^0(T(m1 - m2))` and `C` in `H^0(T(m2 - m1))`.
//! A tangent Higgs field is a coefficient table against the bases
//! `end0t_basis(1)` and `tfield_basis(-1)`.

mod split;
mod tangent;

use thiserror::Error;

pub use split::{
    divide_by, gauge_normalize, wedge_kernel, hitchin_det, is_nilpotent, is_stable_split, normalize,
    orbit_equal, phi_wedge_phi, regularity_check, solve_integrable, Gauge, IntegrableFamily,
    Multipliers, NormalForm, RegularityReport, SplitHiggs, Stability, StabilityReport,
};
pub use tangent::{
    commutator_rank, det_double_cover_probe, det_jacobian_rank, has_smooth_spectral_conic,
    simple_tensor_test, tangent_tensor_rank, tangent_wedge, tangent_wedge_linearization,
    DetProbeReport, TangentHiggs,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HiggsError {
    #[error("component {component} must be a section of T({expected}), found T({found})")]
    TwistMismatch { component: &'static str, expected: i64, found: i64 },
    #[error("the section C is identically zero")]
    ZeroSection,
    #[error("the Higgs field is not integrable")]
    NotIntegrable,
    #[error("multiplier {name} must have degree {expected}, found {found}")]
    MultiplierDegree { name: &'static str, expected: i64, found: i64 },
    #[error("the Higgs field is not stable: {witness}")]
    NotStable { witness: String },
    #[error("normal forms are taken on O({m1}) + O({m2}) with m1 >= m2; swap the summands first")]
    Orientation { m1: i64, m2: i64 },
    #[error("C has a curve in its zero locus, so the integrable solutions are not multiples of C")]
    OutsideNormalFormLocus,
    #[error("gauge entry ({row},{col}) must have degree {expected}")]
    GaugeDegree { row: usize, col: usize, expected: i64 },
    #[error("gauge determinant is not a nonzero constant")]
    SingularGauge,
    #[error("gauge acts on O({}) + O({}), Higgs field lives on O({}) + O({})", .gauge.0, .gauge.1, .field.0, .field.1)]
    BundleMismatch { gauge: (i64, i64), field: (i64, i64) },
    #[error("coefficient table must be 6 x 3, found {rows} x {cols}")]
    TableShape { rows: usize, cols: usize },
}
