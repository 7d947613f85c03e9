//! Cohomology of twisted trace-free endomorphism bundles of the
//! Schwarzenberger bundles `V_k`, the direct images of `O(0, k)` under the
//! double cover `P^1 x P^1 -> P^2` branched along a smooth conic.
//!
//! Three independent routes fill each table cell: closed forms, pulling back
//! to the quadric and chasing line-bundle sequences there, and
//! Riemann-Roch combined with `h^2 = 0` and one known dimension.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::polyring::{quadratic_form_det, Grading, GradedPoly};
use crate::sheafdim::{
    chern_twist, chi_rr, endo_ch, les_chase, p2_dims, quadric_dims, schwarz_chern, tangent_chern,
    tensor_ch, ChaseError, ChernCharacter, ChernError, CohomProfile, Route, Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchwarzError {
    #[error("k = {k} is out of range: the formulas need k >= 3")]
    Domain { k: u64 },
    #[error("the conic is the zero polynomial")]
    ZeroConic,
    #[error("expected a conic (degree 2 on the plane), found {0}")]
    NotAConic(Grading),
    #[error("the conic is singular; the double cover is not a smooth quadric")]
    SingularConic,
    #[error("dimension chase did not close: {0}")]
    ChaseUnresolved(String),
    #[error(transparent)]
    Chase(#[from] ChaseError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error("routes disagree for k = {k} on {sheaf}: {diff}")]
    RouteDisagreement { k: u64, sheaf: String, diff: String },
}

fn check_k(k: u64) -> Result<(), SchwarzError> {
    if k < 3 {
        Err(SchwarzError::Domain { k })
    } else {
        Ok(())
    }
}

/// `k` together with an optional branch conic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwarzParams {
    pub k: u64,
    pub conic: Option<GradedPoly>,
    pub nonsingular: Option<bool>,
}

impl SchwarzParams {
    pub fn new(k: u64, conic: Option<GradedPoly>) -> Result<Self, SchwarzError> {
        check_k(k)?;
        let nonsingular = conic.as_ref().map(conic_singular).transpose()?.map(|s| !s);
        Ok(SchwarzParams { k, conic, nonsingular })
    }

    /// Fails unless a conic is present and nonsingular.
    pub fn require_nonsingular(&self) -> Result<&GradedPoly, SchwarzError> {
        match (&self.conic, self.nonsingular) {
            (Some(c), Some(true)) => Ok(c),
            (Some(_), _) => Err(SchwarzError::SingularConic),
            (None, _) => Err(SchwarzError::ZeroConic),
        }
    }
}

/// Whether the conic `rho = 0` is singular, i.e. its symmetric matrix is
/// degenerate.
pub fn conic_singular(rho: &GradedPoly) -> Result<bool, SchwarzError> {
    if rho.is_zero() {
        return Err(SchwarzError::ZeroConic);
    }
    let det = quadratic_form_det(rho).ok_or(SchwarzError::NotAConic(rho.grading()))?;
    Ok(det.is_zero())
}

fn delta(k: u64, d: u64) -> bool {
    d + 1 >= k
}

/// `h^0(End_0 V_k(d)) = d(d+1)/2 + [d >= k-1]((d+2)^2 - k^2)`.
pub fn end0_h0_closed_form(k: u64, d: u64) -> Result<u64, SchwarzError> {
    check_k(k)?;
    let base = d * (d + 1) / 2;
    Ok(if delta(k, d) { base + (d + 2) * (d + 2) - k * k } else { base })
}

/// `h^1(End_0 V_k(d))`: zero for `d >= k-1`, else `k^2 - d^2 - 4d - 4`.
pub fn end0_h1_closed_form(k: u64, d: u64) -> Result<u64, SchwarzError> {
    check_k(k)?;
    Ok(if delta(k, d) { 0 } else { k * k - (d + 2) * (d + 2) })
}

/// `h^0(End_0 V_k (x) T)`: 8 for `k = 3`, 3 for `k > 3`, with the chase
/// arithmetic.
pub fn end0_tensor_t_closed_form(k: u64) -> Result<(u64, Vec<String>), SchwarzError> {
    check_k(k)?;
    let mut ledger = vec!["h0(f*T) = 11".to_string()];
    let total = if k == 3 {
        ledger.push("h0(f*T(1-k,1+k)) = h0(O(0,4)) = 5".into());
        ledger.push("11 + 5 = 16".into());
        16
    } else {
        ledger.push("h0(f*T(1-k,1+k)) = 0".into());
        11
    };
    let h0 = total - 8;
    ledger.push(format!("{total} − 8 = {h0}"));
    Ok((h0, ledger))
}

/// `h^1(End_0 V_k (x) T)` from `h^0`, `h^2 = 0` and `chi = 26 - 2k^2`.
pub fn end0_tensor_t_h1_closed_form(k: u64) -> Result<u64, SchwarzError> {
    let (h0, _) = end0_tensor_t_closed_form(k)?;
    Ok(h0 + 2 * k * k - 26)
}

/// The five sheaves of the dimension tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableSheaf {
    Twist(u64),
    TensorT,
}

impl TableSheaf {
    pub const ROWS: [TableSheaf; 5] = [
        TableSheaf::Twist(0),
        TableSheaf::Twist(1),
        TableSheaf::Twist(2),
        TableSheaf::TensorT,
        TableSheaf::Twist(3),
    ];

    pub fn label(self) -> String {
        match self {
            TableSheaf::Twist(0) => "End0 V".into(),
            TableSheaf::Twist(d) => format!("End0 V({d})"),
            TableSheaf::TensorT => "End0 V ⊗ T".into(),
        }
    }
}

fn closed_route(k: u64, s: TableSheaf) -> Result<CohomProfile, SchwarzError> {
    match s {
        TableSheaf::Twist(d) => {
            let h0 = end0_h0_closed_form(k, d)?;
            let h1 = end0_h1_closed_form(k, d)?;
            let ledger = vec![format!(
                "h0 = {} + {}",
                d * (d + 1) / 2,
                if delta(k, d) { format!("({}² − {}²)", d + 2, k) } else { "0".into() }
            )];
            Ok(CohomProfile::new([h0, h1, 0], Route::ClosedForm).with_ledger(ledger))
        }
        TableSheaf::TensorT => {
            let (h0, ledger) = end0_tensor_t_closed_form(k)?;
            let h1 = end0_tensor_t_h1_closed_form(k)?;
            Ok(CohomProfile::new([h0, h1, 0], Route::ClosedForm).with_ledger(ledger))
        }
    }
}

fn exact_middle(terms: [Term; 3], ledger: &mut Vec<String>) -> Result<[u64; 3], SchwarzError> {
    let r = les_chase(&terms, &[])?;
    ledger.extend(r.ledger.iter().cloned());
    r.exact().ok_or_else(|| SchwarzError::ChaseUnresolved(r.ledger.join("; ")))
}

fn minus(a: [u64; 3], b: [u64; 3], what: &str, ledger: &mut Vec<String>) -> [u64; 3] {
    let out = [0, 1, 2].map(|i| a[i] - b[i]);
    ledger.push(format!(
        "remove {what}: ({}, {}, {}) − ({}, {}, {}) = ({}, {}, {})",
        a[0], a[1], a[2], b[0], b[1], b[2], out[0], out[1], out[2]
    ));
    out
}

/// Pulls back to the quadric, where `H^i(End V_k(d)) = H^i(f^* V_k^* (d, d+k))`
/// and `H^i(End V_k (x) T) = H^i(f^*(V_k^* (x) T)(0, k))`, then removes the
/// trace summand.
pub fn kunneth_route(k: u64, s: TableSheaf) -> Result<CohomProfile, SchwarzError> {
    check_k(k)?;
    let ki = k as i64;
    let mut ledger = Vec::new();
    let dims = match s {
        TableSheaf::Twist(d) => {
            let d = d as i64;
            let (a, b) = (d - ki + 1, d + ki + 1);
            let end = exact_middle(
                [
                    Term::known(format!("O({d},{d})"), quadric_dims(d, d)),
                    Term::unknown(format!("f*V*({d},{})", d + ki)),
                    Term::known(format!("O({a},{b})"), quadric_dims(a, b)),
                ],
                &mut ledger,
            )?;
            minus(end, p2_dims(d), &format!("trace O({d})"), &mut ledger)
        }
        TableSheaf::TensorT => {
            let pull_t = exact_middle(
                [
                    Term::known("O(2,0)", quadric_dims(2, 0)),
                    Term::unknown("f*T"),
                    Term::known("O(1,3)", quadric_dims(1, 3)),
                ],
                &mut ledger,
            )?;
            let (a, b) = (1 - ki, 1 + ki);
            let twisted = exact_middle(
                [
                    Term::known(format!("O({},{})", 3 - ki, 1 + ki), quadric_dims(3 - ki, 1 + ki)),
                    Term::unknown(format!("f*T({a},{b})")),
                    Term::known(format!("O({},{})", 2 - ki, 4 + ki), quadric_dims(2 - ki, 4 + ki)),
                ],
                &mut ledger,
            )?;
            let end = exact_middle(
                [
                    Term::known("f*T", pull_t),
                    Term::unknown(format!("f*(V*⊗T)(0,{k})")),
                    Term::known(format!("f*T({a},{b})"), twisted),
                ],
                &mut ledger,
            )?;
            let out = minus(end, [8, 0, 0], "trace T", &mut ledger);
            ledger.push(format!("{} − 8 = {}", end[0], out[0]));
            out
        }
    };
    Ok(CohomProfile::new(dims, Route::KunnethChase).with_ledger(ledger))
}

/// Euler characteristic by Riemann-Roch on the plane.
pub fn rr_chi(k: u64, s: TableSheaf) -> Result<i64, SchwarzError> {
    check_k(k)?;
    let end0 = endo_ch(&schwarz_chern(k).0);
    Ok(match s {
        TableSheaf::Twist(d) => chi_rr(&end0, d as i64)?,
        TableSheaf::TensorT => {
            chi_rr(&tensor_ch(&end0, &ChernCharacter::from_chern(&tangent_chern())), 0)?
        }
    })
}

/// Promotes `chi` to a profile using `h^2 = 0` and an independently known
/// `h^0`.
pub fn rr_route(k: u64, s: TableSheaf, known_h0: u64) -> Result<CohomProfile, SchwarzError> {
    let chi = rr_chi(k, s)?;
    let h1 = known_h0 as i64 - chi;
    if h1 < 0 {
        return Err(SchwarzError::RouteDisagreement {
            k,
            sheaf: s.label(),
            diff: format!("h0 = {known_h0} exceeds chi = {chi} with h2 = 0"),
        });
    }
    let ledger = vec![
        format!("chi = {chi}"),
        "h2 = h0(End0 V(-d-3))^∨ = 0 by stability".into(),
        format!("h1 = h0 − chi = {known_h0} − ({chi}) = {h1}"),
    ];
    Ok(CohomProfile::new([known_h0, h1 as u64, 0], Route::RiemannRoch).with_ledger(ledger))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub sheaf: TableSheaf,
    pub label: String,
    pub dims: [u64; 3],
    pub profiles: Vec<CohomProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub k: u64,
    pub rows: Vec<TableRow>,
}

impl DimTable {
    pub fn dims(&self) -> Vec<[u64; 3]> {
        self.rows.iter().map(|r| r.dims).collect()
    }

    /// Rows `End0 V, (1), (2), ⊗ T, (3)` with columns `h0 h1 h2`.
    pub fn to_markdown(&self) -> String {
        let mut s = format!("k = {}\n\n| sheaf | h0 | h1 | h2 |\n|---|---|---|---|\n", self.k);
        for r in &self.rows {
            let _ = writeln!(s, "| {} | {} | {} | {} |", r.label, r.dims[0], r.dims[1], r.dims[2]);
        }
        s
    }
}

/// Computes one cell by the requested routes and checks they agree.
pub fn table_row(k: u64, s: TableSheaf, routes: &[Route]) -> Result<TableRow, SchwarzError> {
    let closed = closed_route(k, s)?;
    let mut profiles = Vec::new();
    for r in routes {
        profiles.push(match r {
            Route::ClosedForm => closed.clone(),
            Route::KunnethChase => kunneth_route(k, s)?,
            Route::RiemannRoch => rr_route(k, s, closed.h0)?,
            Route::SymbolicRank => continue,
        });
    }
    let dims = profiles.first().map_or(closed.dims(), CohomProfile::dims);
    for p in &profiles {
        if p.dims() != dims {
            return Err(SchwarzError::RouteDisagreement {
                k,
                sheaf: s.label(),
                diff: format!("{} gives {:?}, {} gives {:?}", profiles[0].route, dims, p.route, p.dims()),
            });
        }
    }
    Ok(TableRow { sheaf: s, label: s.label(), dims, profiles })
}

pub const ALL_ROUTES: [Route; 3] = [Route::ClosedForm, Route::KunnethChase, Route::RiemannRoch];

pub fn build_table_with(k: u64, routes: &[Route]) -> Result<DimTable, SchwarzError> {
    check_k(k)?;
    let rows = TableSheaf::ROWS.iter().map(|&s| table_row(k, s, routes)).collect::<Result<_, _>>()?;
    Ok(DimTable { k, rows })
}

pub fn build_table(k: u64) -> Result<DimTable, SchwarzError> {
    build_table_with(k, &ALL_ROUTES)
}

/// Which rank-2 family a normalized Chern class belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChernFamily {
    /// `(0, n(n-1))`
    EvenDegree,
    /// `(-1, n^2)`
    OddDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedChern {
    pub c1: i64,
    pub c2: i64,
    pub family: ChernFamily,
    /// `n` in `(0, n(n-1))` or `(-1, n^2)`.
    pub family_index: i64,
    pub twist: i64,
}

/// Twists `V_k` so that `c1` is 0 or -1. `k = 2j+1` gives `(0, j(j+1))`,
/// family index `j+1`; `k = 2j` gives `(-1, j^2)`, family index `j`.
pub fn chern_coverage(k: u64) -> NormalizedChern {
    let j = (k / 2) as i64;
    let twist = -j;
    let c = chern_twist(schwarz_chern(k).0, twist).expect("rank 2");
    let (family, family_index) = if k % 2 == 1 {
        (ChernFamily::EvenDegree, j + 1)
    } else {
        (ChernFamily::OddDegree, j)
    };
    NormalizedChern { c1: c.c1, c2: c.c2, family, family_index, twist }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;
    use crate::sheafdim::ChernData;

    #[test]
    fn closed_form_examples() {
        assert_eq!(end0_h0_closed_form(3, 2), Ok(10));
        assert_eq!(end0_h0_closed_form(3, 3), Ok(22));
        assert_eq!(end0_h0_closed_form(4, 3), Ok(15));
        assert_eq!(end0_h0_closed_form(5, 3), Ok(6));
        assert_eq!(end0_h1_closed_form(3, 0), Ok(5));
        assert_eq!(end0_h1_closed_form(3, 1), Ok(0));
        for k in 4..10 {
            assert_eq!(end0_h1_closed_form(k, 1), Ok(k * k - 9));
        }
        assert_eq!(end0_h0_closed_form(2, 0), Err(SchwarzError::Domain { k: 2 }));
    }

    #[test]
    fn tensor_t_examples() {
        let (h0, ledger) = end0_tensor_t_closed_form(3).unwrap();
        assert_eq!(h0, 8);
        assert!(ledger.contains(&"11 + 5 = 16".to_string()));
        assert!(ledger.contains(&"16 − 8 = 8".to_string()));
        assert_eq!(end0_tensor_t_closed_form(4).unwrap().0, 3);
        assert_eq!(end0_tensor_t_closed_form(5).unwrap().0, 3);
        assert_eq!(end0_tensor_t_h1_closed_form(5), Ok(27));
    }

    #[test]
    fn kunneth_tensor_t_ledger() {
        let p = kunneth_route(3, TableSheaf::TensorT).unwrap();
        assert_eq!(p.dims(), [8, 0, 0]);
        for line in ["h0(f*T) = 3 + 8 = 11", "h0(f*T(-2,4)) = 5", "h0(f*(V*⊗T)(0,3)) = 11 + 5 = 16", "16 − 8 = 8"] {
            assert!(p.ledger.iter().any(|l| l == line), "missing {line}: {:?}", p.ledger);
        }
        let p = kunneth_route(5, TableSheaf::TensorT).unwrap();
        assert_eq!(p.dims(), [3, 27, 0]);
        assert!(p.ledger.iter().any(|l| l == "11 − 8 = 3"));
    }

    #[test]
    fn kunneth_matches_closed_forms() {
        for k in 3..=12 {
            for d in 0..=6 {
                let p = kunneth_route(k, TableSheaf::Twist(d)).unwrap();
                assert_eq!(p.h0, end0_h0_closed_form(k, d).unwrap(), "k={k} d={d}");
                assert_eq!(p.h1, end0_h1_closed_form(k, d).unwrap(), "k={k} d={d}");
                assert_eq!(p.h2, 0);
            }
        }
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(rr_chi(5, TableSheaf::Twist(0)), Ok(-21));
        assert_eq!(rr_chi(3, TableSheaf::TensorT), Ok(8));
        assert_eq!(rr_chi(4, TableSheaf::TensorT), Ok(-6));
        for k in 3..=12u64 {
            for d in 0..=6u64 {
                let expected = (3 * (d + 1) * (d + 2) / 2) as i64 - (k * k - 1) as i64;
                assert_eq!(rr_chi(k, TableSheaf::Twist(d)), Ok(expected));
            }
            assert_eq!(rr_chi(k, TableSheaf::TensorT), Ok(26 - 2 * (k * k) as i64));
        }
    }

    #[test]
    fn tables() {
        assert_eq!(
            build_table(3).unwrap().dims(),
            vec![[0, 5, 0], [1, 0, 0], [10, 0, 0], [8, 0, 0], [22, 0, 0]]
        );
        assert_eq!(
            build_table(4).unwrap().dims(),
            vec![[0, 12, 0], [1, 7, 0], [3, 0, 0], [3, 9, 0], [15, 0, 0]]
        );
        assert_eq!(
            build_table(6).unwrap().dims(),
            vec![[0, 32, 0], [1, 27, 0], [3, 20, 0], [3, 49, 0], [6, 11, 0]]
        );
        assert!(build_table(2).is_err());
        let md = build_table(3).unwrap().to_markdown();
        assert!(md.contains("| End0 V ⊗ T | 8 | 0 | 0 |"));
    }

    #[test]
    fn conic_classification() {
        assert_eq!(conic_singular(&parse("x0^2 + x1^2 + x2^2").unwrap()), Ok(false));
        assert_eq!(conic_singular(&parse("x0*x1").unwrap()), Ok(true));
        assert_eq!(conic_singular(&parse("x0*x1 - x2^2").unwrap()), Ok(false));
        assert_eq!(conic_singular(&parse("0").unwrap()), Err(SchwarzError::ZeroConic));
        assert_eq!(
            conic_singular(&parse("x0").unwrap()),
            Err(SchwarzError::NotAConic(Grading::Plane(1)))
        );
        let p = SchwarzParams::new(3, Some(parse("x0*x1").unwrap())).unwrap();
        assert_eq!(p.require_nonsingular(), Err(SchwarzError::SingularConic));
    }

    #[test]
    fn chern_normalization() {
        let n = chern_coverage(3);
        assert_eq!((n.c1, n.c2, n.family_index), (0, 2, 2));
        let n = chern_coverage(4);
        assert_eq!((n.c1, n.c2, n.family_index), (-1, 4, 2));
        let n = chern_coverage(0);
        assert_eq!((n.c1, n.c2), (-1, 0));
        assert_eq!(chern_twist(schwarz_chern(4).0, -2), Ok(ChernData::new(2, -1, 4)));
        for k in 0..12 {
            let (a, b) = (chern_coverage(k), chern_coverage(k + 2));
            assert_eq!(a.family, b.family);
            assert!(b.c2 > a.c2);
            match a.family {
                ChernFamily::EvenDegree => assert_eq!(a.c2, a.family_index * (a.family_index - 1)),
                ChernFamily::OddDegree => assert_eq!(a.c2, a.family_index * a.family_index),
            }
        }
    }
}
