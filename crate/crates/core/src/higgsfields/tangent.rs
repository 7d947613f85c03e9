//! Higgs fields on the tangent bundle, `Phi = sum a_ij phi_i (x) C_j` with
//! `phi_i` running over `end0t_basis(1)` and `C_j` over `tfield_basis(-1)`.

use std::sync::OnceLock;

use num_traits::Zero;

use crate::eulercalc::{end0t_basis, tfield_basis, wedge, EndoTSection};
use crate::exactlin::{zero_vec, ExactMatrix, Scalar};
use crate::polyring::quadratic_form_det;
use crate::sampling::{random_end0t, SampleRng};

use super::HiggsError;

const ROWS: usize = 6;
const COLS: usize = 3;
const WEDGE_DIM: usize = 27;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentHiggs {
    /// Row-major `a_ij`, `i < 6`, `j < 3`.
    a: Vec<Scalar>,
}

impl TangentHiggs {
    pub fn new(table: Vec<Vec<Scalar>>) -> Result<Self, HiggsError> {
        let cols = table.first().map_or(0, Vec::len);
        if table.len() != ROWS || table.iter().any(|r| r.len() != COLS) {
            return Err(HiggsError::TableShape { rows: table.len(), cols });
        }
        Ok(TangentHiggs { a: table.into_iter().flatten().collect() })
    }

    /// From the 18 coefficients in row-major order.
    pub fn from_coords(coords: &[Scalar]) -> Result<Self, HiggsError> {
        if coords.len() != ROWS * COLS {
            return Err(HiggsError::TableShape { rows: coords.len() / COLS, cols: COLS });
        }
        Ok(TangentHiggs { a: coords.to_vec() })
    }

    pub fn zero() -> Self {
        TangentHiggs { a: zero_vec(ROWS * COLS) }
    }

    /// The simple tensor `(sum u_i phi_i) (x) (sum v_j C_j)`.
    pub fn simple(u: &[Scalar], v: &[Scalar]) -> Self {
        assert_eq!((u.len(), v.len()), (ROWS, COLS), "simple tensor factors have sizes 6 and 3");
        TangentHiggs { a: u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.a[COLS * i + j]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.a
    }

    pub fn rank(&self) -> usize {
        ExactMatrix::from_rows(COLS, self.a.chunks(COLS).map(<[Scalar]>::to_vec).collect())
            .expect("rows of length 3")
            .rank()
    }
}

fn pair_index(n: usize, i: usize, k: usize) -> usize {
    // position of (i, k), i < k, in the lexicographic list of pairs
    i * (2 * n - i - 1) / 2 + (k - i - 1)
}

/// Coordinates of `[phi_i, phi_k] . (C_j ^ C_l)` in `End_0 T(3)`, indexed by
/// pair positions.
fn wedge_terms() -> &'static Vec<Vec<Vec<Scalar>>> {
    static TERMS: OnceLock<Vec<Vec<Vec<Scalar>>>> = OnceLock::new();
    TERMS.get_or_init(|| {
        let phi = end0t_basis(1);
        let c = tfield_basis(-1);
        let mut out = Vec::new();
        for i in 0..ROWS {
            for k in i + 1..ROWS {
                let br = EndoTSection::commutator(&phi[i], &phi[k]);
                let mut row = Vec::new();
                for j in 0..COLS {
                    for l in j + 1..COLS {
                        row.push(br.mul_poly(&wedge(&c[j], &c[l])).coords());
                    }
                }
                out.push(row);
            }
        }
        out
    })
}

/// `Phi ^ Phi` in coordinates of `End_0 T(3)`:
/// `sum_{i<k, j<l} (a_ij a_kl - a_il a_kj) [phi_i, phi_k] C_j ^ C_l`.
pub fn tangent_wedge(phi: &TangentHiggs) -> Vec<Scalar> {
    tangent_bilinear(phi, phi)
}

/// The symmetric bilinear form with `tangent_bilinear(p, p) = tangent_wedge(p)`,
/// up to a factor of 2 off the diagonal.
fn tangent_bilinear(p: &TangentHiggs, r: &TangentHiggs) -> Vec<Scalar> {
    let terms = wedge_terms();
    let mut out = zero_vec(WEDGE_DIM);
    for i in 0..ROWS {
        for k in i + 1..ROWS {
            for j in 0..COLS {
                for l in j + 1..COLS {
                    let m = p.get(i, j) * r.get(k, l) - p.get(i, l) * r.get(k, j);
                    if m.is_zero() {
                        continue;
                    }
                    let v = &terms[pair_index(ROWS, i, k)][pair_index(COLS, j, l)];
                    for (o, x) in out.iter_mut().zip(v) {
                        *o += &m * x;
                    }
                }
            }
        }
    }
    out
}

/// The differential of `Phi -> Phi ^ Phi` at `phi`, a 27 x 18 matrix,
/// computed as `Q(phi + e) - Q(phi) - Q(e)` on unit tables `e`.
pub fn tangent_wedge_linearization(phi: &TangentHiggs) -> ExactMatrix {
    let base = tangent_wedge(phi);
    let cols: Vec<Vec<Scalar>> = (0..ROWS * COLS)
        .map(|m| {
            let mut e = zero_vec(ROWS * COLS);
            e[m] = Scalar::from_integer(1.into());
            let e = TangentHiggs { a: e };
            let sum = TangentHiggs { a: phi.a.iter().zip(&e.a).map(|(x, y)| x + y).collect() };
            let (qs, qe) = (tangent_wedge(&sum), tangent_wedge(&e));
            (0..WEDGE_DIM).map(|t| &qs[t] - &base[t] - &qe[t]).collect()
        })
        .collect();
    ExactMatrix::from_columns(WEDGE_DIM, &cols).expect("uniform column length")
}

/// Rank of the coefficient table is at most 1.
pub fn simple_tensor_test(phi: &TangentHiggs) -> bool {
    phi.rank() <= 1
}

/// Rank of `psi -> [psi, phi]` from `H^0(End_0 T(1))` to `H^0(End_0 T(2))`.
pub fn commutator_rank(phi: &EndoTSection) -> usize {
    let cols: Vec<Vec<Scalar>> = end0t_basis(1)
        .iter()
        .map(|psi| EndoTSection::commutator(psi, phi).coords())
        .collect();
    let rows = cols[0].len();
    ExactMatrix::from_columns(rows, &cols).expect("uniform column length").rank()
}

/// `det phi` is a nonsingular conic. Then `phi` vanishes nowhere, its
/// eigenvalues are distinct away from the conic, and the spectral cover is
/// smooth.
pub fn has_smooth_spectral_conic(phi: &EndoTSection) -> bool {
    quadratic_form_det(&phi.det()).is_some_and(|d| !d.is_zero())
}

/// Rank of the differential of `det` at `phi`, as a map
/// `H^0(End_0 T(1)) -> H^0(O(2))`.
pub fn det_jacobian_rank(phi: &EndoTSection) -> usize {
    let base = phi.det();
    let cols: Vec<Vec<Scalar>> = end0t_basis(1)
        .iter()
        .map(|e| (&(&phi.add(e).det() - &base) - &e.det()).coord_vector())
        .collect();
    ExactMatrix::from_columns(6, &cols).expect("uniform column length").rank()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetProbeReport {
    pub samples: usize,
    pub evenness_failures: usize,
    /// Samples whose determinant is a nonsingular conic.
    pub jacobian_checked: usize,
    pub jacobian_failures: usize,
    /// Samples with `det phi` nonzero but singular; the differential is not
    /// required to have full rank there.
    pub singular_nonzero: usize,
}

impl DetProbeReport {
    pub fn passed(&self) -> bool {
        self.evenness_failures == 0 && self.jacobian_failures == 0 && self.jacobian_checked > 0
    }
}

/// Local evidence that `det` is 2:1: exact evenness, and a full-rank
/// differential at samples with smooth spectral conic.
pub fn det_double_cover_probe(rng: &mut SampleRng, samples: usize) -> DetProbeReport {
    let mut rep = DetProbeReport { samples, ..Default::default() };
    for _ in 0..samples {
        let phi = random_end0t(rng, 1);
        let d = phi.det();
        if phi.neg().det() != d {
            rep.evenness_failures += 1;
        }
        if has_smooth_spectral_conic(&phi) {
            rep.jacobian_checked += 1;
            if det_jacobian_rank(&phi) != 6 {
                rep.jacobian_failures += 1;
            }
        } else if !d.is_zero() {
            rep.singular_nonzero += 1;
        }
    }
    rep
}

/// Rank of `sum a_ij phi_i (x) C_j -> (Theta ^ C_1, Theta ^ C_2, Theta ^ C_3)`
/// into `H^0(End_0 T(2))^3`. Full rank 18 shows the simple tensors are
/// independent in `H^0(End_0 T (x) T)`.
pub fn tangent_tensor_rank() -> usize {
    let phi = end0t_basis(1);
    let c = tfield_basis(-1);
    let cols: Vec<Vec<Scalar>> = (0..ROWS)
        .flat_map(|i| (0..COLS).map(move |j| (i, j)))
        .map(|(i, j)| {
            c.iter()
                .flat_map(|e| {
                    let w = wedge(&c[j], e);
                    if w.is_zero() {
                        zero_vec(15)
                    } else {
                        phi[i].mul_poly(&w).coords()
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_columns(45, &cols).expect("uniform column length").rank()
}
