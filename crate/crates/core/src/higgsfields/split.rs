//! Higgs fields `[[A, B], [C, -A]]` on `O(m1) + O(m2)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::eulercalc::{
    sym_prod, tfield_basis, wedge, ProjPoint, Section, Sym2Section, TwistedVectorField,
};
use crate::exactlin::{span_basis, ExactMatrix, Scalar};
use crate::polyring::{basis, Grading, GradedPoly};

use super::HiggsError;

type Tvf = TwistedVectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitHiggs {
    m1: i64,
    m2: i64,
    a: Tvf,
    b: Tvf,
    c: Tvf,
}

fn check_twist(component: &'static str, u: &Tvf, expected: i64) -> Result<(), HiggsError> {
    if u.twist() == expected {
        Ok(())
    } else {
        Err(HiggsError::TwistMismatch { component, expected, found: u.twist() })
    }
}

/// `f * u` as a section of `T(twist)`, allowing zero factors of negative
/// degree.
fn times(f: &GradedPoly, u: &Tvf, twist: i64) -> Tvf {
    if f.is_zero() || u.is_zero() {
        return Tvf::zero(twist);
    }
    let out = u.mul_poly(f);
    debug_assert_eq!(out.twist(), twist);
    out
}

fn combine(terms: &[(&GradedPoly, &Tvf)], twist: i64) -> Tvf {
    terms.iter().fold(Tvf::zero(twist), |acc, (f, u)| acc.add(&times(f, u, twist)))
}

fn regrade(p: &GradedPoly, d: i64) -> Option<GradedPoly> {
    match p.grading() {
        Grading::Plane(e) if e == d => Some(p.clone()),
        _ if p.is_zero() => Some(GradedPoly::zero(Grading::Plane(d))),
        _ => None,
    }
}

impl SplitHiggs {
    pub fn new(m1: i64, m2: i64, a: Tvf, b: Tvf, c: Tvf) -> Result<Self, HiggsError> {
        check_twist("A", &a, 0)?;
        check_twist("B", &b, m1 - m2)?;
        check_twist("C", &c, m2 - m1)?;
        Ok(SplitHiggs { m1, m2, a, b, c })
    }

    pub fn zero(m1: i64, m2: i64) -> Self {
        SplitHiggs { m1, m2, a: Tvf::zero(0), b: Tvf::zero(m1 - m2), c: Tvf::zero(m2 - m1) }
    }

    pub fn bundle(&self) -> (i64, i64) {
        (self.m1, self.m2)
    }

    pub fn a(&self) -> &Tvf {
        &self.a
    }

    pub fn b(&self) -> &Tvf {
        &self.b
    }

    pub fn c(&self) -> &Tvf {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// The same field on `O(m2) + O(m1)`.
    pub fn swapped(&self) -> Self {
        SplitHiggs {
            m1: self.m2,
            m2: self.m1,
            a: self.a.scale(&-Scalar::one()),
            b: self.c.clone(),
            c: self.b.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bundle(), other.bundle(), "adding Higgs fields on different bundles");
        SplitHiggs {
            m1: self.m1,
            m2: self.m2,
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
            c: self.c.add(&other.c),
        }
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        SplitHiggs {
            m1: self.m1,
            m2: self.m2,
            a: self.a.scale(t),
            b: self.b.scale(t),
            c: self.c.scale(t),
        }
    }
}

impl fmt::Display for SplitHiggs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}) + O({}): A = {}, B = {}, C = {}", self.m1, self.m2, self.a, self.b, self.c)
    }
}

/// The integrability tensor, `[[B^C, 2 A^B], [2 C^A, C^B]]`.
pub fn phi_wedge_phi(h: &SplitHiggs) -> [[GradedPoly; 2]; 2] {
    let two = Scalar::from_integer(2.into());
    [
        [wedge(&h.b, &h.c), wedge(&h.a, &h.b).scale(&two)],
        [wedge(&h.c, &h.a).scale(&two), wedge(&h.c, &h.b)],
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// Semistable, not stable, and a direct sum of invariant lines.
    Polystable,
    /// Semistable with a single invariant line.
    Semistable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: Stability,
    pub witness: Option<String>,
}

impl StabilityReport {
    fn new(verdict: Stability, witness: Option<String>) -> Self {
        StabilityReport { verdict, witness }
    }

    pub fn is_stable(&self) -> bool {
        self.verdict == Stability::Stable
    }

    pub fn is_semistable(&self) -> bool {
        self.verdict != Stability::Unstable
    }
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    let r = Scalar::new(n, d);
    (&r * &r == *x).then_some(r)
}

fn line(alpha: &Scalar, beta: &Scalar) -> String {
    let (a, b) = if alpha.is_zero() {
        (Scalar::zero(), Scalar::one())
    } else {
        (Scalar::one(), beta / alpha)
    };
    format!("invariant line ({a} : {b})")
}

/// Sub-line-bundle test. Only `O(m)` with `2m >= m1 + m2` can destabilize,
/// and for `|m1 - m2| <= 1` these are the summands themselves or the
/// constant lines of `O + O`.
pub fn is_stable_split(h: &SplitHiggs) -> StabilityReport {
    let (m1, m2) = h.bundle();
    let top = m1.max(m2);
    if (m1 - m2).abs() >= 2 {
        return StabilityReport::new(Stability::Unstable, Some(format!("destabilizing O({top})")));
    }
    if m1 > m2 || m2 > m1 {
        let arrow = if m1 > m2 { &h.c } else { &h.b };
        return if arrow.is_zero() {
            StabilityReport::new(
                Stability::Unstable,
                Some(format!("O({top}) is invariant and destabilizing")),
            )
        } else {
            StabilityReport::new(Stability::Stable, None)
        };
    }
    // A constant line (alpha : beta) is invariant iff
    // 2 alpha beta A + beta^2 B - alpha^2 C = 0; each basis coordinate gives
    // the binary quadratic c alpha^2 - 2a alpha beta - b beta^2.
    let (ca, cb, cc) = (h.a.coords(), h.b.coords(), h.c.coords());
    let two = Scalar::from_integer(2.into());
    let rows: Vec<Vec<Scalar>> = (0..ca.len())
        .map(|i| vec![cc[i].clone(), -(&two * &ca[i]), -cb[i].clone()])
        .collect();
    let span = span_basis(&rows, 3);
    match span.len() {
        0 => StabilityReport::new(
            Stability::Polystable,
            Some("the zero field preserves every constant line".into()),
        ),
        1 => {
            let p = &span[0];
            let disc = &p[1] * &p[1] - Scalar::from_integer(4.into()) * &p[0] * &p[2];
            if disc.is_zero() {
                let (alpha, beta) = if p[0].is_zero() {
                    (Scalar::one(), Scalar::zero())
                } else {
                    (-p[1].clone(), &two * &p[0])
                };
                return StabilityReport::new(Stability::Semistable, Some(line(&alpha, &beta)));
            }
            let witness = match (rational_sqrt(&disc), p[0].is_zero()) {
                (_, true) => format!("{} and {}", line(&Scalar::one(), &Scalar::zero()), line(&-p[2].clone(), &p[1])),
                (Some(r), false) => format!(
                    "{} and {}",
                    line(&(-&p[1] + &r), &(&two * &p[0])),
                    line(&(-&p[1] - &r), &(&two * &p[0]))
                ),
                (None, false) => format!(
                    "two invariant lines (alpha : beta) with {} alpha^2 + {} alpha beta + {} beta^2 = 0",
                    p[0], p[1], p[2]
                ),
            };
            StabilityReport::new(Stability::Polystable, Some(witness))
        }
        2 => {
            let kernel = ExactMatrix::from_rows(3, span).expect("rows of length 3").kernel_basis();
            let n = &kernel[0];
            if &n[1] * &n[1] == &n[0] * &n[2] {
                let (alpha, beta) = if n[0].is_zero() {
                    (Scalar::zero(), Scalar::one())
                } else {
                    (n[0].clone(), n[1].clone())
                };
                StabilityReport::new(Stability::Semistable, Some(line(&alpha, &beta)))
            } else {
                StabilityReport::new(Stability::Stable, None)
            }
        }
        _ => StabilityReport::new(Stability::Stable, None),
    }
}

/// Solutions of `A ^ C = 0` and `B ^ C = 0` for a fixed `C`.
#[derive(Clone, Debug)]
pub struct IntegrableFamily {
    pub m1: i64,
    pub m2: i64,
    pub c: Tvf,
    pub a_solutions: Vec<Tvf>,
    pub b_solutions: Vec<Tvf>,
    /// `(h^0(O(m1 - m2)), h^0(O(2(m1 - m2))))`, the dimensions when every
    /// solution is a multiple of `C`.
    pub expected: (usize, usize),
    /// Whether every solution is `lambda C` resp. `mu C`.
    pub multiplier_form: bool,
}

impl IntegrableFamily {
    /// The field with `A` and `B` given by coordinates in the solution
    /// bases.
    pub fn field(&self, a: &[Scalar], b: &[Scalar]) -> SplitHiggs {
        let sum = |basis: &[Tvf], coeffs: &[Scalar], twist: i64| {
            basis.iter().zip(coeffs).fold(Tvf::zero(twist), |acc, (u, t)| acc.add(&u.scale(t)))
        };
        SplitHiggs {
            m1: self.m1,
            m2: self.m2,
            a: sum(&self.a_solutions, a, 0),
            b: sum(&self.b_solutions, b, self.m1 - self.m2),
            c: self.c.clone(),
        }
    }
}

/// The matrix of `u -> u ^ c` on `H^0(T(d))`, columns in `tfield_basis(d)`.
fn wedge_matrix(c: &Tvf, d: i64) -> ExactMatrix {
    let cols: Vec<Vec<Scalar>> =
        tfield_basis(d).iter().map(|u| wedge(u, c).coord_vector()).collect();
    let rows = Grading::Plane(3 + d + c.twist()).basis_size();
    ExactMatrix::from_columns(rows, &cols).expect("uniform column length")
}

/// Canonical basis of the kernel of `u -> u ^ c` on `H^0(T(d))`.
pub fn wedge_kernel(c: &Tvf, d: i64) -> Vec<Tvf> {
    wedge_matrix(c, d).kernel_basis().iter().map(|k| Tvf::from_coords(d, k)).collect()
}

pub fn solve_integrable(c: &Tvf, m1: i64, m2: i64) -> Result<IntegrableFamily, HiggsError> {
    check_twist("C", c, m2 - m1)?;
    if (m1 - m2).abs() >= 2 {
        return Err(HiggsError::NotStable { witness: format!("destabilizing O({})", m1.max(m2)) });
    }
    if c.is_zero() {
        return Err(HiggsError::ZeroSection);
    }
    let a_solutions = wedge_kernel(c, 0);
    let b_solutions = wedge_kernel(c, m1 - m2);
    let expected =
        (Grading::Plane(m1 - m2).basis_size(), Grading::Plane(2 * (m1 - m2)).basis_size());
    let multiplier_form = (a_solutions.len(), b_solutions.len()) == expected;
    Ok(IntegrableFamily { m1, m2, c: c.clone(), a_solutions, b_solutions, expected, multiplier_form })
}

/// The polynomial `f` with `u = f c`, if one exists (`c` nonzero).
pub fn divide_by(u: &Tvf, c: &Tvf) -> Option<GradedPoly> {
    let d = u.twist() - c.twist();
    if u.is_zero() {
        return Some(GradedPoly::zero(Grading::Plane(d)));
    }
    if d < 0 || c.is_zero() {
        return None;
    }
    let g = Grading::Plane(d);
    let monos = basis(g).monomials;
    let cols: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|e| c.mul_poly(&GradedPoly::monomial(g, *e, Scalar::one())).coords())
        .collect();
    let target = u.coords();
    let m = ExactMatrix::from_columns(target.len(), &cols).expect("uniform column length");
    let sol = m.solve(&target).expect("dimensions agree")?;
    Some(GradedPoly::from_coords(g, &sol))
}

/// `A = lambda C`, `B = mu C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multipliers {
    pub lambda: GradedPoly,
    pub mu: GradedPoly,
}

/// An automorphism `[[a, b], [c, d]]` of `O(m1) + O(m2)`; `b` has degree
/// `m1 - m2`, `c` degree `m2 - m1` and the determinant is a nonzero
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    m1: i64,
    m2: i64,
    e: [GradedPoly; 4],
}

impl Gauge {
    pub fn new(m1: i64, m2: i64, e: [GradedPoly; 4]) -> Result<Self, HiggsError> {
        let degs = [0, m1 - m2, m2 - m1, 0];
        let mut out = Vec::with_capacity(4);
        for (k, p) in e.iter().enumerate() {
            let r = regrade(p, degs[k]).ok_or(HiggsError::GaugeDegree {
                row: k / 2 + 1,
                col: k % 2 + 1,
                expected: degs[k],
            })?;
            out.push(r);
        }
        let g = Gauge { m1, m2, e: out.try_into().expect("four entries") };
        if g.det().is_zero() {
            return Err(HiggsError::SingularGauge);
        }
        Ok(g)
    }

    /// `[[1, lambda], [0, 1]]`.
    pub fn upper(m1: i64, m2: i64, lambda: &GradedPoly) -> Result<Self, HiggsError> {
        let one = GradedPoly::constant(Scalar::one());
        let zero = GradedPoly::zero(Grading::Plane(m2 - m1));
        Self::new(m1, m2, [one.clone(), lambda.clone(), zero, one])
    }

    pub fn diagonal(m1: i64, m2: i64, t1: &Scalar, t2: &Scalar) -> Result<Self, HiggsError> {
        Self::new(
            m1,
            m2,
            [
                GradedPoly::constant(t1.clone()),
                GradedPoly::zero(Grading::Plane(m1 - m2)),
                GradedPoly::zero(Grading::Plane(m2 - m1)),
                GradedPoly::constant(t2.clone()),
            ],
        )
    }

    pub fn det(&self) -> Scalar {
        let d = &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2]);
        d.coefficient(&[0; 4])
    }

    /// `Psi^{-1} Phi Psi`.
    pub fn conjugate(&self, h: &SplitHiggs) -> Result<SplitHiggs, HiggsError> {
        if h.bundle() != (self.m1, self.m2) {
            return Err(HiggsError::BundleMismatch { gauge: (self.m1, self.m2), field: h.bundle() });
        }
        let (m1, m2) = (self.m1, self.m2);
        let [a, b, c, d] = &self.e;
        let neg_a = h.a.scale(&-Scalar::one());
        let p11 = combine(&[(a, &h.a), (c, &h.b)], 0);
        let p12 = combine(&[(b, &h.a), (d, &h.b)], m1 - m2);
        let p21 = combine(&[(a, &h.c), (c, &neg_a)], m2 - m1);
        let p22 = combine(&[(b, &h.c), (d, &neg_a)], 0);
        let inv = Scalar::one() / self.det();
        let (nb, nc) = (b.scale(&-Scalar::one()), c.scale(&-Scalar::one()));
        let r11 = combine(&[(d, &p11), (&nb, &p21)], 0).scale(&inv);
        let r12 = combine(&[(d, &p12), (&nb, &p22)], m1 - m2).scale(&inv);
        let r21 = combine(&[(&nc, &p11), (a, &p21)], m2 - m1).scale(&inv);
        debug_assert_eq!(
            combine(&[(&nc, &p12), (a, &p22)], 0).scale(&inv),
            r11.scale(&-Scalar::one())
        );
        Ok(SplitHiggs { m1, m2, a: r11, b: r12, c: r21 })
    }
}

/// `Phi = [[0, q], [1, 0]] (x) C` on `O(m1) + O(m2)` with `m1 >= m2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    m1: i64,
    m2: i64,
    q: GradedPoly,
    c: Tvf,
}

impl NormalForm {
    pub fn new(m1: i64, m2: i64, q: GradedPoly, c: Tvf) -> Result<Self, HiggsError> {
        if m1 < m2 {
            return Err(HiggsError::Orientation { m1, m2 });
        }
        let dq = 2 * (m1 - m2);
        let found = match q.grading() {
            Grading::Plane(e) => e,
            Grading::Quadric(..) => -1,
        };
        let q = regrade(&q, dq).ok_or(HiggsError::MultiplierDegree { name: "q", expected: dq, found })?;
        check_twist("C", &c, m2 - m1)?;
        Ok(NormalForm { m1, m2, q, c })
    }

    pub fn bundle(&self) -> (i64, i64) {
        (self.m1, self.m2)
    }

    pub fn q(&self) -> &GradedPoly {
        &self.q
    }

    pub fn c(&self) -> &Tvf {
        &self.c
    }

    pub fn to_split(&self) -> SplitHiggs {
        SplitHiggs {
            m1: self.m1,
            m2: self.m2,
            a: Tvf::zero(0),
            b: times(&self.q, &self.c, self.m1 - self.m2),
            c: self.c.clone(),
        }
    }

    /// The action `(q, C) -> (t^-2 q, t C)`.
    pub fn act(&self, t: &Scalar) -> Self {
        let inv2 = Scalar::one() / (t * t);
        NormalForm { m1: self.m1, m2: self.m2, q: self.q.scale(&inv2), c: self.c.scale(t) }
    }

    /// Orbit representative with the first nonzero coordinate of `C` equal
    /// to 1.
    pub fn canonical(&self) -> Self {
        match self.c.coords().into_iter().find(|x| !x.is_zero()) {
            Some(lead) => self.act(&(Scalar::one() / lead)),
            None => self.clone(),
        }
    }

    /// `det Phi = -q C.C`.
    pub fn hitchin_det(&self) -> Sym2Section {
        sym_prod(&self.c, &self.c).mul_poly(&self.q).neg()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q = {}, C = {}", self.q, self.c)
    }
}

/// Whether `n2 = t . n1` for some nonzero complex `t`.
pub fn orbit_equal(n1: &NormalForm, n2: &NormalForm) -> bool {
    if n1.bundle() != n2.bundle() {
        return false;
    }
    let (c1, c2) = (n1.c.coords(), n2.c.coords());
    match c1.iter().position(|x| !x.is_zero()) {
        Some(i) => {
            let t = &c2[i] / &c1[i];
            !t.is_zero() && n1.act(&t) == *n2
        }
        // Every nonzero complex number is a square, so only the ray of q
        // matters.
        None if n2.c.is_zero() => match (n1.q.is_zero(), n2.q.is_zero()) {
            (true, true) => true,
            (false, false) => {
                let (v1, v2) = (n1.q.coord_vector(), n2.q.coord_vector());
                let i = v1.iter().position(|x| !x.is_zero()).expect("q nonzero");
                n1.q.scale(&(&v2[i] / &v1[i])) == n2.q
            }
            _ => false,
        },
        None => false,
    }
}

/// Conjugates by `[[1, lambda], [0, 1]]` to reach `[[0, q], [1, 0]] (x) C`
/// with `q = lambda^2 + mu`.
pub fn gauge_normalize(h: &SplitHiggs, m: &Multipliers) -> Result<(NormalForm, Gauge), HiggsError> {
    let (m1, m2) = h.bundle();
    if m1 < m2 {
        return Err(HiggsError::Orientation { m1, m2 });
    }
    let stab = is_stable_split(h);
    if stab.verdict == Stability::Unstable || h.c.is_zero() {
        let witness = stab.witness.unwrap_or_else(|| "C = 0 preserves the first summand".into());
        return Err(HiggsError::NotStable { witness });
    }
    let degree_of = |p: &GradedPoly| match p.grading() {
        Grading::Plane(e) => e,
        Grading::Quadric(..) => -1,
    };
    let lambda = regrade(&m.lambda, m1 - m2).ok_or(HiggsError::MultiplierDegree {
        name: "lambda",
        expected: m1 - m2,
        found: degree_of(&m.lambda),
    })?;
    let mu = regrade(&m.mu, 2 * (m1 - m2)).ok_or(HiggsError::MultiplierDegree {
        name: "mu",
        expected: 2 * (m1 - m2),
        found: degree_of(&m.mu),
    })?;
    if times(&lambda, &h.c, 0) != h.a || times(&mu, &h.c, m1 - m2) != h.b {
        return Err(HiggsError::NotIntegrable);
    }
    let gauge = Gauge::upper(m1, m2, &lambda)?;
    let q = &(&lambda * &lambda) + &mu;
    let normal = NormalForm::new(m1, m2, q, h.c.clone())?;
    let conj = gauge.conjugate(h)?;
    assert_eq!(conj, normal.to_split(), "gauge reconstruction failed");
    Ok((normal, gauge))
}

/// Recovers the multipliers and returns the canonical normal form.
pub fn normalize(h: &SplitHiggs) -> Result<NormalForm, HiggsError> {
    let (m1, m2) = h.bundle();
    if m1 < m2 {
        return Err(HiggsError::Orientation { m1, m2 });
    }
    if h.c.is_zero() || (m1 - m2).abs() >= 2 {
        let witness = is_stable_split(h).witness.unwrap_or_else(|| "C = 0".into());
        return Err(HiggsError::NotStable { witness });
    }
    if phi_wedge_phi(h).iter().flatten().any(|p| !p.is_zero()) {
        return Err(HiggsError::NotIntegrable);
    }
    let lambda = divide_by(&h.a, &h.c).ok_or(HiggsError::OutsideNormalFormLocus)?;
    let mu = divide_by(&h.b, &h.c).ok_or(HiggsError::OutsideNormalFormLocus)?;
    let (normal, _) = gauge_normalize(h, &Multipliers { lambda, mu })?;
    Ok(normal.canonical())
}

/// `det Phi = -(A.A) - (B.C)`, a section of `S^2 T`.
pub fn hitchin_det(h: &SplitHiggs) -> Sym2Section {
    sym_prod(&h.a, &h.a).add(&sym_prod(&h.b, &h.c)).neg()
}

/// A trace-free 2x2 field is nilpotent iff its determinant vanishes.
pub fn is_nilpotent(h: &SplitHiggs) -> bool {
    hitchin_det(h).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub checked: usize,
    /// Points where the value of `Phi` is zero, so `ker ad Phi` jumps.
    pub non_regular: Vec<ProjPoint>,
}

impl RegularityReport {
    pub fn is_regular(&self) -> bool {
        self.non_regular.is_empty()
    }
}

pub fn regularity_check(h: &SplitHiggs, points: &[ProjPoint]) -> RegularityReport {
    let vanishes = |u: &Tvf, p: &ProjPoint| u.value_at(p).iter().all(Zero::is_zero);
    let non_regular = points
        .iter()
        .filter(|p| vanishes(&h.a, p) && vanishes(&h.b, p) && vanishes(&h.c, p))
        .cloned()
        .collect();
    RegularityReport { checked: points.len(), non_regular }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulercalc::zero_locus;
    use crate::exactlin::{frac, int};
    use crate::polyring::parse;
    use crate::sampling::{random_nonzero_tfield, random_poly, random_tfield, rng, small_unit, small_vec};

    fn tvf(text: &str, twist: i64) -> Tvf {
        Tvf::parse(text, twist).unwrap()
    }

    fn multiple_form(c: &Tvf, lambda: &GradedPoly, mu: &GradedPoly) -> SplitHiggs {
        let d = -c.twist();
        SplitHiggs::new(d, 0, times(lambda, c, 0), times(mu, c, d), c.clone()).unwrap()
    }

    #[test]
    fn twists_are_checked() {
        let c = Tvf::constant_ints([1, 0, 0]);
        assert!(SplitHiggs::new(0, -1, Tvf::zero(0), Tvf::zero(1), c.clone()).is_ok());
        assert_eq!(
            SplitHiggs::new(0, 0, Tvf::zero(0), Tvf::zero(0), c),
            Err(HiggsError::TwistMismatch { component: "C", expected: 0, found: -1 })
        );
    }

    #[test]
    fn wedge_of_trivial_and_multiplier_fields() {
        let c = Tvf::constant_ints([1, 2, 0]);
        let h = SplitHiggs::new(0, -1, Tvf::zero(0), Tvf::zero(1), c.clone()).unwrap();
        assert!(phi_wedge_phi(&h).iter().flatten().all(GradedPoly::is_zero));
        let mut r = rng(11);
        for _ in 0..20 {
            let c = random_nonzero_tfield(&mut r, -1);
            let h = multiple_form(&c, &random_poly(&mut r, 1), &random_poly(&mut r, 2));
            let w = phi_wedge_phi(&h);
            assert!(w.iter().flatten().all(GradedPoly::is_zero));
        }
    }

    #[test]
    fn generic_field_is_not_integrable() {
        let mut r = rng(12);
        let h = SplitHiggs::new(
            0,
            -1,
            random_tfield(&mut r, 0),
            random_tfield(&mut r, 1),
            random_nonzero_tfield(&mut r, -1),
        )
        .unwrap();
        let w = phi_wedge_phi(&h);
        assert!(w.iter().flatten().any(|p| !p.is_zero()));
        assert_eq!(w[0][0], -&w[1][1]);
    }

    #[test]
    fn stability_on_twisted_sum() {
        let h = SplitHiggs::zero(0, -1);
        let s = is_stable_split(&h);
        assert_eq!(s.verdict, Stability::Unstable);
        assert_eq!(s.witness.as_deref(), Some("O(0) is invariant and destabilizing"));
        let c = Tvf::constant_ints([1, 0, 0]);
        let h = SplitHiggs::new(0, -1, Tvf::zero(0), Tvf::zero(1), c).unwrap();
        assert!(is_stable_split(&h).is_stable());
        assert!(is_stable_split(&h.swapped()).is_stable());
    }

    #[test]
    fn large_splitting_is_unstable() {
        for gap in 2..=5 {
            assert!(tfield_basis(-gap).is_empty());
            let s = is_stable_split(&SplitHiggs::zero(gap, 0));
            assert_eq!(s.verdict, Stability::Unstable);
            assert_eq!(s.witness, Some(format!("destabilizing O({gap})")));
        }
    }

    #[test]
    fn stability_on_trivial_sum() {
        let c = tvf("x0, x1, 0", 0);
        let b = tvf("x1, x2, x0", 0);
        let only_c = SplitHiggs::new(0, 0, Tvf::zero(0), Tvf::zero(0), c.clone()).unwrap();
        let s = is_stable_split(&only_c);
        assert_eq!(s.verdict, Stability::Semistable);
        assert_eq!(s.witness.as_deref(), Some("invariant line (0 : 1)"));
        assert_eq!(is_stable_split(&SplitHiggs::zero(0, 0)).verdict, Stability::Polystable);
        // Constant matrices times C always have an eigenline.
        let nf = NormalForm::new(0, 0, GradedPoly::constant(int(4)), c.clone()).unwrap();
        let s = is_stable_split(&nf.to_split());
        assert_eq!(s.verdict, Stability::Polystable);
        assert_eq!(
            s.witness.as_deref(),
            Some("invariant line (1 : 1/2) and invariant line (1 : -1/2)")
        );
        let generic = SplitHiggs::new(0, 0, tvf("x2, 0, x1", 0), b, c).unwrap();
        assert!(is_stable_split(&generic).is_stable());
    }

    #[test]
    fn kernel_of_wedge_with_c() {
        let c = Tvf::constant_ints([1, 0, 0]);
        let fam = solve_integrable(&c, 0, -1).unwrap();
        assert_eq!((fam.a_solutions.len(), fam.b_solutions.len()), (3, 6));
        assert!(fam.multiplier_form);
        assert_eq!(wedge_matrix(&c, 0).rows(), 6);
        assert_eq!(wedge_matrix(&c, 0).cols(), 8);
        let mut r = rng(13);
        for _ in 0..10 {
            let c = random_nonzero_tfield(&mut r, -1);
            let fam = solve_integrable(&c, 0, -1).unwrap();
            assert_eq!(fam.expected, (3, 6));
            assert!(fam.multiplier_form);
            let h = fam.field(&small_vec(&mut r, 3), &small_vec(&mut r, 6));
            assert!(phi_wedge_phi(&h).iter().flatten().all(GradedPoly::is_zero));
            assert!(divide_by(h.a(), &c).is_some());
        }
        assert_eq!(solve_integrable(&Tvf::zero(-1), 0, -1).unwrap_err(), HiggsError::ZeroSection);
    }

    #[test]
    fn trivial_sum_solver() {
        let c = tvf("x1, x2, x0", 0);
        let fam = solve_integrable(&c, 0, 0).unwrap();
        assert_eq!((fam.a_solutions.len(), fam.b_solutions.len()), (1, 1));
        assert!(fam.multiplier_form);
        // C = x0 (1, 0, 0) vanishes along a line; extra solutions appear.
        let c = Tvf::constant_ints([1, 0, 0]).mul_poly(&parse("x0").unwrap());
        let fam = solve_integrable(&c, 0, 0).unwrap();
        assert_eq!(fam.a_solutions.len(), 3);
        assert!(!fam.multiplier_form);
        let h = fam.field(&[int(0), int(1), int(0)], &[int(0), int(0), int(0)]);
        assert_eq!(normalize(&h), Err(HiggsError::OutsideNormalFormLocus));
    }

    #[test]
    fn gauge_normal_form_examples() {
        let c = Tvf::constant_ints([1, 0, 0]);
        let cases = [
            ("0", "0", "0"),
            ("x0", "-x0^2", "0"),
            ("x0", "x1*x2", "x0^2 + x1*x2"),
        ];
        for (l, m, q) in cases {
            let lambda = parse(l).unwrap();
            let mu = parse(m).unwrap();
            let lambda = regrade(&lambda, 1).unwrap();
            let mu = regrade(&mu, 2).unwrap();
            let h = multiple_form(&c, &lambda, &mu);
            let (nf, gauge) = gauge_normalize(&h, &Multipliers { lambda, mu }).unwrap();
            assert_eq!(nf.q(), &regrade(&parse(q).unwrap(), 2).unwrap());
            assert_eq!(gauge.conjugate(&h).unwrap(), nf.to_split());
        }
    }

    #[test]
    fn gauge_normalize_rejections() {
        let c = Tvf::constant_ints([0, 1, 0]);
        let lambda = parse("x1").unwrap();
        let mu = GradedPoly::zero(Grading::Plane(2));
        let h = multiple_form(&c, &lambda, &mu);
        let wrong = Multipliers { lambda: parse("x0").unwrap(), mu: mu.clone() };
        assert_eq!(gauge_normalize(&h, &wrong).unwrap_err(), HiggsError::NotIntegrable);
        let unstable = SplitHiggs::zero(0, -1);
        let m = Multipliers { lambda, mu };
        assert!(matches!(gauge_normalize(&unstable, &m), Err(HiggsError::NotStable { .. })));
        assert!(matches!(
            gauge_normalize(&h.swapped(), &m),
            Err(HiggsError::Orientation { m1: 0, m2: 1 })
        ));
    }

    #[test]
    fn normalize_recovers_multipliers() {
        let mut r = rng(14);
        for _ in 0..10 {
            let c = random_nonzero_tfield(&mut r, -1);
            let h = multiple_form(&c, &random_poly(&mut r, 1), &random_poly(&mut r, 2));
            let nf = normalize(&h).unwrap();
            assert_eq!(nf, nf.canonical());
            let t = small_unit(&mut r);
            assert!(orbit_equal(&nf, &nf.act(&t)));
            assert_eq!(hitchin_det(&h), nf.hitchin_det());
        }
    }

    #[test]
    fn orbit_examples() {
        let c = Tvf::constant_ints([1, -1, 2]);
        let q = parse("x0^2 + x1*x2").unwrap();
        let n = NormalForm::new(0, -1, q.clone(), c.clone()).unwrap();
        let quarter = NormalForm::new(0, -1, q.scale(&frac(1, 4)), c.scale(&int(2))).unwrap();
        assert!(orbit_equal(&n, &quarter));
        let doubled = NormalForm::new(0, -1, q, c.scale(&int(2))).unwrap();
        assert!(!orbit_equal(&n, &doubled));
        let zero_q = GradedPoly::zero(Grading::Plane(2));
        let z = NormalForm::new(0, -1, zero_q.clone(), c.clone()).unwrap();
        let zt = NormalForm::new(0, -1, zero_q, c.scale(&frac(-5, 3))).unwrap();
        assert!(orbit_equal(&z, &zt));
    }

    #[test]
    fn orbit_relation_is_an_equivalence() {
        let mut r = rng(15);
        for _ in 0..30 {
            let c = random_nonzero_tfield(&mut r, -1);
            let n = NormalForm::new(0, -1, random_poly(&mut r, 2), c).unwrap();
            let (s, t) = (small_unit(&mut r), small_unit(&mut r));
            let (a, b) = (n.act(&s), n.act(&s).act(&t));
            assert!(orbit_equal(&n, &n));
            assert_eq!(orbit_equal(&n, &a), orbit_equal(&a, &n));
            assert!(orbit_equal(&n, &b) && orbit_equal(&a, &b));
            assert_eq!(n.canonical(), b.canonical());
        }
    }

    #[test]
    fn determinant_examples() {
        let c = tvf("x0, 0, 0", 0);
        let nf = NormalForm::new(0, 0, GradedPoly::zero(Grading::Plane(0)), c.clone()).unwrap();
        assert!(nf.hitchin_det().is_zero());
        assert!(is_nilpotent(&nf.to_split()));
        let one = NormalForm::new(0, 0, GradedPoly::constant(int(1)), c.clone()).unwrap();
        assert_eq!(one.hitchin_det(), sym_prod(&c, &c).neg());
        assert_eq!(hitchin_det(&one.to_split()), one.hitchin_det());
    }

    #[test]
    fn determinant_is_gauge_invariant() {
        let mut r = rng(16);
        for _ in 0..20 {
            let h = SplitHiggs::new(
                0,
                -1,
                random_tfield(&mut r, 0),
                random_tfield(&mut r, 1),
                random_tfield(&mut r, -1),
            )
            .unwrap();
            let up = Gauge::upper(0, -1, &random_poly(&mut r, 1)).unwrap();
            let diag = Gauge::diagonal(0, -1, &small_unit(&mut r), &small_unit(&mut r)).unwrap();
            let det = hitchin_det(&h);
            assert_eq!(hitchin_det(&up.conjugate(&h).unwrap()), det);
            assert_eq!(hitchin_det(&diag.conjugate(&h).unwrap()), det);
        }
        assert!(!is_nilpotent(&SplitHiggs::new(
            0,
            -1,
            tvf("x1, 0, x2", 0),
            Tvf::zero(1),
            Tvf::zero(-1)
        )
        .unwrap()));
    }

    #[test]
    fn gauge_validation() {
        let one = GradedPoly::constant(int(1));
        let z0 = GradedPoly::zero(Grading::Plane(0));
        assert_eq!(
            Gauge::new(0, -1, [one.clone(), one.clone(), z0.clone(), one.clone()]).unwrap_err(),
            HiggsError::GaugeDegree { row: 1, col: 2, expected: 1 }
        );
        assert_eq!(
            Gauge::new(0, 0, [one.clone(), one.clone(), one.clone(), one]).unwrap_err(),
            HiggsError::SingularGauge
        );
    }

    #[test]
    fn normal_form_is_singular_at_zero_of_c() {
        let c = Tvf::constant_ints([1, 2, 3]);
        let nf = NormalForm::new(0, -1, parse("x0^2 - x1*x2").unwrap(), c.clone()).unwrap();
        let z = zero_locus(&c).unwrap();
        let points = vec![
            z.clone(),
            ProjPoint::from_ints([1, 0, 0]).unwrap(),
            ProjPoint::from_ints([0, 1, 1]).unwrap(),
        ];
        let rep = regularity_check(&nf.to_split(), &points);
        assert_eq!(rep.checked, 3);
        assert_eq!(rep.non_regular, vec![z]);
    }
}
