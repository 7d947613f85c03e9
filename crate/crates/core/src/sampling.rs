//! Seeded random generation of small exact test data.
//!
//! All sampled checks draw from `ChaCha8Rng` seeded with an explicit `u64`,
//! so a seed fully determines every witness. Coefficients are small integers
//! in `[-3, 3]`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eulercalc::{end0t_basis, EndoTSection, TwistedVectorField};
use crate::exactlin::{int, Scalar};
use crate::polyring::{Grading, GradedPoly};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut SampleRng) -> Scalar {
    int(rng.gen_range(-3..=3))
}

pub fn small_vec(rng: &mut SampleRng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_int(rng)).collect()
}

/// A random nonzero integer in `[-3, 3]`.
pub fn small_unit(rng: &mut SampleRng) -> Scalar {
    loop {
        let x: i64 = rng.gen_range(-3..=3);
        if x != 0 {
            return int(x);
        }
    }
}

pub fn random_poly(rng: &mut SampleRng, d: i64) -> GradedPoly {
    let g = Grading::Plane(d);
    GradedPoly::from_coords(g, &small_vec(rng, g.basis_size()))
}

pub fn random_tfield(rng: &mut SampleRng, d: i64) -> TwistedVectorField {
    let n = crate::eulercalc::tfield_basis(d).len();
    TwistedVectorField::from_coords(d, &small_vec(rng, n))
}

pub fn random_nonzero_tfield(rng: &mut SampleRng, d: i64) -> TwistedVectorField {
    loop {
        let c = random_tfield(rng, d);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn random_end0t(rng: &mut SampleRng, d: i64) -> EndoTSection {
    let b = end0t_basis(d);
    let c = small_vec(rng, b.len());
    EndoTSection::from_coords(d, &c)
}
