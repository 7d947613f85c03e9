//! Chern classes and characters on the plane, where `H^3 = 0`, and
//! Hirzebruch-Riemann-Roch with the Todd class `1 + (3/2)H + H^2`.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{frac, int, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("only rank-2 data is supported, got rank {rank}")]
    RankUnsupported { rank: u32 },
    #[error("Riemann-Roch gave the non-integer Euler characteristic {chi}")]
    Integrality { chi: String },
}

/// Total Chern class data `(rank, c1 H, c2 H^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChernData {
    pub rank: u32,
    pub c1: i64,
    pub c2: i64,
}

impl ChernData {
    pub fn new(rank: u32, c1: i64, c2: i64) -> Self {
        ChernData { rank, c1, c2 }
    }

    pub fn dual(self) -> Self {
        ChernData { rank: self.rank, c1: -self.c1, c2: self.c2 }
    }
}

/// Chern data of `V(m)` for a rank-2 bundle `V`.
pub fn chern_twist(c: ChernData, m: i64) -> Result<ChernData, ChernError> {
    if c.rank != 2 {
        return Err(ChernError::RankUnsupported { rank: c.rank });
    }
    Ok(ChernData { rank: 2, c1: c.c1 + 2 * m, c2: c.c2 + m * c.c1 + m * m })
}

/// Chern data of the Schwarzenberger bundle `V_k` and of its dual.
pub fn schwarz_chern(k: u64) -> (ChernData, ChernData) {
    let k = k as i64;
    let v = ChernData::new(2, k - 1, k * (k - 1) / 2);
    (v, v.dual())
}

pub fn tangent_chern() -> ChernData {
    ChernData::new(2, 3, 3)
}

/// A class `ch0 + ch1 H + ch2 H^2` in `Q[H]/(H^3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernCharacter {
    pub ch0: Scalar,
    pub ch1: Scalar,
    pub ch2: Scalar,
}

impl ChernCharacter {
    pub fn new(ch0: Scalar, ch1: Scalar, ch2: Scalar) -> Self {
        ChernCharacter { ch0, ch1, ch2 }
    }

    pub fn from_ints(ch0: i64, ch1: i64, ch2: i64) -> Self {
        Self::new(int(ch0), int(ch1), int(ch2))
    }

    /// `ch(O(d)) = e^{dH}`.
    pub fn line(d: i64) -> Self {
        Self::new(int(1), int(d), frac(d * d, 2))
    }

    pub fn from_chern(c: &ChernData) -> Self {
        Self::new(int(c.rank as i64), int(c.c1), frac(c.c1 * c.c1 - 2 * c.c2, 2))
    }

    /// Inverse of `from_chern`, when the classes are integral.
    pub fn to_chern(&self) -> Option<ChernData> {
        let rank = self.ch0.to_integer();
        let c1 = self.ch1.to_integer();
        if !self.ch0.is_integer() || !self.ch1.is_integer() || rank < 0.into() {
            return None;
        }
        let c2 = (Scalar::from_integer(c1.clone() * c1.clone()) - int(2) * &self.ch2) / int(2);
        if !c2.is_integer() {
            return None;
        }
        Some(ChernData::new(
            u32::try_from(rank).ok()?,
            i64::try_from(c1).ok()?,
            i64::try_from(c2.to_integer()).ok()?,
        ))
    }

    pub fn dual(&self) -> Self {
        Self::new(self.ch0.clone(), -self.ch1.clone(), self.ch2.clone())
    }

    /// Adams operation `psi^2`.
    pub fn adams2(&self) -> Self {
        Self::new(self.ch0.clone(), int(2) * &self.ch1, int(4) * &self.ch2)
    }

    pub fn twist(&self, d: i64) -> Self {
        self * &Self::line(d)
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, o: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(&self.ch0 + &o.ch0, &self.ch1 + &o.ch1, &self.ch2 + &o.ch2)
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, o: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(&self.ch0 - &o.ch0, &self.ch1 - &o.ch1, &self.ch2 - &o.ch2)
    }
}

impl Mul for &ChernCharacter {
    type Output = ChernCharacter;
    fn mul(self, o: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(
            &self.ch0 * &o.ch0,
            &self.ch0 * &o.ch1 + &self.ch1 * &o.ch0,
            &self.ch0 * &o.ch2 + &self.ch1 * &o.ch1 + &self.ch2 * &o.ch0,
        )
    }
}

pub fn tensor_ch(a: &ChernCharacter, b: &ChernCharacter) -> ChernCharacter {
    a * b
}

/// `ch(End_0 V) = ch(V) ch(V^*) - 1`.
pub fn endo_ch(c: &ChernData) -> ChernCharacter {
    let ch = ChernCharacter::from_chern(c);
    &(&ch * &ch.dual()) - &ChernCharacter::line(0)
}

/// `ch(S^2 V) = (ch(V)^2 + psi^2 ch(V)) / 2`.
pub fn sym2_ch(ch: &ChernCharacter) -> ChernCharacter {
    let s = &(ch * ch) + &ch.adams2();
    let half = frac(1, 2);
    ChernCharacter::new(&s.ch0 * &half, &s.ch1 * &half, &s.ch2 * &half)
}

/// Euler characteristic of `F(d)` where `ch(F) = ch`.
pub fn chi_rr(ch: &ChernCharacter, d: i64) -> Result<i64, ChernError> {
    let t = ch.twist(d);
    let chi = &t.ch2 + frac(3, 2) * &t.ch1 + &t.ch0;
    if !chi.is_integer() {
        return Err(ChernError::Integrality { chi: chi.to_string() });
    }
    i64::try_from(chi.to_integer()).map_err(|_| ChernError::Integrality { chi: chi.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn twist_examples() {
        assert_eq!(chern_twist(ChernData::new(2, 3, 6), -2), Ok(ChernData::new(2, -1, 4)));
        assert_eq!(chern_twist(ChernData::new(2, 2, 3), -1), Ok(ChernData::new(2, 0, 2)));
        let c = ChernData::new(2, 5, -7);
        assert_eq!(chern_twist(c, 0), Ok(c));
        assert_eq!(
            chern_twist(ChernData::new(3, 0, 0), 1),
            Err(ChernError::RankUnsupported { rank: 3 })
        );
    }

    #[test]
    fn schwarzenberger_data() {
        assert_eq!(schwarz_chern(3).0, ChernData::new(2, 2, 3));
        assert_eq!(schwarz_chern(0).0, ChernData::new(2, -1, 0));
        assert_eq!(schwarz_chern(1).0, ChernData::new(2, 0, 0));
        assert_eq!(schwarz_chern(3).1, ChernData::new(2, -2, 3));
    }

    #[test]
    fn structure_sheaf_chi() {
        for d in -2..10 {
            assert_eq!(chi_rr(&ChernCharacter::line(0), d), Ok((d + 1) * (d + 2) / 2));
        }
    }

    #[test]
    fn trace_free_endomorphisms() {
        let t = endo_ch(&tangent_chern());
        assert_eq!(t, ChernCharacter::from_ints(3, 0, -3));
        assert_eq!(chi_rr(&t, 1), Ok(6));
        assert_eq!(chi_rr(&t, 0), Ok(0));
        for k in 0..13u64 {
            let e = endo_ch(&schwarz_chern(k).0);
            let k = k as i64;
            assert_eq!(e, ChernCharacter::from_ints(3, 0, 1 - k * k));
            assert_eq!(chi_rr(&e, 0), Ok(4 - k * k));
        }
        assert_eq!(chi_rr(&endo_ch(&schwarz_chern(5).0), 0), Ok(-21));
    }

    #[test]
    fn symmetric_square_of_tangent() {
        let s = sym2_ch(&ChernCharacter::from_chern(&tangent_chern()));
        assert_eq!(s, ChernCharacter::new(int(3), int(9), frac(21, 2)));
        assert_eq!(chi_rr(&s, 0), Ok(27));
    }

    #[test]
    fn tensor_identity() {
        let t = ChernCharacter::from_chern(&tangent_chern());
        assert_eq!(tensor_ch(&t, &ChernCharacter::line(0)), t);
    }

    #[test]
    fn integrality_failure() {
        let bad = ChernCharacter::new(int(1), int(0), frac(1, 3));
        assert!(matches!(chi_rr(&bad, 0), Err(ChernError::Integrality { .. })));
    }

    proptest! {
        #[test]
        fn dual_is_involution(c1 in -20i64..20, c2 in -20i64..20) {
            let c = ChernData::new(2, c1, c2);
            prop_assert_eq!(c.dual().dual(), c);
            prop_assert_eq!(c.dual(), ChernData::new(2, -c1, c2));
        }

        #[test]
        fn chern_character_round_trip(c1 in -20i64..20, c2 in -20i64..20) {
            let c = ChernData::new(2, c1, c2);
            prop_assert_eq!(ChernCharacter::from_chern(&c).to_chern(), Some(c));
        }

        #[test]
        fn twist_matches_character(c1 in -10i64..10, c2 in -10i64..10, m in -5i64..5) {
            let c = ChernData::new(2, c1, c2);
            let twisted = chern_twist(c, m).unwrap();
            prop_assert_eq!(
                ChernCharacter::from_chern(&twisted),
                ChernCharacter::from_chern(&c).twist(m)
            );
        }
    }
}
