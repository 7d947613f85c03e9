//! Cohomology dimensions of line bundles on P^1, P^2 and P^1 x P^1, Chern
//! calculus on the plane, and a dimension chaser for long exact sequences.

mod chase;
mod chern;

use std::fmt;

use serde::Serialize;

pub use chase::{les_chase, Assumption, ChaseError, ChaseResult, ConnectingMap, Interval, Term};
pub use chern::{
    chern_twist, chi_rr, endo_ch, schwarz_chern, sym2_ch, tangent_chern, tensor_ch, ChernCharacter,
    ChernData, ChernError,
};

/// How a cohomology profile was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ClosedForm,
    KunnethChase,
    RiemannRoch,
    SymbolicRank,
}

impl Route {
    pub fn tag(self) -> &'static str {
        match self {
            Route::ClosedForm => "closed-form",
            Route::KunnethChase => "kunneth-chase",
            Route::RiemannRoch => "riemann-roch",
            Route::SymbolicRank => "symbolic-rank",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(h^0, h^1, h^2)` of a sheaf on a surface, with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomProfile {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub route: Route,
    pub ledger: Vec<String>,
}

impl CohomProfile {
    pub fn new(dims: [u64; 3], route: Route) -> Self {
        CohomProfile { h0: dims[0], h1: dims[1], h2: dims[2], route, ledger: Vec::new() }
    }

    pub fn with_ledger(mut self, ledger: Vec<String>) -> Self {
        self.ledger = ledger;
        self
    }

    pub fn dims(&self) -> [u64; 3] {
        [self.h0, self.h1, self.h2]
    }

    pub fn chi(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

fn binom2(n: i64) -> u64 {
    // C(n + 2, 2) for n >= 0, else 0
    if n < 0 {
        0
    } else {
        ((n + 1) * (n + 2) / 2) as u64
    }
}

/// `h^i(P^2, O(d))`.
pub fn h_p2(i: usize, d: i64) -> u64 {
    match i {
        0 => binom2(d),
        2 => binom2(-d - 3),
        _ => 0,
    }
}

pub fn p2_dims(d: i64) -> [u64; 3] {
    [h_p2(0, d), h_p2(1, d), h_p2(2, d)]
}

/// `h^i(P^1, O(n))`.
pub fn h_p1(i: usize, n: i64) -> u64 {
    match i {
        0 => (n + 1).max(0) as u64,
        1 => (-n - 1).max(0) as u64,
        _ => 0,
    }
}

/// `h^i(P^1 x P^1, O(a, b))` by the Kunneth formula.
pub fn h_quadric(i: usize, a: i64, b: i64) -> u64 {
    (0..=i)
        .filter(|&p| p <= 1 && i - p <= 1)
        .map(|p| h_p1(p, a) * h_p1(i - p, b))
        .sum()
}

pub fn quadric_dims(a: i64, b: i64) -> [u64; 3] {
    [h_quadric(0, a, b), h_quadric(1, a, b), h_quadric(2, a, b)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plane_values() {
        assert_eq!(h_p2(0, 2), 6);
        assert_eq!(h_p2(0, -1), 0);
        assert_eq!(h_p2(2, -3), 1);
        for d in -10..10 {
            assert_eq!(h_p2(1, d), 0);
        }
    }

    #[test]
    fn quadric_values() {
        for d in 0..8 {
            assert_eq!(h_quadric(0, d, d), ((d + 1) * (d + 1)) as u64);
        }
        for d in -1..8 {
            assert_eq!(h_quadric(1, d, d), 0);
        }
        assert_eq!(h_quadric(0, 0, 4), 5);
        assert_eq!(h_quadric(1, 2, -2), 3);
        assert_eq!(h_quadric(2, -2, -2), 1);
    }

    #[test]
    fn serre_duality_grid() {
        for d in -12..=12 {
            assert_eq!(h_p2(0, d), h_p2(2, -d - 3));
        }
    }

    proptest! {
        #[test]
        fn kunneth_symmetry(i in 0usize..3, a in -10i64..10, b in -10i64..10) {
            prop_assert_eq!(h_quadric(i, a, b), h_quadric(i, b, a));
        }

        #[test]
        fn quadric_euler_characteristic(a in -10i64..10, b in -10i64..10) {
            let [h0, h1, h2] = quadric_dims(a, b);
            prop_assert_eq!(h0 as i64 - h1 as i64 + h2 as i64, (a + 1) * (b + 1));
        }
    }
}
