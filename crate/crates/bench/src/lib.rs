// SPDX-License-Identifier: Apache-2.0

//! Shared fixtures for the benchmarks.

use hankel_core::ldlt::SymmetricMatrix;
use hankel_core::{build_matrix, choose_initial_precision, FixedPoint, HankelMatrix, RationalArg};

pub fn beta(s: &str) -> RationalArg {
    s.parse().expect("valid beta")
}

/// Matrix of order `n` at the precision the solver would pick for it.
pub fn matrix(n: usize, b: &str) -> HankelMatrix {
    let b = beta(b);
    let k = choose_initial_precision(n, b);
    build_matrix(n, b, k).expect("matrix builds")
}

pub fn zero_shift(m: &HankelMatrix) -> FixedPoint {
    FixedPoint::zero(m.frac_bits())
}
