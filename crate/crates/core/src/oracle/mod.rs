// SPDX-License-Identifier: Apache-2.0

//! Small reference solvers used to cross-check the main path.
//!
//! They share no code with it: determinants come from exact rational
//! elimination and from cofactor expansion, eigenvalues from cyclic Jacobi in
//! `f64`.

mod exact;
mod jacobi;

pub use exact::{det_cofactor, det_exact, ldlt_pivots_exact, RationalMatrix};
pub use jacobi::{jacobi_eigen, matrix_to_f64, smallest_eig_small, JacobiResult};

/// Largest order the oracles accept.
pub const MAX_ORACLE_ORDER: usize = 12;
