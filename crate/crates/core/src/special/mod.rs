// SPDX-License-Identifier: Apache-2.0

//! Γ at rational arguments and generation of the Hankel moment matrix.

mod gamma;
mod matrix;
mod rational;

pub use gamma::{gamma_fixed, gamma_interval};
pub use matrix::{
    build_certified_matrix, build_matrix, moment_fixed, moment_interval, CertifiedHankelMatrix,
    HankelMatrix,
};
pub use rational::RationalArg;
