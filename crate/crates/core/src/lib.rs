// SPDX-License-Identifier: Apache-2.0

//! Smallest eigenvalue of the Hankel moment matrices
//! `M[i][j] = (1/β) Γ((1 + i + j) / β)`.
//!
//! The matrices are so ill-conditioned that no floating-point type is usable.
//! Everything runs on arbitrary-size fixed-point numbers:
//!
//! * [`fixed`] provides the scalar ([`FixedPoint`]), its outward-rounded
//!   interval flavour ([`FixedInterval`]) and exact decimal conversion.
//! * [`special`] evaluates Γ at rational arguments with certified bounds and
//!   generates the matrix.
//! * [`ldlt`] computes `det(M - xI)` with a square-root-free LDLᵀ in
//!   submatrix order, serially or with a pipelined pool of column-owning
//!   workers.
//! * [`eigen`] drives the secant iteration on `P(x) = det(M - xI)`, certifies
//!   the result with interval arithmetic and escalates precision on failure.
//! * [`oracle`] holds small exact and machine-precision reference solvers.

pub mod eigen;
pub mod error;
pub mod fixed;
pub mod ldlt;
pub mod oracle;
pub mod report;
pub mod special;

pub use eigen::{
    choose_initial_precision, condition_lower_bound, escalate_precision, initial_points,
    lambda_max_bounds, secant_smallest_eigenvalue, solve, verify_eigenvalue, ConditionEstimate,
    DeterminantEvaluator, InconclusiveReason, RunResult, SecantTrace, SolveConfig, Verification,
    VerifyOutcome,
};
pub use error::{Error, Result};
pub use fixed::{
    fp_bump_last_digit, fp_div, fp_mul, fp_truncate_sig_digits, iv_add, iv_div, iv_mul, iv_sign,
    iv_sub, Decimal, FixedInterval, FixedPoint, IntervalSign,
};
pub use ldlt::{
    assign_columns, ldlt_det_interval, ldlt_det_parallel, ldlt_det_serial, ChannelSpec,
    ColumnAssignment, ColumnChannel, Phase, SharedMemoryChannel, ThrottledChannel,
    TimingBreakdown,
};
pub use report::RunReport;
pub use special::{
    build_certified_matrix, build_matrix, gamma_fixed, gamma_interval, CertifiedHankelMatrix,
    HankelMatrix, RationalArg,
};
