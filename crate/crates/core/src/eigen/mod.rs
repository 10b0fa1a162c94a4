// SPDX-License-Identifier: Apache-2.0

//! The smallest eigenvalue: secant iteration on the characteristic
//! polynomial, interval verification and precision control.

mod condition;
mod evaluator;
mod precision;
mod secant;
mod solve;
mod verify;

pub use condition::{condition_lower_bound, lambda_max_bounds, ConditionEstimate};
pub use evaluator::DeterminantEvaluator;
pub use precision::{choose_initial_precision, escalate_precision, DEFAULT_PRECISION_CAP};
pub use secant::{
    initial_points, secant_smallest_eigenvalue, SecantTrace, MAX_SECANT_STEPS, STABLE_DIGITS,
};
pub use solve::{solve, RunResult, SolveConfig};
pub use verify::{verify_eigenvalue, InconclusiveReason, Verification, VerifyOutcome};
