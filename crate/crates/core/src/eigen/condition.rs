// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::fixed::{fp_div, fp_truncate_sig_digits, FixedPoint};
use crate::special::HankelMatrix;

/// Bounds on the largest eigenvalue: the last diagonal entry (Rayleigh
/// quotient at `e_n`) and the trace.
pub fn lambda_max_bounds(m: &HankelMatrix) -> (FixedPoint, FixedPoint) {
    let n = m.moments().len().div_ceil(2);
    let lower = m.moment(2 * n - 2).clone();
    let mut upper = FixedPoint::zero(lower.frac_bits());
    for k in 0..n {
        upper = upper.checked_add(m.moment(2 * k)).expect("uniform precision");
    }
    (lower, upper)
}

/// Lower bound `λ_max_lower / λ₁` on the condition number.
pub fn condition_lower_bound(m: &HankelMatrix, lambda1: &FixedPoint) -> Result<FixedPoint> {
    if !lambda1.is_positive() {
        return Err(Error::NonPositiveInput);
    }
    let (lower, _) = lambda_max_bounds(m);
    fp_div(&lower, lambda1, lower.frac_bits())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionEstimate {
    pub lambda_max_lower: FixedPoint,
    pub lambda_max_upper: FixedPoint,
    pub lambda1: FixedPoint,
    pub cond_lower: FixedPoint,
}

impl ConditionEstimate {
    pub fn new(m: &HankelMatrix, lambda1: &FixedPoint) -> Result<Self> {
        let (lambda_max_lower, lambda_max_upper) = lambda_max_bounds(m);
        Ok(Self {
            cond_lower: condition_lower_bound(m, lambda1)?,
            lambda_max_lower,
            lambda_max_upper,
            lambda1: lambda1.clone(),
        })
    }

    pub fn cond_lower_decimal(&self, digits: usize) -> Result<String> {
        fp_truncate_sig_digits(&self.cond_lower, digits)
    }
}
