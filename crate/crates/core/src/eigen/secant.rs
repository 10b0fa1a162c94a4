// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_traits::Signed;

use super::evaluator::DeterminantEvaluator;
use crate::error::{Error, Result};
use crate::fixed::{fp_div, fp_mul, fp_truncate_sig_digits, FixedPoint};
use crate::ldlt::SymmetricMatrix;

/// Significant digits that must agree between consecutive iterates.
pub const STABLE_DIGITS: usize = 15;

/// Hard stop for a run that neither converges nor fails.
pub const MAX_SECANT_STEPS: usize = 500;

/// `x2 = 0` and `x1 = -2^-16 · min(1, M[0][0])`, both at the matrix precision.
pub fn initial_points<M: SymmetricMatrix + ?Sized>(m: &M) -> (FixedPoint, FixedPoint) {
    let k = m.frac_bits();
    let one = FixedPoint::one(k);
    let m00 = m.entry(0, 0);
    let scale = if m00 < &one { m00.clone() } else { one };
    let mut mantissa = scale.into_mantissa() >> 16u32;
    if mantissa < BigInt::from(1) {
        mantissa = BigInt::from(1);
    }
    (FixedPoint::new(-mantissa, k), FixedPoint::zero(k))
}

/// First steps shorter than `|x1| · 2^-RESTART_GAP` restart from a closer x1.
const RESTART_GAP: u32 = 64;

const MAX_RESTARTS: usize = 16;

/// A closer `x1` when the first secant step is too short to leave a usable
/// slope. That happens when `x1` lies left of many eigenvalues far smaller
/// than itself: `P(x1)` then dwarfs `P(x2)` and the step shrinks by the same
/// factor. A step that vanished squares `|x1|`; a short one becomes `-step`.
/// Shifts below `2^-(half/2)` barely register in the `half`-bit pivots, so
/// that is the floor.
fn restart_point(x1: &FixedPoint, x2: &FixedPoint, x3: &FixedPoint, half: u32) -> Option<FixedPoint> {
    let k = x1.frac_bits();
    let reach = x2.mantissa() - x1.mantissa();
    let stride = x3.mantissa() - x2.mantissa();
    let floor = BigInt::from(1) << (k - half / 2);
    let next = if stride.is_positive() {
        if stride >= (&reach >> RESTART_GAP) {
            return None;
        }
        stride
    } else {
        // |x1| = 2^-e  ->  2^-2e
        let e = (k + 1).checked_sub(reach.bits() as u32)?.max(1);
        BigInt::from(1) << k.saturating_sub(2 * e)
    };
    let next = next.max(floor);
    (next < reach).then(|| FixedPoint::new(x2.mantissa() - next, k))
}

/// Every probe of the secant run, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantTrace {
    /// `(x_i, P(x_i))`, all with `P(x_i) > 0`.
    pub iterates: Vec<(FixedPoint, FixedPoint)>,
    /// A step that landed on `P(x) = 0` exactly. It ends the run.
    pub exact_root: Option<FixedPoint>,
    pub converged: bool,
    /// Secant steps taken (probes after the two starting points).
    pub iterations: usize,
}

impl SecantTrace {
    /// The converged estimate of the smallest eigenvalue.
    pub fn value(&self) -> &FixedPoint {
        self.exact_root
            .as_ref()
            .unwrap_or_else(|| &self.iterates.last().expect("at least two iterates").0)
    }
}

fn stable_prefix(x: &FixedPoint) -> Option<String> {
    x.is_positive()
        .then(|| fp_truncate_sig_digits(x, STABLE_DIGITS).ok())
        .flatten()
}

/// Secant iteration on `P(x) = det(M - xI)` from the left of the smallest
/// eigenvalue. Every probe must stay below it, which the sign of `P` checks.
pub fn secant_smallest_eigenvalue<M: SymmetricMatrix + ?Sized>(
    m: &M,
    eval: &mut DeterminantEvaluator,
) -> Result<SecantTrace> {
    let k = m.frac_bits();
    let half = k / 2;
    let (x1, x2) = initial_points(m);
    let mut iterates = Vec::new();
    for (i, x) in [x1, x2].into_iter().enumerate() {
        let p = eval.evaluate(m, &x)?.value;
        if !p.is_positive() {
            return Err(Error::SignViolation { iteration: i });
        }
        iterates.push((x, p));
    }
    let mut prev_digits: Option<String> = None;
    let mut step = 0;
    let mut restarts = 0;
    while step < MAX_SECANT_STEPS {
        step += 1;
        let (x_prev, p_prev) = &iterates[iterates.len() - 2];
        let (x_cur, p_cur) = &iterates[iterates.len() - 1];
        let dp = p_cur.checked_sub(p_prev)?;
        if dp.is_zero() {
            return Err(Error::NoProgress { iteration: step });
        }
        let dx = x_cur.checked_sub(x_prev)?;
        let delta = fp_div(&fp_mul(&dx, p_cur, k + half), &dp, k)?;
        let x_next = x_cur.checked_sub(&delta)?;
        if iterates.len() == 2 && restarts < MAX_RESTARTS {
            if let Some(x1) = restart_point(x_prev, x_cur, &x_next, half) {
                let p = eval.evaluate(m, &x1)?.value;
                if !p.is_positive() {
                    return Err(Error::SignViolation { iteration: 0 });
                }
                iterates[0] = (x1, p);
                restarts += 1;
                step -= 1;
                continue;
            }
        }
        if x_next <= *x_cur {
            return Err(Error::NoProgress { iteration: step });
        }
        let p_next = eval.evaluate(m, &x_next)?.value;
        if p_next.is_zero() {
            return Ok(SecantTrace {
                iterates,
                exact_root: Some(x_next),
                converged: true,
                iterations: step,
            });
        }
        if p_next.is_negative() {
            return Err(Error::SignViolation { iteration: step + 1 });
        }
        let digits = stable_prefix(&x_next);
        let done = digits.is_some() && digits == prev_digits;
        prev_digits = digits;
        iterates.push((x_next, p_next));
        if done {
            return Ok(SecantTrace {
                iterates,
                exact_root: None,
                converged: true,
                iterations: step,
            });
        }
    }
    Err(Error::NoProgress {
        iteration: MAX_SECANT_STEPS,
    })
}
