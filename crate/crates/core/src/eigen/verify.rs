// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::secant::STABLE_DIGITS;
use crate::error::{Error, Result};
use crate::fixed::{iv_sign, Decimal, FixedPoint, IntervalSign};
use crate::ldlt::{ldlt_det_interval, IntervalSymmetricMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InconclusiveReason {
    /// A pivot or the determinant enclosure straddles zero; more bits help.
    InsufficientPrecision,
    /// The probe determinant is exactly zero: the truncated value is itself
    /// the eigenvalue, so no precision can separate the two probes.
    ProbeIsEigenvalue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyOutcome {
    Verified,
    Refuted,
    Inconclusive(InconclusiveReason),
}

/// Result of the sign test on `a = trunc15(x)` and `b = a + 1 ulp(15 digits)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub outcome: VerifyOutcome,
    pub lower_probe: String,
    pub upper_probe: String,
    pub kv_bits: u32,
    pub lower_sign: Option<IntervalSign>,
    pub upper_sign: Option<IntervalSign>,
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        self.outcome == VerifyOutcome::Verified
    }

    /// Short machine-readable status.
    pub fn status(&self) -> &'static str {
        match self.outcome {
            VerifyOutcome::Verified => "verified",
            VerifyOutcome::Refuted => "refuted",
            VerifyOutcome::Inconclusive(InconclusiveReason::InsufficientPrecision) => {
                "inconclusive-precision"
            }
            VerifyOutcome::Inconclusive(InconclusiveReason::ProbeIsEigenvalue) => {
                "inconclusive-probe-is-eigenvalue"
            }
        }
    }
}

enum Probe {
    Sign(IntervalSign),
    ExactZero,
    ZeroPivot,
}

fn probe<M: IntervalSymmetricMatrix + ?Sized>(m: &M, at: &Decimal) -> Result<Probe> {
    let shift = at.to_interval(m.frac_bits());
    match ldlt_det_interval(m, &shift) {
        Ok(det) if det.value.is_exact_zero() => Ok(Probe::ExactZero),
        Ok(det) => Ok(Probe::Sign(iv_sign(&det.value))),
        Err(Error::ZeroPivot { .. }) => Ok(Probe::ZeroPivot),
        Err(e) => Err(e),
    }
}

/// Certify that the smallest eigenvalue of `m` lies in `(a, b]`. The matrix
/// must hold certified enclosures of the entries at `m.frac_bits()`.
pub fn verify_eigenvalue<M: IntervalSymmetricMatrix + ?Sized>(
    m: &M,
    x: &FixedPoint,
) -> Result<Verification> {
    let a = Decimal::truncate(x, STABLE_DIGITS)?;
    let b = a.bump_last_digit();
    let lower = probe(m, &a)?;
    // Both probes lose the same bits, so a lost lower probe means more
    // precision is needed whatever the upper one says.
    let upper = match lower {
        Probe::ZeroPivot | Probe::Sign(IntervalSign::Indeterminate) => Probe::ZeroPivot,
        _ => probe(m, &b)?,
    };
    let sign_of = |p: &Probe| match p {
        Probe::Sign(s) => Some(*s),
        _ => None,
    };
    let outcome = match (&lower, &upper) {
        (Probe::Sign(IntervalSign::Negative), _) | (_, Probe::Sign(IntervalSign::Positive)) => {
            VerifyOutcome::Refuted
        }
        (Probe::ExactZero, _) | (_, Probe::ExactZero) => {
            VerifyOutcome::Inconclusive(InconclusiveReason::ProbeIsEigenvalue)
        }
        (Probe::Sign(IntervalSign::Positive), Probe::Sign(IntervalSign::Negative)) => {
            VerifyOutcome::Verified
        }
        _ => VerifyOutcome::Inconclusive(InconclusiveReason::InsufficientPrecision),
    };
    Ok(Verification {
        outcome,
        lower_probe: a.to_string(),
        upper_probe: b.to_string(),
        kv_bits: m.frac_bits(),
        lower_sign: sign_of(&lower),
        upper_sign: sign_of(&upper),
    })
}
