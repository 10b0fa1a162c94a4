// SPDX-License-Identifier: Apache-2.0

use hankel_core::{Error, RunResult, VerifyOutcome};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified = 0,
    Failure = 1,
    PrecisionCapExceeded = 2,
    InvalidConfig = 3,
    Refuted = 4,
    Inconclusive = 5,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn of_result(r: &RunResult) -> Self {
        match r.verification.as_ref().map(|v| v.outcome) {
            None | Some(VerifyOutcome::Verified) => Status::Verified,
            Some(VerifyOutcome::Refuted) => Status::Refuted,
            Some(VerifyOutcome::Inconclusive(_)) => Status::Inconclusive,
        }
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::PrecisionCapExceeded { .. } => Status::PrecisionCapExceeded,
            Error::InvalidArgument(_) | Error::InvalidBeta(_) => Status::InvalidConfig,
            _ => Status::Failure,
        }
    }
}
