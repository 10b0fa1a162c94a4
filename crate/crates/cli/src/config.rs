// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use hankel_core::eigen::DEFAULT_PRECISION_CAP;
use hankel_core::{ChannelSpec, Error, RationalArg, SolveConfig};

pub const PRECISION_CAP_ENV: &str = "HANKEL_EIG_PRECISION_CAP";

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub beta: RationalArg,
    pub precision_bits: Option<u32>,
    pub workers: usize,
    pub channel: ChannelSpec,
    pub verify: bool,
    pub out: Option<PathBuf>,
    pub dump_matrix: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(n: usize, beta: RationalArg) -> Self {
        Self {
            n,
            beta,
            precision_bits: None,
            workers: 1,
            channel: ChannelSpec::default(),
            verify: true,
            out: None,
            dump_matrix: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("--n must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("--workers must be at least 1".into()));
        }
        if self.precision_bits == Some(0) {
            return Err(Error::InvalidArgument("--precision-bits must be positive".into()));
        }
        self.channel.build().map(|_| ())
    }

    pub fn solve_config(&self, precision_cap: u32) -> SolveConfig {
        SolveConfig {
            n: self.n,
            beta: self.beta,
            precision_bits: self.precision_bits,
            workers: self.workers,
            channel: self.channel,
            verify: self.verify,
            precision_cap,
        }
    }
}

/// Escalation cap from the environment, or the default.
pub fn precision_cap_from_env() -> Result<u32, Error> {
    match std::env::var(PRECISION_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::InvalidArgument(format!("{PRECISION_CAP_ENV}={v:?} is not a bit count"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_PRECISION_CAP),
        Err(e) => Err(Error::InvalidArgument(format!("{PRECISION_CAP_ENV}: {e}"))),
    }
}
