// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::special::RationalArg;

/// Escalation stops once `K` would pass this many bits.
pub const DEFAULT_PRECISION_CAP: u32 = 1 << 21;

/// Starting `K`: `64·⌈max(512, 8n, 4n·max(1, ⌈1/β⌉)) / 64⌉`.
pub fn choose_initial_precision(n: usize, beta: RationalArg) -> u32 {
    let inv = beta.recip().ceil().max(1);
    let n = n as u64;
    let bits = 512u64.max(8 * n).max(4 * n * inv);
    (bits.div_ceil(64) * 64).min(u64::from(u32::MAX)) as u32
}

/// Double `k`, failing once the result exceeds `cap`.
pub fn escalate_precision(k: u32, cap: u32) -> Result<u32> {
    match k.checked_mul(2) {
        Some(next) if next <= cap => Ok(next),
        _ => Err(Error::PrecisionCapExceeded { cap }),
    }
}
