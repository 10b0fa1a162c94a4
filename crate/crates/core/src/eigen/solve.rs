// SPDX-License-Identifier: Apache-2.0

use std::time::Instant;

use super::condition::ConditionEstimate;
use super::evaluator::DeterminantEvaluator;
use super::precision::{choose_initial_precision, escalate_precision, DEFAULT_PRECISION_CAP};
use super::secant::{secant_smallest_eigenvalue, SecantTrace, STABLE_DIGITS};
use super::verify::{verify_eigenvalue, InconclusiveReason, Verification, VerifyOutcome};
use crate::error::Result;
use crate::fixed::fp_truncate_sig_digits;
use crate::ldlt::{ChannelSpec, ParallelOptions, TimingBreakdown};
use crate::special::{build_certified_matrix, build_matrix, HankelMatrix, RationalArg};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub n: usize,
    pub beta: RationalArg,
    /// Starting `K`; chosen from `n` and `β` when absent.
    pub precision_bits: Option<u32>,
    pub workers: usize,
    pub channel: ChannelSpec,
    pub verify: bool,
    pub precision_cap: u32,
}

impl SolveConfig {
    pub fn new(n: usize, beta: RationalArg) -> Self {
        Self {
            n,
            beta,
            precision_bits: None,
            workers: 1,
            channel: ChannelSpec::default(),
            verify: true,
            precision_cap: DEFAULT_PRECISION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub n: usize,
    pub beta: RationalArg,
    pub k_bits: u32,
    /// 15 significant digits, truncated.
    pub eigenvalue: String,
    pub verified: bool,
    pub verification: Option<Verification>,
    pub trace: SecantTrace,
    pub condition: ConditionEstimate,
    pub timing: TimingBreakdown,
    pub workers: usize,
    /// Precision doublings needed by the secant stage.
    pub escalations: u32,
    /// The matrix the accepted secant run used.
    pub matrix: HankelMatrix,
}

/// Full pipeline: secant at escalating `K`, then interval verification at
/// escalating `Kv` starting from `2K`.
pub fn solve(config: &SolveConfig) -> Result<RunResult> {
    let channel = config.channel.build()?;
    let mut eval = DeterminantEvaluator::new(ParallelOptions::new(config.workers, channel));
    let mut k = config
        .precision_bits
        .unwrap_or_else(|| choose_initial_precision(config.n, config.beta));
    let mut escalations = 0;
    let (matrix, trace) = loop {
        let m = build_matrix(config.n, config.beta, k)?;
        match secant_smallest_eigenvalue(&m, &mut eval) {
            Ok(trace) => break (m, trace),
            Err(e) if e.is_precision_failure() => {
                k = escalate_precision(k, config.precision_cap)?;
                escalations += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let x = trace.value().clone();
    let eigenvalue = fp_truncate_sig_digits(&x, STABLE_DIGITS)?;

    let mut verification = None;
    if config.verify {
        let mut kv = k.saturating_mul(2);
        loop {
            let mc = build_certified_matrix(config.n, config.beta, kv)?;
            let start = Instant::now();
            let v = verify_eigenvalue(&mc, &x);
            eval.record_serial(start.elapsed());
            let v = v?;
            if v.outcome == VerifyOutcome::Inconclusive(InconclusiveReason::InsufficientPrecision) {
                kv = escalate_precision(kv, config.precision_cap)?;
                continue;
            }
            verification = Some(v);
            break;
        }
    }

    Ok(RunResult {
        n: config.n,
        beta: config.beta,
        k_bits: k,
        eigenvalue,
        verified: verification.as_ref().is_some_and(Verification::is_verified),
        verification,
        condition: ConditionEstimate::new(&matrix, &x)?,
        trace,
        timing: eval.timing(),
        workers: eval.workers(),
        escalations,
        matrix,
    })
}
