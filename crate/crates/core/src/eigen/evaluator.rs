// SPDX-License-Identifier: Apache-2.0

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::fixed::FixedPoint;
use crate::ldlt::{
    ldlt_det_parallel, ldlt_det_serial, Determinant, ParallelOptions, Phase, SymmetricMatrix,
    TimingBreakdown,
};

/// Computes `P(x) = det(M - xI)` and keeps a running tally of the time spent.
#[derive(Clone, Debug)]
pub struct DeterminantEvaluator {
    parallel: Option<ParallelOptions>,
    timing: TimingBreakdown,
    calls: usize,
}

impl DeterminantEvaluator {
    pub fn serial() -> Self {
        Self {
            parallel: None,
            timing: TimingBreakdown::default(),
            calls: 0,
        }
    }

    /// A single worker still goes through the serial loop.
    pub fn new(opts: ParallelOptions) -> Self {
        Self {
            parallel: (opts.workers > 1).then_some(opts),
            timing: TimingBreakdown::default(),
            calls: 0,
        }
    }

    pub fn workers(&self) -> usize {
        self.parallel.as_ref().map_or(1, |o| o.workers)
    }

    pub fn evaluate<M: SymmetricMatrix + ?Sized>(&mut self, m: &M, x: &FixedPoint) -> Result<Determinant> {
        self.calls += 1;
        match &self.parallel {
            Some(opts) => {
                let (det, t) = ldlt_det_parallel(m, x, opts)?;
                self.timing.accumulate(&t);
                Ok(det)
            }
            None => {
                let start = Instant::now();
                let det = ldlt_det_serial(m, x);
                self.record_serial(start.elapsed());
                det
            }
        }
    }

    /// Account determinant work done outside this evaluator as computation.
    pub fn record_serial(&mut self, elapsed: Duration) {
        self.timing.record_phase(Phase::Compute, elapsed);
        self.timing.record_total(elapsed);
    }

    pub fn timing(&self) -> TimingBreakdown {
        self.timing
    }

    pub fn calls(&self) -> usize {
        self.calls
    }
}
