// SPDX-License-Identifier: Apache-2.0

use std::time::Duration;

use serde::{Deserialize, Serialize};

/// Where a worker spent its time inside the determinant pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// `{c}`: applying finished columns and preparing the next one.
    Compute,
    /// `{net}`: blocked on column transfer.
    NetWait,
    /// `{d}`: divisions the sender did not get to transmit.
    Div,
}

/// Accumulated determinant time, in seconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingBreakdown {
    pub total_s: f64,
    pub compute_s: f64,
    pub net_s: f64,
    pub div_s: f64,
}

impl TimingBreakdown {
    pub fn record_phase(&mut self, phase: Phase, elapsed: Duration) {
        let s = elapsed.as_secs_f64();
        match phase {
            Phase::Compute => self.compute_s += s,
            Phase::NetWait => self.net_s += s,
            Phase::Div => self.div_s += s,
        }
    }

    pub fn record_total(&mut self, elapsed: Duration) {
        self.total_s += elapsed.as_secs_f64();
    }

    pub fn accumulate(&mut self, other: &TimingBreakdown) {
        self.total_s += other.total_s;
        self.compute_s += other.compute_s;
        self.net_s += other.net_s;
        self.div_s += other.div_s;
    }

    /// Per-worker average of the phase counters; `total_s` is left at zero for
    /// the caller to fill with wall time.
    pub fn mean_of(workers: &[TimingBreakdown]) -> TimingBreakdown {
        let mut sum = TimingBreakdown::default();
        for w in workers {
            sum.accumulate(w);
        }
        let k = workers.len().max(1) as f64;
        TimingBreakdown {
            total_s: 0.0,
            compute_s: sum.compute_s / k,
            net_s: sum.net_s / k,
            div_s: sum.div_s / k,
        }
    }

    pub fn compute_share(&self) -> f64 {
        if self.total_s > 0.0 {
            self.compute_s / self.total_s
        } else {
            0.0
        }
    }

    /// Share of `{net}` plus `{d}`, the time lost to limited bandwidth.
    pub fn net_div_share(&self) -> f64 {
        if self.total_s > 0.0 {
            (self.net_s + self.div_s) / self.total_s
        } else {
            0.0
        }
    }
}
