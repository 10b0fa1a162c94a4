// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use hankel_core::{RunReport, RunResult, TimingBreakdown};

fn pct(part: f64, t: &TimingBreakdown) -> f64 {
    if t.total_s > 0.0 {
        100.0 * part / t.total_s
    } else {
        0.0
    }
}

pub fn run_summary(r: &RunResult, report: &RunReport) -> String {
    let mut s = String::new();
    let t = &report.timing;
    let _ = writeln!(s, "N = {}, beta = {}, K = {} bits, workers = {}", r.n, r.beta, r.k_bits, r.workers);
    let _ = writeln!(s, "smallest eigenvalue    {}", report.eigenvalue);
    let _ = writeln!(s, "secant iterations      {}", report.iterations);
    if r.escalations > 0 {
        let _ = writeln!(s, "precision doublings    {}", r.escalations);
    }
    match &r.verification {
        Some(v) => {
            let _ = writeln!(
                s,
                "verification           {} at Kv = {} (probes {} and {})",
                v.status(),
                v.kv_bits,
                v.lower_probe,
                v.upper_probe
            );
        }
        None => {
            let _ = writeln!(s, "verification           skipped");
        }
    }
    let _ = writeln!(s, "cond(M) lower bound    {}", report.condition_lower_bound);
    let _ = writeln!(
        s,
        "determinant time       {:.3} s   {{c}} {:.1}%   {{net}} {:.1}%   {{d}} {:.1}%",
        t.total_s,
        pct(t.compute_s, t),
        pct(t.net_s, t),
        pct(t.div_s, t)
    );
    s
}

/// One sweep cell: a finished run or the error that stopped it.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: usize,
    pub beta: String,
    pub workers: usize,
    pub outcome: Result<RunReport, String>,
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    if rows.is_empty() {
        return s;
    }
    let _ = writeln!(
        s,
        "{:>6} {:>6} {:>8} {:>12} {:>8} {:>10}  {}",
        "N", "beta", "workers", "total (s)", "comp %", "net+divs %", "eigenvalue"
    );
    for row in rows {
        match &row.outcome {
            Ok(r) => {
                let t = &r.timing;
                let _ = writeln!(
                    s,
                    "{:>6} {:>6} {:>8} {:>12.3} {:>8.1} {:>10.1}  {}",
                    row.n,
                    row.beta,
                    row.workers,
                    t.total_s,
                    100.0 * t.compute_share(),
                    100.0 * t.net_div_share(),
                    r.eigenvalue
                );
            }
            Err(e) => {
                let _ = writeln!(s, "{:>6} {:>6} {:>8}  failed: {e}", row.n, row.beta, row.workers);
            }
        }
    }
    s
}
