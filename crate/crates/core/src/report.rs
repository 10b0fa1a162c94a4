// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::eigen::RunResult;
use crate::error::Result;
use crate::ldlt::TimingBreakdown;
use crate::special::RationalArg;

/// Serialized summary of one run. Large values are decimal strings since they
/// overflow every machine float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub n: usize,
    pub beta: RationalArg,
    pub k_bits: u32,
    /// `None` when verification was skipped.
    pub kv_bits: Option<u32>,
    pub eigenvalue: String,
    pub verified: bool,
    pub iterations: usize,
    pub condition_lower_bound: String,
    pub timing: TimingBreakdown,
    pub workers: usize,
    /// `verified`, `refuted`, `inconclusive-…` or `skipped`.
    pub verification: String,
}

impl RunReport {
    pub fn from_result(r: &RunResult) -> Result<Self> {
        Ok(Self {
            n: r.n,
            beta: r.beta,
            k_bits: r.k_bits,
            kv_bits: r.verification.as_ref().map(|v| v.kv_bits),
            eigenvalue: r.eigenvalue.clone(),
            verified: r.verified,
            iterations: r.trace.iterations,
            condition_lower_bound: r.condition.cond_lower_decimal(15)?,
            timing: r.timing,
            workers: r.workers,
            verification: r
                .verification
                .as_ref()
                .map_or("skipped", |v| v.status())
                .to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            n: 100,
            beta: RationalArg::new(7, 4).unwrap(),
            k_bits: 3328,
            kv_bits: Some(6656),
            eigenvalue: "1.69758248179497e-45".into(),
            verified: true,
            iterations: 7,
            condition_lower_bound: "1.94393000000000e228".into(),
            timing: TimingBreakdown {
                total_s: 4.012_345_678_9,
                compute_s: 3.9,
                net_s: 0.1 + 0.2,
                div_s: 0.0,
            },
            workers: 2,
            verification: "verified".into(),
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = serde_json::to_string_pretty(&r).unwrap();
        assert_eq!(serde_json::from_str::<RunReport>(&text).unwrap(), r);
    }

    #[test]
    fn stable_keys() {
        let v = serde_json::to_value(sample()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            [
                "beta",
                "condition_lower_bound",
                "eigenvalue",
                "iterations",
                "k_bits",
                "kv_bits",
                "n",
                "timing",
                "verification",
                "verified",
                "workers"
            ]
        );
        let mut t: Vec<&str> = v["timing"].as_object().unwrap().keys().map(String::as_str).collect();
        t.sort_unstable();
        assert_eq!(t, ["compute_s", "div_s", "net_s", "total_s"]);
        assert_eq!(v["beta"], "7/4");
    }
}
