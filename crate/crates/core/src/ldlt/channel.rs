// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transport model for finished columns moving between workers.
pub trait ColumnChannel: Send + Sync + fmt::Debug {
    /// Wall time one message of `bytes` occupies the link.
    fn transfer_time(&self, bytes: usize) -> Duration;

    /// Messages are visible to receivers the moment they are published.
    fn is_instant(&self) -> bool {
        false
    }
}

/// Workers share memory; publication costs nothing beyond synchronization.
#[derive(Clone, Copy, Debug, Default)]
pub struct SharedMemoryChannel;

impl ColumnChannel for SharedMemoryChannel {
    fn transfer_time(&self, _bytes: usize) -> Duration {
        Duration::ZERO
    }

    fn is_instant(&self) -> bool {
        true
    }
}

/// Link with fixed per-message latency and finite bandwidth.
#[derive(Clone, Copy, Debug)]
pub struct ThrottledChannel {
    bytes_per_second: f64,
    latency: Duration,
}

impl ThrottledChannel {
    /// `bytes_per_second` may be infinite for a latency-only link.
    pub fn new(bytes_per_second: f64, latency: Duration) -> Result<Self> {
        if bytes_per_second.is_nan() || bytes_per_second <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bandwidth {bytes_per_second} must be positive"
            )));
        }
        Ok(Self {
            bytes_per_second,
            latency,
        })
    }
}

impl ColumnChannel for ThrottledChannel {
    fn transfer_time(&self, bytes: usize) -> Duration {
        let wire = if self.bytes_per_second.is_infinite() {
            Duration::ZERO
        } else {
            Duration::from_secs_f64(bytes as f64 / self.bytes_per_second)
        };
        self.latency + wire
    }
}

/// User-facing channel settings (`--net-bandwidth`, `--net-latency`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    /// Bytes per second; `None` means unlimited.
    pub bandwidth: Option<f64>,
    pub latency_ms: f64,
}

impl Default for ChannelSpec {
    fn default() -> Self {
        Self {
            bandwidth: None,
            latency_ms: 0.0,
        }
    }
}

impl ChannelSpec {
    /// Parse a bandwidth argument: a positive number of bytes/s or `inf`.
    pub fn parse_bandwidth(s: &str) -> Result<Option<f64>> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") {
            return Ok(None);
        }
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => Ok(Some(v)),
            Ok(v) if v.is_infinite() && v > 0.0 => Ok(None),
            _ => Err(Error::InvalidArgument(format!("bad bandwidth {s:?}"))),
        }
    }

    pub fn build(&self) -> Result<Arc<dyn ColumnChannel>> {
        if !(self.latency_ms.is_finite() && self.latency_ms >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bad latency {} ms",
                self.latency_ms
            )));
        }
        if self.bandwidth.is_none() && self.latency_ms == 0.0 {
            return Ok(Arc::new(SharedMemoryChannel));
        }
        Ok(Arc::new(ThrottledChannel::new(
            self.bandwidth.unwrap_or(f64::INFINITY),
            Duration::from_secs_f64(self.latency_ms / 1000.0),
        )?))
    }
}
