// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hankel_core::{ChannelSpec, Error, RationalArg};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "hankel-eig", version, about = "Smallest eigenvalue of Hankel moment matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a single (N, beta) instance.
    Run(RunArgs),
    /// Solve every combination of the listed sizes, betas and worker counts.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Simulated link bandwidth between workers in bytes/s, or `inf`.
    #[arg(long, default_value = "inf")]
    pub net_bandwidth: String,
    /// Simulated per-message latency in milliseconds.
    #[arg(long, default_value_t = 0.0)]
    pub net_latency: f64,
}

impl ChannelArgs {
    fn spec(&self) -> Result<ChannelSpec, Error> {
        Ok(ChannelSpec {
            bandwidth: ChannelSpec::parse_bandwidth(&self.net_bandwidth)?,
            latency_ms: self.net_latency,
        })
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Matrix order.
    #[arg(long)]
    pub n: usize,
    /// Exponent of the weight, as `p/q` or an integer.
    #[arg(long, default_value = "1/1")]
    pub beta: String,
    /// Starting fractional bits K (chosen from N and beta by default).
    #[arg(long)]
    pub precision_bits: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Skip interval verification.
    #[arg(long)]
    pub no_verify: bool,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the matrix anti-diagonals here.
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
}

impl RunArgs {
    pub fn config(&self) -> Result<RunConfig, Error> {
        let mut c = RunConfig::new(self.n, self.beta.parse::<RationalArg>()?);
        c.precision_bits = self.precision_bits;
        c.workers = self.workers;
        c.channel = self.channel.spec()?;
        c.verify = !self.no_verify;
        c.out = self.out.clone();
        c.dump_matrix = self.dump_matrix.clone();
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated matrix orders.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Comma-separated betas.
    #[arg(long, value_delimiter = ',', default_value = "1/1")]
    pub beta: Vec<String>,
    /// Comma-separated worker counts.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub workers: Vec<usize>,
    #[arg(long)]
    pub precision_bits: Option<u32>,
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long)]
    pub no_verify: bool,
    /// Write all reports as a JSON array here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SweepArgs {
    /// Configurations in `beta`, `n`, `workers` order.
    pub fn configs(&self) -> Result<Vec<RunConfig>, Error> {
        let channel = self.channel.spec()?;
        let mut out = Vec::new();
        for b in &self.beta {
            let beta: RationalArg = b.parse()?;
            for &n in &self.n {
                for &workers in &self.workers {
                    let mut c = RunConfig::new(n, beta);
                    c.precision_bits = self.precision_bits;
                    c.workers = workers;
                    c.channel = channel;
                    c.verify = !self.no_verify;
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}
