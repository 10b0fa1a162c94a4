// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Owner of every column. Reflected round-robin (`0, 1, …, S-1, S-1, …, 1, 0`,
/// repeating) so the shrinking trailing work stays balanced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnAssignment {
    owners: Vec<usize>,
    workers: usize,
}

pub fn assign_columns(n: usize, workers: usize) -> Result<ColumnAssignment> {
    if n == 0 || workers == 0 {
        return Err(Error::InvalidArgument(format!(
            "cannot assign {n} columns to {workers} workers"
        )));
    }
    let owners = (0..n)
        .map(|col| {
            let r = col % (2 * workers);
            if r < workers {
                r
            } else {
                2 * workers - 1 - r
            }
        })
        .collect();
    Ok(ColumnAssignment { owners, workers })
}

impl ColumnAssignment {
    pub fn owner(&self, col: usize) -> usize {
        self.owners[col]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owners
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn owned_by(&self, rank: usize) -> impl Iterator<Item = usize> + '_ {
        self.owners
            .iter()
            .enumerate()
            .filter(move |(_, &o)| o == rank)
            .map(|(c, _)| c)
    }
}
