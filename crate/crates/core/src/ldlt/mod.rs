// SPDX-License-Identifier: Apache-2.0

//! `det(M - xI)` by LDLᵀ factorization in submatrix order.
//!
//! Matrix entries carry `K` fractional bits. A finished column is truncated to
//! `K/2` bits (`C`) and divided by its pivot into `CDivDiag`, also at `K/2`
//! bits. The update `M[row][col] -= C[col] · CDivDiag[row]` is then exact at
//! `K` bits, so the only roundings happen when a column is finished. This is
//! what makes the parallel pipeline bit-identical to the serial loop.
//!
//! No pivoting is done: for `x` below the smallest eigenvalue the shifted
//! matrix is positive definite and every pivot is positive.

mod assign;
mod ball;
mod channel;
mod parallel;
mod serial;
mod timing;
mod workspace;

use crate::fixed::{FixedInterval, FixedPoint};

pub use assign::{assign_columns, ColumnAssignment};
pub use channel::{ChannelSpec, ColumnChannel, SharedMemoryChannel, ThrottledChannel};
pub use parallel::{ldlt_det_parallel, ParallelOptions};
pub use serial::{ldlt_det_interval, ldlt_det_serial, ldlt_factor_serial, IntervalDeterminant};
pub use timing::{Phase, TimingBreakdown};
pub use workspace::{ColumnBuffers, ShiftedWorkspace};

/// Read access to the lower triangle of a symmetric fixed-point matrix.
pub trait SymmetricMatrix: Sync {
    fn order(&self) -> usize;
    fn frac_bits(&self) -> u32;
    /// Entry at `(row, col)`; callers only ask for `row ≥ col`.
    fn entry(&self, row: usize, col: usize) -> &FixedPoint;
}

pub trait IntervalSymmetricMatrix {
    fn order(&self) -> usize;
    fn frac_bits(&self) -> u32;
    fn entry(&self, row: usize, col: usize) -> &FixedInterval;
}

/// Determinant together with the pivots `D[i][i]` it is the product of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Determinant {
    pub value: FixedPoint,
    pub pivots: Vec<FixedPoint>,
}

/// Dense lower-triangle storage, used for arbitrary symmetric inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseSymmetric {
    n: usize,
    frac_bits: u32,
    lower: Vec<FixedPoint>,
}

impl DenseSymmetric {
    /// Build from a function evaluated on the lower triangle.
    pub fn from_fn(n: usize, frac_bits: u32, mut f: impl FnMut(usize, usize) -> FixedPoint) -> Self {
        let mut lower = Vec::with_capacity(n * (n + 1) / 2);
        for row in 0..n {
            for col in 0..=row {
                let v = f(row, col);
                assert_eq!(v.frac_bits(), frac_bits, "entry precision must match");
                lower.push(v);
            }
        }
        Self { n, frac_bits, lower }
    }

    pub fn from_source(m: &(impl SymmetricMatrix + ?Sized)) -> Self {
        Self::from_fn(m.order(), m.frac_bits(), |r, c| m.entry(r, c).clone())
    }
}

impl SymmetricMatrix for DenseSymmetric {
    fn order(&self) -> usize {
        self.n
    }

    fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    fn entry(&self, row: usize, col: usize) -> &FixedPoint {
        let (r, c) = if row >= col { (row, col) } else { (col, row) };
        &self.lower[r * (r + 1) / 2 + c]
    }
}

/// Interval version of [`DenseSymmetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseIntervalSymmetric {
    n: usize,
    frac_bits: u32,
    lower: Vec<FixedInterval>,
}

impl DenseIntervalSymmetric {
    pub fn from_fn(
        n: usize,
        frac_bits: u32,
        mut f: impl FnMut(usize, usize) -> FixedInterval,
    ) -> Self {
        let mut lower = Vec::with_capacity(n * (n + 1) / 2);
        for row in 0..n {
            for col in 0..=row {
                let v = f(row, col);
                assert_eq!(v.frac_bits(), frac_bits, "entry precision must match");
                lower.push(v);
            }
        }
        Self { n, frac_bits, lower }
    }
}

impl IntervalSymmetricMatrix for DenseIntervalSymmetric {
    fn order(&self) -> usize {
        self.n
    }

    fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    fn entry(&self, row: usize, col: usize) -> &FixedInterval {
        let (r, c) = if row >= col { (row, col) } else { (col, row) };
        &self.lower[r * (r + 1) / 2 + c]
    }
}
