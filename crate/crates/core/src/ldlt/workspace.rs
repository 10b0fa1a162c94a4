// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::assign::ColumnAssignment;
use super::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::fixed::FixedPoint;

/// A finished column `p`: `C` (rows `p..n`, truncated to `K/2` bits) and
/// `CDivDiag = C / C[p]`, both stored as mantissas indexed by `row - p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnBuffers {
    pivot_col: usize,
    half_bits: u32,
    c: Arc<Vec<BigInt>>,
    cdd: Arc<Vec<BigInt>>,
}

fn quotient(num: &BigInt, pivot: &BigInt, half: u32) -> BigInt {
    // BigInt division truncates toward zero.
    (num << half) / pivot
}

impl ColumnBuffers {
    /// Compute every `CDivDiag` entry from `C`.
    pub fn from_column(pivot_col: usize, c: Vec<BigInt>, half_bits: u32, n: usize) -> Result<Self> {
        Self::complete(pivot_col, Arc::new(c), Vec::new(), half_bits, n)
    }

    /// `received` holds the leading `CDivDiag` entries for rows `p+1, p+2, …`
    /// that came over the channel; the rest are computed here.
    pub fn complete(
        pivot_col: usize,
        c: Arc<Vec<BigInt>>,
        received: Vec<BigInt>,
        half_bits: u32,
        n: usize,
    ) -> Result<Self> {
        let pivot = &c[0];
        if pivot.is_zero() && pivot_col + 1 < n {
            return Err(Error::ZeroPivot {
                index: pivot_col,
                frac_bits: 2 * half_bits,
            });
        }
        let mut cdd = Vec::with_capacity(c.len());
        cdd.push(BigInt::one() << half_bits);
        let have = received.len();
        cdd.extend(received);
        for v in &c[1 + have..] {
            cdd.push(quotient(v, pivot, half_bits));
        }
        Ok(Self {
            pivot_col,
            half_bits,
            c,
            cdd: Arc::new(cdd),
        })
    }

    pub fn pivot_col(&self) -> usize {
        self.pivot_col
    }

    /// `D[p][p]` at `K/2` fractional bits.
    pub fn pivot(&self) -> FixedPoint {
        FixedPoint::new(self.c[0].clone(), self.half_bits)
    }

    pub fn column(&self) -> &Arc<Vec<BigInt>> {
        &self.c
    }

    pub fn cdiv_diag(&self) -> &Arc<Vec<BigInt>> {
        &self.cdd
    }

    /// Approximate wire size of `C`.
    pub fn column_bytes(&self) -> usize {
        mantissa_bytes(&self.c[..])
    }
}

pub(crate) fn mantissa_bytes(values: &[BigInt]) -> usize {
    values.iter().map(|v| v.bits().div_ceil(8) as usize + 8).sum()
}

/// Trailing columns of `M - xI` as working mantissas at `K` bits. A worker only
/// materializes the columns it owns.
#[derive(Clone, Debug)]
pub struct ShiftedWorkspace {
    n: usize,
    frac_bits: u32,
    columns: Vec<Option<Vec<BigInt>>>,
}

impl ShiftedWorkspace {
    /// Every column of `m - shift·I`.
    pub fn new<M: SymmetricMatrix + ?Sized>(m: &M, shift: &FixedPoint) -> Result<Self> {
        Self::with_columns(m, shift, |_| true)
    }

    /// Only the columns assigned to `rank`.
    pub fn for_owner<M: SymmetricMatrix + ?Sized>(
        m: &M,
        shift: &FixedPoint,
        assignment: &ColumnAssignment,
        rank: usize,
    ) -> Result<Self> {
        Self::with_columns(m, shift, |c| assignment.owner(c) == rank)
    }

    pub(crate) fn with_columns<M: SymmetricMatrix + ?Sized>(
        m: &M,
        shift: &FixedPoint,
        keep: impl Fn(usize) -> bool,
    ) -> Result<Self> {
        let (n, k) = (m.order(), m.frac_bits());
        if shift.frac_bits() != k {
            return Err(Error::FracBitsMismatch {
                left: k,
                right: shift.frac_bits(),
            });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let columns = (0..n)
            .map(|col| {
                keep(col).then(|| {
                    (col..n)
                        .map(|row| {
                            let e = m.entry(row, col).mantissa();
                            if row == col {
                                e - shift.mantissa()
                            } else {
                                e.clone()
                            }
                        })
                        .collect()
                })
            })
            .collect();
        Ok(Self {
            n,
            frac_bits: k,
            columns,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn half_bits(&self) -> u32 {
        self.frac_bits / 2
    }

    pub fn owns(&self, col: usize) -> bool {
        self.columns[col].is_some()
    }

    /// Current working value at `(row, col)`, if the column is held here.
    pub fn entry(&self, row: usize, col: usize) -> Option<FixedPoint> {
        let column = self.columns.get(col)?.as_ref()?;
        let v = column.get(row.checked_sub(col)?)?;
        Some(FixedPoint::new(v.clone(), self.frac_bits))
    }

    /// Retire column `p`: truncate it to `K/2` bits and divide by the pivot.
    pub fn finish_column(&mut self, p: usize) -> Result<ColumnBuffers> {
        let column = self.columns[p]
            .take()
            .ok_or_else(|| Error::InvalidArgument(format!("column {p} is not held here")))?;
        let drop = self.frac_bits - self.half_bits();
        // Arithmetic shift floors; truncate toward zero to match fp_mul.
        let c = column
            .into_iter()
            .map(|v| {
                if v.sign() == num_bigint::Sign::Minus {
                    -((-v) >> drop)
                } else {
                    v >> drop
                }
            })
            .collect();
        ColumnBuffers::from_column(p, c, self.half_bits(), self.n)
    }

    /// Apply the finished column to each held column in `first..=last`.
    pub fn apply_column(&mut self, buf: &ColumnBuffers, first: usize, last: usize) {
        let p = buf.pivot_col;
        let extra = self.frac_bits - 2 * self.half_bits();
        let (c, cdd) = (&buf.c, &buf.cdd);
        for col in first.max(p + 1)..=last.min(self.n - 1) {
            let Some(target) = self.columns[col].as_mut() else {
                continue;
            };
            let mult = &c[col - p];
            if mult.is_zero() {
                continue;
            }
            for (offset, slot) in target.iter_mut().enumerate() {
                let prod = mult * &cdd[col + offset - p];
                if extra == 0 {
                    *slot -= prod;
                } else {
                    *slot -= prod << extra;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldlt::DenseSymmetric;

    #[test]
    fn truncation_is_toward_zero() {
        let m = DenseSymmetric::from_fn(2, 4, |r, c| {
            FixedPoint::new(BigInt::from(if r == c { 37 } else { -37 }), 4)
        });
        let mut ws = ShiftedWorkspace::new(&m, &FixedPoint::zero(4)).unwrap();
        let buf = ws.finish_column(0).unwrap();
        // 37/16 → 9/4 and -37/16 → -9/4 at two bits
        assert_eq!(buf.column().as_slice(), &[BigInt::from(9), BigInt::from(-9)]);
        assert_eq!(buf.cdiv_diag()[1], BigInt::from(-4));
    }

    #[test]
    fn zero_pivot_reported() {
        let m = DenseSymmetric::from_fn(2, 8, |r, c| FixedPoint::from_integer(i64::from(r != c), 8));
        let mut ws = ShiftedWorkspace::new(&m, &FixedPoint::zero(8)).unwrap();
        assert_eq!(
            ws.finish_column(0),
            Err(Error::ZeroPivot {
                index: 0,
                frac_bits: 8
            })
        );
    }

    #[test]
    fn shift_precision_must_match() {
        let m = DenseSymmetric::from_fn(1, 8, |_, _| FixedPoint::one(8));
        assert!(matches!(
            ShiftedWorkspace::new(&m, &FixedPoint::zero(9)),
            Err(Error::FracBitsMismatch { .. })
        ));
    }

    #[test]
    fn partial_receive_matches_local() {
        let c: Vec<BigInt> = [12, 5, -7, 30].iter().map(|&v| BigInt::from(v)).collect();
        let full = ColumnBuffers::from_column(2, c.clone(), 6, 6).unwrap();
        let part = full.cdiv_diag()[1..3].to_vec();
        let rebuilt = ColumnBuffers::complete(2, Arc::new(c), part, 6, 6).unwrap();
        assert_eq!(full, rebuilt);
    }
}
