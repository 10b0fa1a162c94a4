// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_traits::One;

use super::ball::Ball;
use super::workspace::{ColumnBuffers, ShiftedWorkspace};
use super::{Determinant, IntervalSymmetricMatrix, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::fixed::{fp_mul, iv_mul_to, FixedInterval, FixedPoint};

/// Run the factorization, handing each finished column to `on_column`.
/// Returns the pivots `D[0][0] … D[n-1][n-1]` at `K/2` bits.
pub fn ldlt_factor_serial<M: SymmetricMatrix + ?Sized>(
    m: &M,
    shift: &FixedPoint,
    mut on_column: impl FnMut(&ColumnBuffers),
) -> Result<Vec<FixedPoint>> {
    let mut ws = ShiftedWorkspace::new(m, shift)?;
    let n = ws.order();
    let mut pivots = Vec::with_capacity(n);
    for p in 0..n {
        let buf = ws.finish_column(p)?;
        ws.apply_column(&buf, p + 1, n - 1);
        pivots.push(buf.pivot());
        on_column(&buf);
    }
    Ok(pivots)
}

pub(crate) fn pivot_product(pivots: &[FixedPoint], half: u32) -> FixedPoint {
    pivots
        .iter()
        .fold(FixedPoint::one(half), |acc, d| fp_mul(&acc, d, half))
}

/// `det(m - shift·I)` at `K/2` fractional bits.
pub fn ldlt_det_serial<M: SymmetricMatrix + ?Sized>(m: &M, shift: &FixedPoint) -> Result<Determinant> {
    let pivots = ldlt_factor_serial(m, shift, |_| {})?;
    let value = pivot_product(&pivots, m.frac_bits() / 2);
    Ok(Determinant { value, pivots })
}

/// Enclosure of `det(m - shift)` and of every pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalDeterminant {
    pub value: FixedInterval,
    pub pivots: Vec<FixedInterval>,
}

/// Same elimination order as the point version, with every rounding outward.
/// A pivot whose enclosure contains zero ends the run with `ZeroPivot`.
pub fn ldlt_det_interval<M: IntervalSymmetricMatrix + ?Sized>(
    m: &M,
    shift: &FixedInterval,
) -> Result<IntervalDeterminant> {
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
    let half = k / 2;
    let drop = k - half;
    let extra = k - 2 * half;
    let mut cols: Vec<Vec<Ball>> = (0..n)
        .map(|col| {
            (col..n)
                .map(|row| {
                    let e = m.entry(row, col);
                    if row == col {
                        Ball::from_bounds(
                            &(e.lo().mantissa() - shift.hi().mantissa()),
                            &(e.hi().mantissa() - shift.lo().mantissa()),
                        )
                    } else {
                        Ball::from_bounds(e.lo().mantissa(), e.hi().mantissa())
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for p in 0..n {
        let c: Vec<Ball> = std::mem::take(&mut cols[p]).iter().map(|b| b.shrink(drop)).collect();
        let pivot = &c[0];
        if p + 1 < n {
            if pivot.contains_zero() {
                return Err(Error::ZeroPivot {
                    index: p,
                    frac_bits: k,
                });
            }
            let cdd: Vec<Ball> = c.iter().map(|v| v.div(pivot, half)).collect::<Result<_>>()?;
            for col in p + 1..n {
                let mult = &c[col - p];
                for (offset, slot) in cols[col].iter_mut().enumerate() {
                    // Exact: the product has 2·half ≤ K bits.
                    slot.sub_assign(&mult.mul(&cdd[col + offset - p]), extra);
                }
            }
        }
        pivots.push(pivot.to_interval(half));
    }
    let mut value = FixedInterval::point(FixedPoint::new(BigInt::one() << half, half));
    for d in &pivots {
        value = iv_mul_to(&value, d, half);
    }
    Ok(IntervalDeterminant { value, pivots })
}
