// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::MAX_ORACLE_ORDER;
use crate::error::{Error, Result};
use crate::fixed::FixedPoint;
use crate::ldlt::SymmetricMatrix;

/// Dense square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

fn fixed_to_rational(x: &FixedPoint) -> BigRational {
    BigRational::new(x.mantissa().clone(), BigInt::one() << x.frac_bits())
}

impl RationalMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Self { n, entries }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        Self::from_fn(rows.len(), |r, c| BigRational::from_integer(rows[r][c].into()))
    }

    /// The exact dyadic values held by a fixed-point matrix.
    pub fn from_fixed<M: SymmetricMatrix + ?Sized>(m: &M) -> Self {
        Self::from_fn(m.order(), |r, c| {
            let (r, c) = if r >= c { (r, c) } else { (c, r) };
            fixed_to_rational(m.entry(r, c))
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    /// `self - x·I`.
    pub fn shifted(&self, x: &BigRational) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + i] -= x;
        }
        out
    }

    fn guard(&self) -> Result<()> {
        if self.n > MAX_ORACLE_ORDER {
            return Err(Error::SizeGuard {
                n: self.n,
                max: MAX_ORACLE_ORDER,
            });
        }
        Ok(())
    }

    /// Integer matrix `D·self` with `D` the common denominator.
    fn scaled_integers(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let d = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let rows = (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        let e = self.entry(r, c);
                        e.numer() * (&d / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, d)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row swaps.
pub fn det_exact(m: &RationalMatrix) -> Result<BigRational> {
    m.guard()?;
    let n = m.n;
    if n == 0 {
        return Ok(BigRational::one());
    }
    let (mut a, d) = m.scaled_integers();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigRational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det_scaled = sign * &a[n - 1][n - 1];
    Ok(BigRational::new(det_scaled, num_traits::Pow::pow(d, n)))
}

/// Exact determinant by Laplace expansion along rows, memoized on the set of
/// remaining columns. Independent of [`det_exact`].
pub fn det_cofactor(m: &RationalMatrix) -> Result<BigRational> {
    m.guard()?;
    fn expand(
        m: &RationalMatrix,
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, BigRational>,
    ) -> BigRational {
        if row == m.n {
            return BigRational::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut total = BigRational::zero();
        let mut parity = false;
        for c in 0..m.n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = m.entry(row, c);
            if !e.is_zero() {
                let minor = expand(m, row + 1, cols & !(1 << c), memo);
                let term = e * minor;
                if parity {
                    total -= term;
                } else {
                    total += term;
                }
            }
            parity = !parity;
        }
        memo.insert(cols, total.clone());
        total
    }
    let all = if m.n == 0 { 0 } else { (1u32 << m.n) - 1 };
    Ok(expand(m, 0, all, &mut HashMap::new()))
}

/// Exact `D` of `M = L·D·Lᵀ` without pivoting. Fails on a zero leading pivot.
pub fn ldlt_pivots_exact(m: &RationalMatrix) -> Result<Vec<BigRational>> {
    m.guard()?;
    let n = m.n;
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| (0..n).map(|c| m.entry(r, c).clone()).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for p in 0..n {
        let d = a[p][p].clone();
        if d.is_zero() && p + 1 < n {
            return Err(Error::ZeroPivot {
                index: p,
                frac_bits: 0,
            });
        }
        for r in p + 1..n {
            let l = &a[r][p] / &d;
            for c in p + 1..n {
                let delta = &l * &a[p][c];
                a[r][c] -= delta;
            }
        }
        pivots.push(d);
    }
    Ok(pivots)
}
