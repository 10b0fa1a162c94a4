// SPDX-License-Identifier: Apache-2.0

use super::MAX_ORACLE_ORDER;
use crate::error::{Error, Result};
use crate::ldlt::SymmetricMatrix;

const MAX_SWEEPS: usize = 100;

/// Rotations are skipped once `|a_pq| ≤ REL_TOL · sqrt(|a_pp · a_qq|)`.
const REL_TOL: f64 = 1e-18;

#[derive(Clone, Debug, PartialEq)]
pub struct JacobiResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Frobenius norm of the off-diagonal part before each sweep.
    pub off_norms: Vec<f64>,
    pub sweeps: usize,
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

fn negligible(a: &[Vec<f64>], p: usize, q: usize) -> bool {
    a[p][q].abs() <= REL_TOL * (a[p][p] * a[q][q]).abs().sqrt()
}

/// Cyclic Jacobi with Rutishauser's rotation formulas.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> Result<JacobiResult> {
    let n = matrix.len();
    if n > MAX_ORACLE_ORDER {
        return Err(Error::SizeGuard {
            n,
            max: MAX_ORACLE_ORDER,
        });
    }
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    if matrix.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::OverflowGuard);
    }
    let mut a = matrix.to_vec();
    let mut off_norms = Vec::new();
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        off_norms.push(off_norm(&a));
        let done = (0..n).all(|p| (p + 1..n).all(|q| negligible(&a, p, q)));
        if done {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                if negligible(&a, p, q) {
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    continue;
                }
                let apq = a[p][q];
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p];
                    let h = a[r][q];
                    a[r][p] = g - s * (h + g * tau);
                    a[r][q] = h + s * (g - h * tau);
                    a[p][r] = a[r][p];
                    a[q][r] = a[r][q];
                }
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(JacobiResult {
        eigenvalues,
        off_norms,
        sweeps,
    })
}

pub fn smallest_eig_small(matrix: &[Vec<f64>]) -> Result<f64> {
    jacobi_eigen(matrix)?
        .eigenvalues
        .first()
        .copied()
        .ok_or_else(|| Error::InvalidArgument("empty matrix".into()))
}

/// Nearest `f64` entries of a fixed-point matrix.
pub fn matrix_to_f64<M: SymmetricMatrix + ?Sized>(m: &M) -> Result<Vec<Vec<f64>>> {
    let n = m.order();
    if n > MAX_ORACLE_ORDER {
        return Err(Error::SizeGuard {
            n,
            max: MAX_ORACLE_ORDER,
        });
    }
    let mut out = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..=r {
            let v = m.entry(r, c).to_f64();
            if !v.is_finite() {
                return Err(Error::OverflowGuard);
            }
            out[r][c] = v;
            out[c][r] = v;
        }
    }
    Ok(out)
}
