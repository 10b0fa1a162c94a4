// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Num;

use super::gamma::{gamma_interval, round_midpoint};
use super::RationalArg;
use crate::error::{Error, Result};
use crate::fixed::{FixedInterval, FixedPoint};
use crate::ldlt::{IntervalSymmetricMatrix, SymmetricMatrix};

/// Enclosure of the moment `(1/β) Γ((1 + s)/β)` at `frac_bits`.
pub fn moment_interval(s: usize, beta: RationalArg, frac_bits: u32) -> FixedInterval {
    let (p, q) = (beta.num(), beta.den());
    let arg = RationalArg::new((1 + s as u64) * q, p).expect("positive by construction");
    let guard = 4 + (64 - q.leading_zeros());
    gamma_interval(arg, frac_bits + guard)
        .scale_ratio(&BigInt::from(q), &BigInt::from(p), frac_bits + 4)
        .expect("beta is positive")
        .rescale_outward(frac_bits)
}

/// The moment `(1/β) Γ((1 + s)/β)` with absolute error below `2^-frac_bits`.
pub fn moment_fixed(s: usize, beta: RationalArg, frac_bits: u32) -> FixedPoint {
    let (p, q) = (beta.num(), beta.den());
    let arg = RationalArg::new((1 + s as u64) * q, p).expect("positive by construction");
    let guard = 4 + (64 - q.leading_zeros());
    let fine = gamma_interval(arg, frac_bits + guard)
        .scale_ratio(&BigInt::from(q), &BigInt::from(p), frac_bits + 4)
        .expect("beta is positive");
    round_midpoint(&fine, frac_bits)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("matrix order must be at least 1".into()));
    }
    Ok(())
}

/// `M[i][j] = (1/β) Γ((1 + i + j)/β)` for `0 ≤ i, j < n`.
///
/// Only the `2n - 1` anti-diagonal values are stored, so symmetry and
/// Hankel structure hold by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelMatrix {
    n: usize,
    beta: RationalArg,
    frac_bits: u32,
    moments: Vec<FixedPoint>,
}

pub fn build_matrix(n: usize, beta: RationalArg, frac_bits: u32) -> Result<HankelMatrix> {
    check_order(n)?;
    // Largest argument first: it needs the most base precision, and the
    // cached base value then serves every smaller one.
    let mut moments: Vec<_> = (0..2 * n - 1)
        .rev()
        .map(|s| moment_fixed(s, beta, frac_bits))
        .collect();
    moments.reverse();
    Ok(HankelMatrix {
        n,
        beta,
        frac_bits,
        moments,
    })
}

impl HankelMatrix {
    pub fn beta(&self) -> RationalArg {
        self.beta
    }

    /// Value on anti-diagonal `s = i + j`.
    pub fn moment(&self, s: usize) -> &FixedPoint {
        &self.moments[s]
    }

    pub fn moments(&self) -> &[FixedPoint] {
        &self.moments
    }

    /// One line per anti-diagonal: `s=<i+j> hex=<mantissa> fracbits=<K>`.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for (s, m) in self.moments.iter().enumerate() {
            let _ = writeln!(
                out,
                "s={s} hex={} fracbits={}",
                m.mantissa().to_str_radix(16),
                m.frac_bits()
            );
        }
        out
    }

    pub fn from_dump(text: &str, beta: RationalArg) -> Result<Self> {
        let bad = |msg: String| Error::MalformedDump(msg);
        let mut moments = Vec::new();
        let mut frac_bits = None;
        for (line_no, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(' ').collect();
            let [s, hex, fb] = fields.as_slice() else {
                return Err(bad(format!("line {}: expected three fields", line_no + 1)));
            };
            let s: usize = s
                .strip_prefix("s=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("line {}: bad index", line_no + 1)))?;
            if s != moments.len() {
                return Err(bad(format!("line {}: index {s} out of sequence", line_no + 1)));
            }
            let mantissa = hex
                .strip_prefix("hex=")
                .and_then(|v| BigInt::from_str_radix(v, 16).ok())
                .ok_or_else(|| bad(format!("line {}: bad mantissa", line_no + 1)))?;
            let fb: u32 = fb
                .strip_prefix("fracbits=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("line {}: bad fracbits", line_no + 1)))?;
            if *frac_bits.get_or_insert(fb) != fb {
                return Err(bad(format!("line {}: mixed precision", line_no + 1)));
            }
            moments.push(FixedPoint::new(mantissa, fb));
        }
        if moments.len() % 2 == 0 {
            return Err(bad(format!("{} anti-diagonals is not 2n - 1", moments.len())));
        }
        Ok(Self {
            n: moments.len().div_ceil(2),
            beta,
            frac_bits: frac_bits.unwrap_or_default(),
            moments,
        })
    }
}

impl SymmetricMatrix for HankelMatrix {
    fn order(&self) -> usize {
        self.n
    }

    fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    fn entry(&self, row: usize, col: usize) -> &FixedPoint {
        &self.moments[row + col]
    }
}

/// Interval-valued counterpart of [`HankelMatrix`] for certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedHankelMatrix {
    n: usize,
    beta: RationalArg,
    frac_bits: u32,
    moments: Vec<FixedInterval>,
}

pub fn build_certified_matrix(
    n: usize,
    beta: RationalArg,
    frac_bits: u32,
) -> Result<CertifiedHankelMatrix> {
    check_order(n)?;
    let mut moments: Vec<_> = (0..2 * n - 1)
        .rev()
        .map(|s| moment_interval(s, beta, frac_bits))
        .collect();
    moments.reverse();
    Ok(CertifiedHankelMatrix {
        n,
        beta,
        frac_bits,
        moments,
    })
}

impl CertifiedHankelMatrix {
    pub fn beta(&self) -> RationalArg {
        self.beta
    }

    pub fn moment(&self, s: usize) -> &FixedInterval {
        &self.moments[s]
    }
}

impl IntervalSymmetricMatrix for CertifiedHankelMatrix {
    fn order(&self) -> usize {
        self.n
    }

    fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    fn entry(&self, row: usize, col: usize) -> &FixedInterval {
        &self.moments[row + col]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_matrix() {
        let m = build_matrix(4, RationalArg::integer(1).unwrap(), 40).unwrap();
        let fact = [1, 1, 2, 6, 24, 120, 720];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.entry(i, j), &FixedPoint::from_integer(fact[i + j], 40));
            }
        }
    }

    #[test]
    fn one_by_one() {
        let m = build_matrix(1, RationalArg::integer(1).unwrap(), 8).unwrap();
        assert_eq!(m.order(), 1);
        assert_eq!(m.entry(0, 0), &FixedPoint::one(8));
    }

    #[test]
    fn zero_order_rejected() {
        assert!(build_matrix(0, RationalArg::integer(1).unwrap(), 8).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let beta = RationalArg::new(7, 4).unwrap();
        let m = build_matrix(3, beta, 96).unwrap();
        let text = m.to_dump();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("s=0 hex="));
        assert!(text.lines().all(|l| l.ends_with(" fracbits=96")));
        assert_eq!(HankelMatrix::from_dump(&text, beta).unwrap(), m);
    }

    #[test]
    fn dump_rejects_garbage() {
        let beta = RationalArg::integer(1).unwrap();
        assert!(HankelMatrix::from_dump("s=0 hex=1 fracbits=0\ns=1 hex=1 fracbits=0\n", beta).is_err());
        assert!(HankelMatrix::from_dump("s=1 hex=1 fracbits=0\n", beta).is_err());
        assert!(HankelMatrix::from_dump("s=0 hex=zz fracbits=0\n", beta).is_err());
        assert!(HankelMatrix::from_dump("s=0 hex=1 fracbits=0 extra\n", beta).is_err());
        assert!(HankelMatrix::from_dump(
            "s=0 hex=1 fracbits=0\ns=1 hex=1 fracbits=0\ns=2 hex=1 fracbits=1\n",
            beta
        )
        .is_err());
    }

    #[test]
    fn certified_encloses_plain() {
        let beta = RationalArg::new(7, 4).unwrap();
        let plain = build_matrix(4, beta, 128).unwrap();
        let cert = build_certified_matrix(4, beta, 128).unwrap();
        for s in 0..7 {
            let iv = cert.moment(s);
            let slack = FixedInterval::new(
                iv.lo().checked_sub(&FixedPoint::new(1.into(), 128)).unwrap(),
                iv.hi().checked_add(&FixedPoint::new(1.into(), 128)).unwrap(),
            )
            .unwrap();
            assert!(slack.contains(plain.moment(s)));
        }
    }
}
