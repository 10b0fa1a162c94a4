// SPDX-License-Identifier: Apache-2.0

//! Exact decimal scientific notation for fixed-point values.
//!
//! The format is `d.ddde±E`: lowercase `e`, no sign on the significand, no
//! `+` and no padding on the exponent. Conversion uses integer scaling by
//! powers of ten only.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::{div_round, FixedInterval, FixedPoint, Rounding};
use crate::error::{Error, Result};

fn pow10(n: u64) -> BigUint {
    Pow::pow(BigUint::from(10u32), n)
}

/// A positive decimal `significand · 10^(exponent - digits + 1)` whose
/// significand has exactly `digits` digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    significand: BigUint,
    digits: usize,
    exponent: i64,
}

impl Decimal {
    pub fn significand(&self) -> &BigUint {
        &self.significand
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Exact value as `(numerator, denominator)`.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        let shift = self.exponent - (self.digits as i64 - 1);
        let s = BigInt::from(self.significand.clone());
        if shift >= 0 {
            (s * BigInt::from(pow10(shift as u64)), BigInt::one())
        } else {
            (s, BigInt::from(pow10((-shift) as u64)))
        }
    }

    /// Enclosure of the decimal value at `frac_bits`.
    pub fn to_interval(&self, frac_bits: u32) -> FixedInterval {
        let (n, d) = self.to_ratio();
        FixedInterval::from_ratio(&n, &d, frac_bits).expect("denominator is a power of ten")
    }

    pub fn to_fixed(&self, frac_bits: u32, mode: Rounding) -> FixedPoint {
        let (n, d) = self.to_ratio();
        FixedPoint::new(div_round(&(n << frac_bits), &d, mode), frac_bits)
    }

    /// Add one unit in the last retained digit.
    pub fn bump_last_digit(&self) -> Self {
        let next = &self.significand + 1u32;
        if next == pow10(self.digits as u64) {
            Self {
                significand: pow10(self.digits as u64 - 1),
                digits: self.digits,
                exponent: self.exponent + 1,
            }
        } else {
            Self {
                significand: next,
                digits: self.digits,
                exponent: self.exponent,
            }
        }
    }

    /// Truncate a strictly positive value to `digits` significant digits.
    pub fn truncate(x: &FixedPoint, digits: usize) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::NonPositiveInput);
        }
        if digits == 0 {
            return Err(Error::InvalidArgument("need at least one digit".into()));
        }
        let m = x.mantissa().magnitude();
        let f = i64::from(x.frac_bits());
        // log10 estimate from the bit length; corrected below if off by one.
        let log2 = m.bits() as f64 - 1.0 - f as f64;
        let mut exponent = (log2 * std::f64::consts::LOG10_2).floor() as i64;
        let low = pow10(digits as u64 - 1);
        let high = pow10(digits as u64);
        loop {
            // floor(m · 10^(digits - 1 - exponent) / 2^f)
            let scale = digits as i64 - 1 - exponent;
            let q = if scale >= 0 {
                (m * pow10(scale as u64)) >> f as u64
            } else {
                m / (pow10((-scale) as u64) << f as u64)
            };
            if q >= high {
                exponent += 1;
            } else if q < low {
                exponent -= 1;
            } else {
                return Ok(Self {
                    significand: q,
                    digits,
                    exponent,
                });
            }
        }
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.significand.to_str_radix(10);
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            write!(f, "{head}e{}", self.exponent)
        } else {
            write!(f, "{head}.{tail}e{}", self.exponent)
        }
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedInput(s.to_string());
        let (mant, exp) = s.split_once('e').ok_or_else(bad)?;
        let exponent: i64 = {
            let body = exp.strip_prefix('-').unwrap_or(exp);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            exp.parse().map_err(|_| bad())?
        };
        let (head, tail) = match mant.split_once('.') {
            Some((h, t)) if !t.is_empty() => (h, t),
            Some(_) => return Err(bad()),
            None => (mant, ""),
        };
        if head.len() != 1 || !matches!(head.as_bytes()[0], b'1'..=b'9') {
            return Err(bad());
        }
        if !tail.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!("{head}{tail}");
        let significand = BigUint::parse_bytes(all.as_bytes(), 10).ok_or_else(bad)?;
        debug_assert!(!significand.is_zero());
        Ok(Self {
            significand,
            digits: all.len(),
            exponent,
        })
    }
}

/// `x` truncated toward zero to `digits` significant decimal digits.
pub fn fp_truncate_sig_digits(x: &FixedPoint, digits: usize) -> Result<String> {
    Ok(Decimal::truncate(x, digits)?.to_string())
}

/// `s` plus one unit in its last significant digit.
pub fn fp_bump_last_digit(s: &str) -> Result<String> {
    Ok(s.parse::<Decimal>()?.bump_last_digit().to_string())
}
