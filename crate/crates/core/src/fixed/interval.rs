// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{div_round, rescale_mantissa, FixedPoint, Rounding};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` of fixed-point values sharing one precision.
///
/// Every operation rounds its lower bound down and its upper bound up, so the
/// exact result for any members of the operands lies inside the output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    lo: FixedPoint,
    hi: FixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalSign {
    Positive,
    Negative,
    Indeterminate,
}

impl FixedInterval {
    pub fn new(lo: FixedPoint, hi: FixedPoint) -> Result<Self> {
        lo.check_same(&hi)?;
        if lo.mantissa() > hi.mantissa() {
            return Err(Error::InvalidArgument(
                "interval lower bound exceeds upper bound".into(),
            ));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn from_mantissas(lo: BigInt, hi: BigInt, frac_bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Self {
            lo: FixedPoint::new(lo, frac_bits),
            hi: FixedPoint::new(hi, frac_bits),
        }
    }

    pub fn point(x: FixedPoint) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Tightest enclosure of the rational `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, frac_bits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let scaled = num << frac_bits;
        Ok(Self::from_mantissas(
            div_round(&scaled, den, Rounding::Floor),
            div_round(&scaled, den, Rounding::Ceil),
            frac_bits,
        ))
    }

    pub fn lo(&self) -> &FixedPoint {
        &self.lo
    }

    pub fn hi(&self) -> &FixedPoint {
        &self.hi
    }

    pub fn frac_bits(&self) -> u32 {
        self.lo.frac_bits()
    }

    pub fn width(&self) -> FixedPoint {
        FixedPoint::new(self.hi.mantissa() - self.lo.mantissa(), self.frac_bits())
    }

    pub fn contains(&self, x: &FixedPoint) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn rescale_outward(&self, frac_bits: u32) -> Self {
        let f = self.frac_bits();
        Self::from_mantissas(
            rescale_mantissa(self.lo.mantissa(), f, frac_bits, Rounding::Floor),
            rescale_mantissa(self.hi.mantissa(), f, frac_bits, Rounding::Ceil),
            frac_bits,
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    /// Multiply by the exact positive rational `num / den`, rounding outward
    /// into `out_frac_bits`.
    pub fn scale_ratio(&self, num: &BigInt, den: &BigInt, out_frac_bits: u32) -> Result<Self> {
        if !num.is_positive() || !den.is_positive() {
            return Err(Error::InvalidArgument(
                "interval scale factor must be positive".into(),
            ));
        }
        let f = self.frac_bits();
        let scale = |m: &BigInt, mode| {
            let n = m * num;
            if out_frac_bits >= f {
                div_round(&(n << (out_frac_bits - f)), den, mode)
            } else {
                div_round(&n, &(den << (f - out_frac_bits)), mode)
            }
        };
        Ok(Self::from_mantissas(
            scale(self.lo.mantissa(), Rounding::Floor),
            scale(self.hi.mantissa(), Rounding::Ceil),
            out_frac_bits,
        ))
    }
}

fn check_pair(a: &FixedInterval, b: &FixedInterval) -> Result<()> {
    a.lo.check_same(&b.lo)
}

pub fn iv_add(a: &FixedInterval, b: &FixedInterval) -> Result<FixedInterval> {
    check_pair(a, b)?;
    Ok(FixedInterval::from_mantissas(
        a.lo.mantissa() + b.lo.mantissa(),
        a.hi.mantissa() + b.hi.mantissa(),
        a.frac_bits(),
    ))
}

pub fn iv_sub(a: &FixedInterval, b: &FixedInterval) -> Result<FixedInterval> {
    check_pair(a, b)?;
    Ok(FixedInterval::from_mantissas(
        a.lo.mantissa() - b.hi.mantissa(),
        a.hi.mantissa() - b.lo.mantissa(),
        a.frac_bits(),
    ))
}

/// Exact product bounds as mantissas at `a.frac + b.frac` bits.
pub(crate) fn mul_bounds(a: &FixedInterval, b: &FixedInterval) -> (BigInt, BigInt) {
    let (al, ah) = (a.lo.mantissa(), a.hi.mantissa());
    let (bl, bh) = (b.lo.mantissa(), b.hi.mantissa());
    if !al.is_negative() && !bl.is_negative() {
        return (al * bl, ah * bh);
    }
    if !ah.is_positive() && !bh.is_positive() {
        return (ah * bh, al * bl);
    }
    if !al.is_negative() && !bh.is_positive() {
        return (ah * bl, al * bh);
    }
    if !ah.is_positive() && !bl.is_negative() {
        return (al * bh, ah * bl);
    }
    let candidates = [al * bl, al * bh, ah * bl, ah * bh];
    let lo = candidates.iter().min().cloned().unwrap_or_default();
    let hi = candidates.iter().max().cloned().unwrap_or_default();
    (lo, hi)
}

/// Product at the fractional precision of `a`.
pub fn iv_mul(a: &FixedInterval, b: &FixedInterval) -> Result<FixedInterval> {
    check_pair(a, b)?;
    Ok(iv_mul_to(a, b, a.frac_bits()))
}

/// Product rounded outward to `out_frac_bits`; operands may differ in precision.
pub fn iv_mul_to(a: &FixedInterval, b: &FixedInterval, out_frac_bits: u32) -> FixedInterval {
    let (lo, hi) = mul_bounds(a, b);
    let f = a.frac_bits() + b.frac_bits();
    FixedInterval::from_mantissas(
        rescale_mantissa(&lo, f, out_frac_bits, Rounding::Floor),
        rescale_mantissa(&hi, f, out_frac_bits, Rounding::Ceil),
        out_frac_bits,
    )
}

/// Quotient at the fractional precision of `a`.
pub fn iv_div(a: &FixedInterval, b: &FixedInterval) -> Result<FixedInterval> {
    check_pair(a, b)?;
    iv_div_to(a, b, a.frac_bits())
}

pub fn iv_div_to(a: &FixedInterval, b: &FixedInterval, out_frac_bits: u32) -> Result<FixedInterval> {
    if b.contains_zero() {
        return Err(Error::IntervalContainsZero);
    }
    let shift = i64::from(out_frac_bits) + i64::from(b.frac_bits()) - i64::from(a.frac_bits());
    let lift = |m: &BigInt| {
        if shift >= 0 {
            m << shift as u64
        } else {
            m.clone()
        }
    };
    let drop = |m: &BigInt| {
        if shift < 0 {
            m << (-shift) as u64
        } else {
            m.clone()
        }
    };
    let nums = [lift(a.lo.mantissa()), lift(a.hi.mantissa())];
    let dens = [drop(b.lo.mantissa()), drop(b.hi.mantissa())];
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for n in &nums {
        for d in &dens {
            let f = div_round(n, d, Rounding::Floor);
            let c = div_round(n, d, Rounding::Ceil);
            if lo.as_ref().is_none_or(|l| &f < l) {
                lo = Some(f);
            }
            if hi.as_ref().is_none_or(|h| &c > h) {
                hi = Some(c);
            }
        }
    }
    Ok(FixedInterval::from_mantissas(
        lo.unwrap_or_default(),
        hi.unwrap_or_default(),
        out_frac_bits,
    ))
}

pub fn iv_sign(a: &FixedInterval) -> IntervalSign {
    if a.lo.is_positive() {
        IntervalSign::Positive
    } else if a.hi.is_negative() {
        IntervalSign::Negative
    } else {
        IntervalSign::Indeterminate
    }
}
