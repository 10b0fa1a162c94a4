// SPDX-License-Identifier: Apache-2.0

//! Binary fixed-point numbers over arbitrary-size integers.
//!
//! A [`FixedPoint`] is a mantissa scaled by `2^-frac_bits`. The integer part is
//! never scaled away, so values such as `Γ(1797)` (about 5000 decimal digits)
//! are carried exactly to the last fractional bit. Plain arithmetic truncates
//! toward zero; [`FixedInterval`] rounds outward.

mod decimal;
mod interval;

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use decimal::{fp_bump_last_digit, fp_truncate_sig_digits, Decimal};
pub use interval::{
    iv_add, iv_div, iv_div_to, iv_mul, iv_mul_to, iv_sign, iv_sub, FixedInterval, IntervalSign,
};

/// Direction used when discarding fractional bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    TowardZero,
    Floor,
    Ceil,
}

pub(crate) fn shr_round(v: &BigInt, bits: u32, mode: Rounding) -> BigInt {
    if bits == 0 {
        return v.clone();
    }
    // `>>` on BigInt rounds toward negative infinity.
    match mode {
        Rounding::Floor => v >> bits,
        Rounding::Ceil => -((-v) >> bits),
        Rounding::TowardZero => {
            if v.is_negative() {
                -((-v) >> bits)
            } else {
                v >> bits
            }
        }
    }
}

pub(crate) fn div_round(num: &BigInt, den: &BigInt, mode: Rounding) -> BigInt {
    match mode {
        Rounding::TowardZero => num / den,
        Rounding::Floor => num.div_floor(den),
        Rounding::Ceil => Integer::div_ceil(num, den),
    }
}

/// Re-express a mantissa given at `from` fractional bits with `to` bits.
pub(crate) fn rescale_mantissa(m: &BigInt, from: u32, to: u32, mode: Rounding) -> BigInt {
    match to.cmp(&from) {
        Ordering::Equal => m.clone(),
        Ordering::Greater => m << (to - from),
        Ordering::Less => shr_round(m, from - to, mode),
    }
}

/// `mantissa · 2^(-frac_bits)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    mantissa: BigInt,
    frac_bits: u32,
}

impl FixedPoint {
    pub fn new(mantissa: BigInt, frac_bits: u32) -> Self {
        Self { mantissa, frac_bits }
    }

    pub fn zero(frac_bits: u32) -> Self {
        Self::new(BigInt::zero(), frac_bits)
    }

    pub fn one(frac_bits: u32) -> Self {
        Self::new(BigInt::one() << frac_bits, frac_bits)
    }

    pub fn from_integer(value: impl Into<BigInt>, frac_bits: u32) -> Self {
        Self::new(value.into() << frac_bits, frac_bits)
    }

    /// `num / den` truncated toward zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, frac_bits: u32) -> Result<Self> {
        Self::from_ratio_rounded(num, den, frac_bits, Rounding::TowardZero)
    }

    pub fn from_ratio_rounded(
        num: &BigInt,
        den: &BigInt,
        frac_bits: u32,
        mode: Rounding,
    ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let scaled = num << frac_bits;
        Ok(Self::new(div_round(&scaled, den, mode), frac_bits))
    }

    /// Nearest representable value to a finite `f64`, truncated toward zero.
    pub fn from_f64(value: f64, frac_bits: u32) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("{value} is not finite")));
        }
        let bits = value.to_bits();
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (significand, exp2) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), exponent - 1075)
        };
        let mut m = BigInt::from(significand);
        if value.is_sign_negative() {
            m = -m;
        }
        let shift = exp2 + i64::from(frac_bits);
        let mantissa = if shift >= 0 {
            m << shift as u64
        } else {
            shr_round(&m, (-shift) as u32, Rounding::TowardZero)
        };
        Ok(Self::new(mantissa, frac_bits))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn into_mantissa(self) -> BigInt {
        self.mantissa
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.frac_bits)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.mantissa, self.frac_bits)
    }

    /// Change precision, truncating toward zero when bits are dropped.
    pub fn rescale(&self, frac_bits: u32) -> Self {
        self.rescale_with(frac_bits, Rounding::TowardZero)
    }

    pub fn rescale_with(&self, frac_bits: u32, mode: Rounding) -> Self {
        Self::new(
            rescale_mantissa(&self.mantissa, self.frac_bits, frac_bits, mode),
            frac_bits,
        )
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.frac_bits != other.frac_bits {
            return Err(Error::FracBitsMismatch {
                left: self.frac_bits,
                right: other.frac_bits,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::new(&self.mantissa + &other.mantissa, self.frac_bits))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::new(&self.mantissa - &other.mantissa, self.frac_bits))
    }

    /// Floor of log2 |x|, or `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.mantissa.bits() as i64 - 1 - i64::from(self.frac_bits))
    }

    /// Approximate value; overflows to ±inf and underflows to 0.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits();
        let drop = bits.saturating_sub(64);
        let top = (self.mantissa.abs() >> drop).to_f64().unwrap_or(f64::INFINITY);
        let exp = drop as i64 - i64::from(self.frac_bits);
        let magnitude = if exp > 2000 {
            f64::INFINITY
        } else if exp < -2200 {
            0.0
        } else {
            // Split the power so an intermediate 2^exp cannot overflow early.
            let half = exp / 2;
            top * 2f64.powi(half as i32) * 2f64.powi((exp - half) as i32)
        };
        if self.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }
}

impl PartialOrd for FixedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact value ordering, independent of the precision each side carries.
impl Ord for FixedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        let f = self.frac_bits.max(other.frac_bits);
        let a = rescale_mantissa(&self.mantissa, self.frac_bits, f, Rounding::TowardZero);
        let b = rescale_mantissa(&other.mantissa, other.frac_bits, f, Rounding::TowardZero);
        a.cmp(&b)
    }
}

/// Product truncated toward zero to `out_frac_bits`.
pub fn fp_mul(a: &FixedPoint, b: &FixedPoint, out_frac_bits: u32) -> FixedPoint {
    let product = &a.mantissa * &b.mantissa;
    FixedPoint::new(
        rescale_mantissa(
            &product,
            a.frac_bits + b.frac_bits,
            out_frac_bits,
            Rounding::TowardZero,
        ),
        out_frac_bits,
    )
}

/// Quotient truncated toward zero to `out_frac_bits`.
pub fn fp_div(a: &FixedPoint, b: &FixedPoint, out_frac_bits: u32) -> Result<FixedPoint> {
    fp_div_rounded(a, b, out_frac_bits, Rounding::TowardZero)
}

pub(crate) fn fp_div_rounded(
    a: &FixedPoint,
    b: &FixedPoint,
    out_frac_bits: u32,
    mode: Rounding,
) -> Result<FixedPoint> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // a/b · 2^out = a.m · 2^(out + b.f - a.f) / b.m
    let shift = i64::from(out_frac_bits) + i64::from(b.frac_bits) - i64::from(a.frac_bits);
    let (num, den) = if shift >= 0 {
        (&a.mantissa << shift as u64, b.mantissa.clone())
    } else {
        (a.mantissa.clone(), &b.mantissa << (-shift) as u64)
    };
    Ok(FixedPoint::new(div_round(&num, &den, mode), out_frac_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fx(v: f64, f: u32) -> FixedPoint {
        FixedPoint::from_f64(v, f).unwrap()
    }

    #[test]
    fn shifts_round_in_the_requested_direction() {
        let m = BigInt::from(-5);
        assert_eq!(shr_round(&m, 1, Rounding::Floor), BigInt::from(-3));
        assert_eq!(shr_round(&m, 1, Rounding::Ceil), BigInt::from(-2));
        assert_eq!(shr_round(&m, 1, Rounding::TowardZero), BigInt::from(-2));
        let p = BigInt::from(5);
        assert_eq!(shr_round(&p, 1, Rounding::Floor), BigInt::from(2));
        assert_eq!(shr_round(&p, 1, Rounding::Ceil), BigInt::from(3));
        assert_eq!(shr_round(&p, 1, Rounding::TowardZero), BigInt::from(2));
    }

    #[test]
    fn mul_exact_dyadic() {
        let r = fp_mul(&fx(1.5, 4), &fx(2.0, 4), 4);
        assert_eq!(r, fx(3.0, 4));
    }

    #[test]
    fn mul_identity() {
        let x = FixedPoint::new(BigInt::from(-123_456_789i64), 20);
        assert_eq!(fp_mul(&x, &FixedPoint::one(20), 20), x);
    }

    #[test]
    fn mul_truncates_toward_zero() {
        // 0.75 * 0.75 = 0.5625 -> 0.5 at one fractional bit, -0.5 for negatives
        let a = fx(0.75, 2);
        assert_eq!(fp_mul(&a, &a, 1), fx(0.5, 1));
        assert_eq!(fp_mul(&a.neg(), &a, 1), fx(-0.5, 1));
    }

    #[test]
    fn div_basic() {
        assert_eq!(fp_div(&fx(6.0, 8), &fx(3.0, 8), 8).unwrap(), fx(2.0, 8));
        let x = FixedPoint::new(BigInt::from(987_654_321u64), 17);
        assert_eq!(fp_div(&x, &x, 30).unwrap(), FixedPoint::one(30));
        assert_eq!(
            fp_div(&x, &FixedPoint::zero(3), 8),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn add_rejects_mismatched_precision() {
        let e = fx(1.0, 4).checked_add(&fx(1.0, 5)).unwrap_err();
        assert_eq!(e, Error::FracBitsMismatch { left: 4, right: 5 });
        assert_eq!(fx(1.0, 4).checked_sub(&fx(0.25, 4)).unwrap(), fx(0.75, 4));
    }

    #[test]
    fn ordering_is_by_value() {
        assert!(fx(0.5, 3) < fx(0.75, 10));
        assert_eq!(fx(0.5, 3).cmp(&fx(0.5, 40)), Ordering::Equal);
        assert!(fx(-1.0, 3) < FixedPoint::zero(1));
    }

    #[test]
    fn zero_is_mantissa_zero() {
        let z = fp_mul(&fx(0.0, 5), &fx(3.0, 5), 9);
        assert!(z.is_zero());
        assert_eq!(z.frac_bits(), 9);
    }

    #[test]
    fn to_f64_round_trip() {
        for v in [1.0, -2.5, 1e-30, 3.0e200, 0.1] {
            assert_eq!(fx(v, 1100).to_f64(), v);
        }
        assert_eq!(fx(1e-30, 1100).ilog2(), Some(-100));
    }
}
