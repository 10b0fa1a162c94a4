// SPDX-License-Identifier: Apache-2.0

//! Midpoint-radius enclosures on raw mantissas, for the interval elimination.
//! Radii stay a few words long while midpoints carry the full precision, so a
//! product costs one full multiply instead of two to four.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixed::{FixedInterval, FixedPoint};

/// Upper bound `man · 2^exp` with a one-word mantissa. Every operation
/// rounds up, so a `Mag` never understates the radius it stands for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Mag {
    man: u64,
    exp: u32,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };
    const ONE: Mag = Mag { man: 1, exp: 0 };

    fn norm(man: u128, exp: u32) -> Self {
        if man >> 64 == 0 {
            return Self { man: man as u64, exp };
        }
        let shift = 64 - man.leading_zeros();
        let mut m = man >> shift;
        if man & ((1u128 << shift) - 1) != 0 {
            m += 1;
        }
        if m >> 64 != 0 {
            Self { man: 1 << 63, exp: exp + shift + 1 }
        } else {
            Self { man: m as u64, exp: exp + shift }
        }
    }

    /// Smallest bound `≥ |v|` this format holds, or close to it.
    pub fn of_abs(v: &BigInt) -> Self {
        let bits = v.bits();
        if bits <= 64 {
            return Self {
                man: v.magnitude().to_u64().unwrap_or(0),
                exp: 0,
            };
        }
        let exp = (bits - 64) as u32;
        let top = (v.magnitude() >> exp).to_u64().unwrap_or(u64::MAX);
        let exact = v.magnitude().trailing_zeros().is_some_and(|t| t >= u64::from(exp));
        Self::norm(u128::from(top) + u128::from(!exact), exp)
    }

    /// Largest bound `≤ v` for `v ≥ 0`.
    fn floor(v: &BigInt) -> Self {
        let bits = v.bits();
        let exp = bits.saturating_sub(64) as u32;
        Self {
            man: (v.magnitude() >> exp).to_u64().unwrap_or(0),
            exp,
        }
    }

    pub fn value(&self) -> BigInt {
        BigInt::from(self.man) << self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn add(self, other: Self) -> Self {
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        if lo.is_zero() {
            return hi;
        }
        let d = hi.exp - lo.exp;
        if d >= 64 {
            // lo < 2^(lo.exp + 64) ≤ one unit of hi
            return Self::norm(u128::from(hi.man) + 1, hi.exp);
        }
        Self::norm((u128::from(hi.man) << d) + u128::from(lo.man), lo.exp)
    }

    pub fn mul(self, other: Self) -> Self {
        Self::norm(u128::from(self.man) * u128::from(other.man), self.exp + other.exp)
    }

    /// `self · 2^bits`.
    pub fn shl(self, bits: u32) -> Self {
        if self.is_zero() {
            self
        } else {
            Self { man: self.man, exp: self.exp + bits }
        }
    }

    /// `⌈self / 2^bits⌉`.
    pub fn shr_ceil(self, bits: u32) -> Self {
        if bits <= self.exp {
            return Self { man: self.man, exp: self.exp - bits };
        }
        let s = bits - self.exp;
        if self.is_zero() {
            return self;
        }
        if s >= 64 {
            return Self::ONE;
        }
        let m = self.man >> s;
        Self::norm(u128::from(m) + u128::from(self.man & ((1 << s) - 1) != 0), 0)
    }

    /// `⌈self / d⌉` for `d > 0`.
    fn div_ceil(self, d: Self) -> Self {
        if self.is_zero() {
            return self;
        }
        let num = u128::from(self.man) << 64;
        let den = u128::from(d.man);
        let q = num.div_ceil(den);
        let e = i64::from(self.exp) - i64::from(d.exp) - 64;
        if e >= 0 {
            return Self::norm(q, e as u32);
        }
        let s = (-e) as u32;
        if s >= 128 {
            return Self::ONE;
        }
        let m = q >> s;
        let up = q & ((1u128 << s) - 1) != 0;
        Self::norm(m + u128::from(up), 0)
    }

    /// `|x| ≤ self`
    fn covers(&self, x: &BigInt) -> bool {
        let (xb, sb) = (x.bits(), u64::from(self.exp) + (64 - u64::from(self.man.leading_zeros())));
        if self.is_zero() {
            return x.is_zero();
        }
        if xb < sb {
            return true;
        }
        if xb > sb {
            return false;
        }
        x.magnitude() <= self.value().magnitude()
    }
}

/// `[mid - rad, mid + rad]` in units of `2^-frac_bits` (the scale is implicit).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Ball {
    pub mid: BigInt,
    pub rad: Mag,
}

impl Ball {
    pub fn from_bounds(lo: &BigInt, hi: &BigInt) -> Self {
        let mid: BigInt = (lo + hi) >> 1u32;
        let rad = Mag::of_abs(&(hi - &mid));
        Self { mid, rad }
    }

    pub fn contains_zero(&self) -> bool {
        self.rad.covers(&self.mid)
    }

    /// Drop `bits` fractional bits, widening to keep the enclosure.
    pub fn shrink(&self, bits: u32) -> Self {
        if bits == 0 {
            return self.clone();
        }
        let unit = BigInt::from(1) << bits;
        let (mid, frac) = self.mid.div_mod_floor(&unit);
        let rad = if frac.is_zero() {
            self.rad.shr_ceil(bits)
        } else {
            // (rad + frac) / unit < rad / unit + 1
            self.rad.shr_ceil(bits).add(Mag::ONE)
        };
        Self { mid, rad }
    }

    /// Product; the scale is the sum of both scales. Only the midpoints
    /// need a full multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let mut rad = Mag::ZERO;
        if !other.rad.is_zero() {
            rad = rad.add(other.rad.mul(Mag::of_abs(&self.mid)));
        }
        if !self.rad.is_zero() {
            rad = rad.add(self.rad.mul(Mag::of_abs(&other.mid))).add(self.rad.mul(other.rad));
        }
        Self {
            mid: &self.mid * &other.mid,
            rad,
        }
    }

    /// `self / d`, scaled up by `2^shift` and enclosed outward. `d` must not
    /// contain zero.
    pub fn div(&self, d: &Self, shift: u32) -> Result<Self> {
        if d.contains_zero() {
            return Err(Error::IntervalContainsZero);
        }
        let (mid, rem) = (&self.mid << shift).div_mod_floor(&d.mid);
        let floor_err = if rem.is_zero() { Mag::ZERO } else { Mag::ONE };
        if self.rad.is_zero() && d.rad.is_zero() {
            return Ok(Self { mid, rad: floor_err });
        }
        // |u/w - m/p| ≤ (r_u·|p| + |m|·r_p) / ((|p| - r_p)·|p|)
        let p = d.mid.abs();
        let low = Mag::floor(&(&p - d.rad.value()));
        let den = low.mul_floor(Mag::floor(&p));
        let num = self.rad.mul(Mag::of_abs(&p)).add(d.rad.mul(Mag::of_abs(&self.mid))).shl(shift);
        Ok(Self {
            mid,
            rad: num.div_ceil(den).add(floor_err),
        })
    }

    pub fn sub_assign(&mut self, other: &Self, shift: u32) {
        if shift == 0 {
            self.mid -= &other.mid;
        } else {
            self.mid -= &other.mid << shift;
        }
        self.rad = self.rad.add(other.rad.shl(shift));
    }

    pub fn to_interval(&self, frac_bits: u32) -> FixedInterval {
        let rad = self.rad.value();
        FixedInterval::new(
            FixedPoint::new(&self.mid - &rad, frac_bits),
            FixedPoint::new(&self.mid + &rad, frac_bits),
        )
        .expect("radius is non-negative")
    }

    #[cfg(test)]
    fn contains(&self, v: &BigInt) -> bool {
        (v - &self.mid).abs() <= self.rad.value()
    }
}

impl Mag {
    /// Largest bound `≤ self · other`.
    fn mul_floor(self, other: Self) -> Self {
        let p = u128::from(self.man) * u128::from(other.man);
        let shift = (128 - p.leading_zeros()).saturating_sub(64);
        Self {
            man: (p >> shift) as u64,
            exp: self.exp + other.exp + shift,
        }
    }
}
