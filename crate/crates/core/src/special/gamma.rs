// SPDX-License-Identifier: Apache-2.0

//! Certified Γ at positive rational arguments.
//!
//! The argument is shifted into `(1, 2)` with the recurrence `Γ(x + 1) = xΓ(x)`,
//! keeping the shift factor as an exact rational. On `(1, 2)` we split at an
//! integer `T`:
//!
//! ```text
//! Γ(f) = γ(f, T) + Γ(f, T)
//! γ(f, T) = T^f e^-T Σ_k T^k / (f (f+1) … (f+k))
//! Γ(f, T) ≤ 2 T e^-T
//! ```
//!
//! `T` is picked so the upper incomplete part is below one unit in the last
//! place, and both series (`Σ` above and `e^T = Σ T^j / j!`) are summed in
//! interval arithmetic with an explicit geometric tail bound. Integer
//! arguments are exact factorials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};

use super::RationalArg;
use crate::fixed::{FixedInterval, FixedPoint};

/// Extra working bits on top of the requested base precision. Covers the
/// rounding of the quotient and the `T^f ≤ T^2` amplification.
const WORKING_GUARD_BITS: u32 = 64;

type BaseKey = (u64, u64);
type ValueCache = Mutex<HashMap<(u64, u64, u32), FixedInterval>>;

fn base_cache() -> &'static Mutex<HashMap<BaseKey, FixedInterval>> {
    static CACHE: OnceLock<Mutex<HashMap<BaseKey, FixedInterval>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn value_cache() -> &'static ValueCache {
    static CACHE: OnceLock<ValueCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn factorials() -> &'static Mutex<Vec<BigUint>> {
    static TABLE: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigUint::one()]))
}

fn factorial(n: u64) -> BigUint {
    let mut table = factorials().lock().unwrap_or_else(|e| e.into_inner());
    while (table.len() as u64) <= n {
        let next = table.last().expect("seeded with 0!") * BigUint::from(table.len() as u64);
        table.push(next);
    }
    table[n as usize].clone()
}

fn ceil_div(n: BigUint, d: &BigUint) -> BigUint {
    (n + d - 1u32) / d
}

/// Smallest `T` with `T - ln(2T) ≥ (bits + 2) ln 2`, so `2T e^-T ≤ 2^-(bits+2)`.
fn split_point(bits: u32) -> u64 {
    let target = (f64::from(bits) + 2.0) * std::f64::consts::LN_2;
    let mut t = target.ceil().max(2.0) as u64;
    while (t as f64) - (2.0 * t as f64).ln() < target + 1e-6 {
        t += 1;
    }
    t
}

/// Enclosure of Γ(a/v) for `v < a < 2v`, at `prec` fractional bits.
fn base_gamma(a: u64, v: u64, prec: u32) -> FixedInterval {
    if let Some(hit) = base_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(a, v))
        .filter(|iv| iv.frac_bits() >= prec)
        .cloned()
    {
        return hit.rescale_outward(prec);
    }
    let value = compute_base_gamma(a, v, prec);
    let mut cache = base_cache().lock().unwrap_or_else(|e| e.into_inner());
    let keep = cache
        .get(&(a, v))
        .is_none_or(|old| old.frac_bits() < value.frac_bits());
    if keep {
        cache.insert((a, v), value.clone());
    }
    value
}

fn compute_base_gamma(a: u64, v: u64, prec: u32) -> FixedInterval {
    debug_assert!(v < a && a < 2 * v);
    let w = prec + WORKING_GUARD_BITS;
    let t = split_point(w);
    let one = BigUint::one() << w;
    let (a_big, v_big, t_big) = (BigUint::from(a), BigUint::from(v), BigUint::from(t));
    let tv = &t_big * &v_big;

    // Σ_k T^k / (f)_(k+1) with t_0 = 1/f = v/a and t_k = t_(k-1) · Tv / (a + kv).
    let mut term_lo = (&one * &v_big) / &a_big;
    let mut term_hi = ceil_div(&one * &v_big, &a_big);
    let mut sum_lo = term_lo.clone();
    let mut sum_hi = term_hi.clone();
    let mut k: u64 = 0;
    loop {
        k += 1;
        let d = &a_big + &v_big * k;
        term_lo = (term_lo * &tv) / &d;
        term_hi = ceil_div(term_hi * &tv, &d);
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        // Once the ratio to the next term is ≤ 1/2 the tail is ≤ the current term.
        let next_den = &d + &v_big;
        if next_den >= &tv * 2u32 && term_hi <= BigUint::one() {
            sum_hi += 1u32;
            break;
        }
    }

    // e^T = Σ_j T^j / j!
    let mut u_lo = one.clone();
    let mut u_hi = one.clone();
    let mut exp_lo = one.clone();
    let mut exp_hi = one;
    let mut j: u64 = 0;
    loop {
        j += 1;
        u_lo = (u_lo * &t_big) / j;
        u_hi = ceil_div(u_hi * &t_big, &BigUint::from(j));
        exp_lo += &u_lo;
        exp_hi += &u_hi;
        if j + 1 >= 2 * t && u_hi <= BigUint::one() {
            exp_hi += 1u32;
            break;
        }
    }

    // T^(a/v) = floor root of T^a · 2^(w v), plus one unit.
    let radicand = Pow::pow(&t_big, a) << (u64::from(w) * v);
    let root = radicand.nth_root(v as u32);
    let pow_lo = root.clone();
    let pow_hi = root + 1u32;

    // γ = T^f · S / e^T, lower bound uses the largest divisor.
    let gamma_lo = (pow_lo * sum_lo) / &exp_hi;
    let mut gamma_hi = ceil_div(pow_hi * sum_hi, &exp_lo);
    // Upper incomplete part is below 2^-(w+2).
    gamma_hi += 1u32;

    FixedInterval::from_mantissas(BigInt::from(gamma_lo), BigInt::from(gamma_hi), w)
        .rescale_outward(prec)
}

/// Γ(x) = Γ(f) · num / den with `f = base / den_f ∈ (1, 2)`.
struct Reduction {
    base_num: u64,
    base_den: u64,
    num: BigUint,
    den: BigUint,
}

fn reduce(x: RationalArg) -> Reduction {
    let (u, v) = (x.num(), x.den());
    debug_assert!(v > 1);
    if u < v {
        // Γ(x) = Γ(x + 1) / x
        return Reduction {
            base_num: u + v,
            base_den: v,
            num: BigUint::from(v),
            den: BigUint::from(u),
        };
    }
    let shift = u / v - 1;
    let a = u - shift * v;
    let mut num = BigUint::one();
    for k in 0..shift {
        num *= a + k * v;
    }
    Reduction {
        base_num: a,
        base_den: v,
        num,
        den: Pow::pow(BigUint::from(v), shift),
    }
}

/// Certified enclosure of Γ(x) with width at most `2^(2 - frac_bits)`.
pub fn gamma_interval(x: RationalArg, frac_bits: u32) -> FixedInterval {
    let key = (x.num(), x.den(), frac_bits);
    if let Some(hit) = value_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&key)
    {
        return hit.clone();
    }
    let value = if x.is_integer() {
        let f = factorial(x.num() - 1);
        FixedInterval::point(FixedPoint::from_integer(BigInt::from(f), frac_bits))
    } else {
        let r = reduce(x);
        // log2(num / den) < bits(num) - bits(den) + 1
        let growth = (r.num.bits() as i64 - r.den.bits() as i64 + 1).max(0) as u32;
        let base = base_gamma(r.base_num, r.base_den, frac_bits + growth + 6);
        base.scale_ratio(&BigInt::from(r.num), &BigInt::from(r.den), frac_bits)
            .expect("reduction factors are positive")
    };
    value_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(key, value.clone());
    value
}

/// Γ(x) with absolute error below `2^-frac_bits`.
pub fn gamma_fixed(x: RationalArg, frac_bits: u32) -> FixedPoint {
    round_midpoint(&gamma_interval(x, frac_bits + 4), frac_bits)
}

/// Nearest value at `frac_bits` to the midpoint of a positive interval.
pub(crate) fn round_midpoint(iv: &FixedInterval, frac_bits: u32) -> FixedPoint {
    let f = iv.frac_bits();
    debug_assert!(f > frac_bits);
    let sum = iv.lo().mantissa() + iv.hi().mantissa();
    let drop = f + 1 - frac_bits;
    let half = BigInt::one() << (drop - 1);
    FixedPoint::new((sum + half) >> drop, frac_bits)
}
