// SPDX-License-Identifier: Apache-2.0

//! Reference values frozen from independent high-precision computations.

use hankel_core::ldlt::{ParallelOptions, SymmetricMatrix, DenseSymmetric, ShiftedWorkspace};
use hankel_core::oracle::{det_cofactor, det_exact, RationalMatrix};
use hankel_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const GAMMA_4_7: &str = "1.55858103290247500827500929124597392252085047209453869226674";
const SQRT_PI: &str = "1.77245385090551602729816748334114518279754945612238712821381";
const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494";
/// (4/7)·Γ(4/7)
const M00_BETA_7_4: &str = "0.8906177330871285761571481664262708128691";
const GAMMA_199: &str = "1.981552430564800260181817e370";
/// (4/7)·Γ(199·4/7)
const LMAX_LOWER_BETA_7_4: &str = "3.29999494160594579961186e183";

/// Smallest and largest eigenvalue of the β = 1 matrix, N = 2..=10.
const FACTORIAL_EIGS: [(usize, f64, f64); 9] = [
    (2, 0.381_966_011_250_105_15, 2.618_033_988_749_895),
    (3, 0.136_345_359_851_509_93, 25.723_154_336_110_008),
    (4, 0.052_900_293_953_868_32, 740.985_018_772_419_3),
    (5, 0.022_670_415_387_027_19, 40_964.759_269_136_4),
    (6, 0.010_451_681_653_156_691, 3_665_585.425_954_555),
    (7, 0.005_089_869_054_146_657, 482_357_933.945_249_8),
    (8, 0.002_589_643_650_075_007_7, 87_625_906_984.576_3),
    (9, 0.001_366_569_387_588_998_9, 21_004_906_258_695.836),
    (10, 0.000_744_006_792_919_195_3, 6_422_206_392_115_636.0),
];

fn one() -> RationalArg {
    RationalArg::integer(1).unwrap()
}

fn digits(x: &FixedPoint, n: usize) -> String {
    fp_truncate_sig_digits(x, n).unwrap()
}

/// Leading `n` significant digits of a decimal literal, in the crate's format.
fn literal_digits(s: &str, n: usize) -> String {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let mut exp: i64 = exp.parse().unwrap();
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{int}{frac}");
    let lead = all.find(|c: char| c != '0').unwrap();
    exp += int.len() as i64 - 1 - lead as i64;
    let sig = &all[lead..lead + n];
    let (h, t) = sig.split_at(1);
    if t.is_empty() {
        format!("{h}e{exp}")
    } else {
        format!("{h}.{t}e{exp}")
    }
}

fn from_decimal(s: &str, bits: u32) -> FixedPoint {
    let (int, frac) = s.split_once('.').unwrap();
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    let den = num_traits::Pow::pow(BigInt::from(10), frac.len());
    FixedPoint::from_ratio(&num, &den, bits).unwrap()
}

fn fx(v: i64, bits: u32) -> FixedPoint {
    FixedPoint::from_integer(v, bits)
}

#[test]
fn gamma_at_rationals() {
    assert_eq!(gamma_fixed(one(), 100), FixedPoint::one(100));
    assert_eq!(gamma_fixed(RationalArg::integer(5).unwrap(), 64), fx(24, 64));
    let g = gamma_interval(RationalArg::integer(4).unwrap(), 90);
    assert!(g.contains(&fx(6, 90)));
    let g = gamma_interval(one(), 90);
    assert!(g.contains(&FixedPoint::one(90)));

    let g = gamma_fixed(RationalArg::new(4, 7).unwrap(), 256);
    assert_eq!(digits(&g, 55), literal_digits(GAMMA_4_7, 55));
    let iv = gamma_interval(RationalArg::new(4, 7).unwrap(), 256);
    assert!(iv.contains(&from_decimal(GAMMA_4_7, 190).rescale(256)) || {
        // The 60-digit literal is itself only good to about 2^-196.
        let lit = from_decimal(GAMMA_4_7, 190);
        iv.lo().rescale(190) <= lit && lit <= iv.hi().rescale(190).checked_add(&FixedPoint::new(BigInt::one(), 190)).unwrap()
    });

    let s = gamma_fixed(RationalArg::new(1, 2).unwrap(), 128);
    let lit = from_decimal(SQRT_PI, 128);
    let err = s.checked_sub(&lit).unwrap().abs();
    assert!(err <= FixedPoint::new(BigInt::from(2), 128), "√π off by {err:?}");
}

#[test]
fn huge_gamma_keeps_integer_part() {
    let g = gamma_fixed(RationalArg::integer(199).unwrap(), 16);
    assert_eq!(digits(&g, 19), literal_digits(GAMMA_199, 19));
    let m = build_matrix(100, RationalArg::new(7, 4).unwrap(), 64).unwrap();
    let (lo, hi) = lambda_max_bounds(&m);
    assert_eq!(digits(&lo, 20), literal_digits(LMAX_LOWER_BETA_7_4, 20));
    assert!(lo < hi);
}

#[test]
fn decimal_examples() {
    let pi = from_decimal(PI, 128);
    assert_eq!(fp_truncate_sig_digits(&pi, 15).unwrap(), "3.14159265358979e0");
    let third = FixedPoint::from_ratio(&1.into(), &3.into(), 64).unwrap();
    let p = fp_mul(&third, &fx(3, 64), 64);
    let lower = FixedPoint::one(64).checked_sub(&FixedPoint::new(BigInt::from(4), 64)).unwrap();
    assert!(lower < p && p <= FixedPoint::one(64));
    let seventh = fp_div(&FixedPoint::one(64), &fx(7, 64), 64).unwrap();
    let exact = FixedPoint::from_ratio(&1.into(), &7.into(), 64).unwrap();
    assert_eq!(seventh, exact);
    assert_eq!(fp_div(&pi, &pi, 40).unwrap(), FixedPoint::one(40));
}

#[test]
fn matrix_examples() {
    let m = build_matrix(4, one(), 32).unwrap();
    let fact = [1i64, 1, 2, 6, 24, 120, 720];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m.entry(i, j), &fx(fact[i + j], 32));
        }
    }
    let m = build_matrix(4, RationalArg::new(7, 4).unwrap(), 128).unwrap();
    assert_eq!(digits(m.entry(0, 0), 38), literal_digits(M00_BETA_7_4, 38));
    assert_eq!(build_matrix(1, one(), 8).unwrap().entry(0, 0), &FixedPoint::one(8));
}

#[test]
fn determinant_examples() {
    let diag = DenseSymmetric::from_fn(2, 64, |r, c| fx(if r == c { 2 + r as i64 } else { 0 }, 64));
    assert_eq!(ldlt_det_serial(&diag, &fx(0, 64)).unwrap().value, fx(6, 32));

    let m = DenseSymmetric::from_fn(2, 64, |r, c| fx(if r == c { 2 } else { 1 }, 64));
    let det = ldlt_det_serial(&m, &fx(0, 64)).unwrap();
    let three_halves = FixedPoint::from_ratio(&3.into(), &2.into(), 32).unwrap();
    assert_eq!(det.pivots, vec![fx(2, 32), three_halves]);
    assert_eq!(det.value, fx(3, 32));

    // Applying column 0 by hand: M[1][1] = 2 - 1·0.5.
    let mut ws = ShiftedWorkspace::new(&m, &fx(0, 64)).unwrap();
    let buf = ws.finish_column(0).unwrap();
    ws.apply_column(&buf, 1, 0);
    assert_eq!(ws.entry(1, 1), Some(fx(2, 64)));
    ws.apply_column(&buf, 1, 1);
    assert_eq!(ws.entry(1, 1), Some(FixedPoint::from_ratio(&3.into(), &2.into(), 64).unwrap()));
}

#[test]
fn factorial_determinant_matches_oracles() {
    for n in 1..=8 {
        let m = build_matrix(n, one(), 64).unwrap();
        let exact = RationalMatrix::from_fixed(&m);
        let a = det_exact(&exact).unwrap();
        let b = det_cofactor(&exact).unwrap();
        assert_eq!(a, b);
        let want: BigInt = (0..n as i64)
            .map(|k| {
                let f: BigInt = (1..=k).map(BigInt::from).product();
                &f * &f
            })
            .product();
        assert_eq!(a, BigRational::from_integer(want.clone()));
        let got = ldlt_det_serial(&m, &FixedPoint::zero(64)).unwrap().value;
        assert_eq!(got.mantissa() >> 32u32, want);
    }
}

#[test]
fn parallel_matches_serial_at_n50() {
    let m = build_matrix(50, one(), 800).unwrap();
    let x = FixedPoint::zero(800);
    let serial = ldlt_det_serial(&m, &x).unwrap();
    for workers in [2, 4, 8] {
        let (par, t) = ldlt_det_parallel(&m, &x, &ParallelOptions::shared_memory(workers)).unwrap();
        assert_eq!(par, serial, "workers = {workers}");
        assert_eq!(t.div_s, 0.0);
        assert!(t.net_s <= t.total_s);
    }
}

#[test]
fn sign_changes_at_the_smallest_eigenvalue() {
    for &(n, l1, _) in &FACTORIAL_EIGS {
        let m = build_matrix(n, one(), 512).unwrap();
        let below = FixedPoint::from_f64(l1 * (1.0 - 1e-6), 512).unwrap();
        let above = FixedPoint::from_f64(l1 * (1.0 + 1e-6), 512).unwrap();
        assert!(ldlt_det_serial(&m, &below).unwrap().value.is_positive(), "n = {n}");
        assert!(ldlt_det_serial(&m, &above).unwrap().value.is_negative(), "n = {n}");
    }
}

#[test]
fn exact_determinant_flips_once_per_eigenvalue() {
    for &(n, l1, lmax) in FACTORIAL_EIGS.iter().filter(|e| e.0 <= 6) {
        let m = RationalMatrix::from_fixed(&build_matrix(n, one(), 64).unwrap());
        let sign = |x: f64| {
            let xr = BigRational::from_float(x).unwrap();
            det_exact(&m.shifted(&xr)).unwrap()
        };
        assert!(sign(l1 * (1.0 - 1e-9)).is_positive());
        assert!(sign(l1 * (1.0 + 1e-9)).is_negative());
        let top = sign(lmax * (1.0 + 1e-9));
        // Past the largest eigenvalue the sign is (-1)^n.
        assert_eq!(top.is_positive(), n % 2 == 0);
        assert!(!sign(0.0).is_zero());
    }
}

#[test]
fn secant_examples() {
    let m = build_matrix(1, one(), 512).unwrap();
    let trace = secant_smallest_eigenvalue(&m, &mut DeterminantEvaluator::serial()).unwrap();
    assert!(trace.iterations <= 3);
    assert_eq!(trace.value(), &FixedPoint::one(512));

    let m = build_matrix(4, one(), 512).unwrap();
    let (x1, x2) = initial_points(&m);
    assert_eq!(x1, FixedPoint::from_ratio(&(-1).into(), &65536.into(), 512).unwrap());
    assert!(x2.is_zero());
    let exact = RationalMatrix::from_fixed(&m);
    for x in [&x1, &x2] {
        let xr = BigRational::new(x.mantissa().clone(), BigInt::one() << 512u32);
        assert!(det_exact(&exact.shifted(&xr)).unwrap().is_positive());
    }

    let m = build_matrix(6, one(), 512).unwrap();
    let trace = secant_smallest_eigenvalue(&m, &mut DeterminantEvaluator::serial()).unwrap();
    let got = trace.value().to_f64();
    assert!((got - FACTORIAL_EIGS[4].1).abs() <= 1e-10 * FACTORIAL_EIGS[4].1);
}

#[test]
fn verification_refutes_half_lambda() {
    let n = 6;
    let mc = build_certified_matrix(n, one(), 1024).unwrap();
    let half = FixedPoint::from_f64(FACTORIAL_EIGS[4].1 / 2.0, 512).unwrap();
    let v = verify_eigenvalue(&mc, &half).unwrap();
    assert_eq!(v.outcome, VerifyOutcome::Refuted);
    assert_eq!(v.upper_sign, Some(IntervalSign::Positive));
}

#[test]
fn largest_eigenvalue_bounds() {
    let (lo, hi) = lambda_max_bounds(&build_matrix(4, one(), 32).unwrap());
    assert_eq!((lo, hi), (fx(720, 32), fx(747, 32)));
    for &(n, _, lmax) in FACTORIAL_EIGS.iter().filter(|e| e.0 <= 8) {
        let (lo, hi) = lambda_max_bounds(&build_matrix(n, one(), 64).unwrap());
        assert!(lo.to_f64() <= lmax && lmax <= hi.to_f64(), "n = {n}");
    }
    let m = build_matrix(100, one(), 64).unwrap();
    let (lo, _) = lambda_max_bounds(&m);
    assert_eq!(digits(&lo, 19), literal_digits(GAMMA_199, 19));
    let m = build_matrix(1, RationalArg::new(7, 4).unwrap(), 200).unwrap();
    assert_eq!(condition_lower_bound(&m, m.entry(0, 0)).unwrap(), FixedPoint::one(200));
}

#[test]
fn precision_policy() {
    assert_eq!(choose_initial_precision(100, one()), 832);
    assert_eq!(choose_initial_precision(400, one()), 3200);
    assert_eq!(choose_initial_precision(1, one()), 512);
    assert_eq!(escalate_precision(800, 1 << 21).unwrap(), 1600);
    assert!(matches!(escalate_precision(1 << 20, 1 << 20), Err(Error::PrecisionCapExceeded { .. })));
}

#[test]
fn boundary_size_needs_at_most_one_doubling() {
    let mut config = SolveConfig::new(25, one());
    config.precision_bits = Some(512);
    let r = solve(&config).unwrap();
    assert!(r.escalations <= 1);
    assert!(r.verified);
}
