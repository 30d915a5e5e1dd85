//! Scalar kernels of the closed-form solution.
//!
//! `erfc` follows W. J. Cody's rational Chebyshev approximations
//! (Math. Comp. 23, 1969), split at |x| = 0.46875 and |x| = 4. In `f64` the
//! absolute error is below 1e-16 near the origin and the relative error
//! below 1e-15 in the tails.

// Coefficients are kept exactly as published.
#![allow(clippy::excessive_precision)]

use crate::{lit, to_f64, Error, Real, Result};

const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302_02,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const ERF_B: [f64; 4] = [
    23.601_290_952_344_12,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
const ERFC_C: [f64; 9] = [
    0.564_188_496_988_670_1,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_13,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
const ERFC_D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
const ERFC_P: [f64; 6] = [
    0.305_326_634_961_232_34,
    0.360_344_899_949_804_45,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_277,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_097,
];
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822,
    1.872_952_849_923_460_4,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

const SMALL: f64 = 0.468_75;
const MEDIUM: f64 = 4.0;
/// erfc(x) underflows f64 beyond this point.
const BIG: f64 = 26.543;

/// `x * erf(x) / x` rational approximation on |x| <= 0.46875, in `z = x^2`.
fn erf_small<T: Real>(z: T) -> T {
    let a = |i: usize| lit::<T>(ERF_A[i]);
    let b = |i: usize| lit::<T>(ERF_B[i]);
    let num = (((a(4) * z + a(0)) * z + a(1)) * z + a(2)) * z + a(3);
    let den = (((z + b(0)) * z + b(1)) * z + b(2)) * z + b(3);
    num / den
}

/// `exp(y^2) erfc(y)` on 0.46875 < y <= 4.
fn erfcx_medium<T: Real>(y: T) -> T {
    let mut num = lit::<T>(ERFC_C[8]) * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + lit(ERFC_C[i])) * y;
        den = (den + lit(ERFC_D[i])) * y;
    }
    (num + lit(ERFC_C[7])) / (den + lit(ERFC_D[7]))
}

/// `exp(y^2) erfc(y)` on y > 4, in `z = 1/y^2`.
fn erfcx_large<T: Real>(y: T) -> T {
    let z = (y * y).recip();
    let mut num = lit::<T>(ERFC_P[5]) * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + lit(ERFC_P[i])) * z;
        den = (den + lit(ERFC_Q[i])) * z;
    }
    let r = z * (num + lit(ERFC_P[4])) / (den + lit(ERFC_Q[4]));
    (T::FRAC_2_SQRT_PI() / lit(2.0) - r) / y
}

/// `exp(-y^2)` with the square split to limit cancellation error for large y.
fn exp_neg_square<T: Real>(y: T) -> T {
    let sixteen = lit::<T>(16.0);
    let head = (y * sixteen).trunc() / sixteen;
    (-head * head).exp() * (-(y - head) * (y + head)).exp()
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    let y = x.abs();
    if y <= lit(SMALL) {
        return T::one() - x * erf_small(y * y);
    }
    let tail = if y >= lit(BIG) {
        T::zero()
    } else if y <= lit(MEDIUM) {
        erfcx_medium(y) * exp_neg_square(y)
    } else {
        erfcx_large(y) * exp_neg_square(y)
    };
    if x < T::zero() {
        lit::<T>(2.0) - tail
    } else {
        tail
    }
}

pub fn erf<T: Real>(x: T) -> T {
    if x.abs() <= lit(SMALL) {
        x * erf_small(x * x)
    } else {
        T::one() - erfc(x)
    }
}

/// `exp(-x^2)`. Underflows quietly to 0 for large |x|.
pub fn gauss_kernel<T: Real>(x: T) -> T {
    (-(x * x)).exp()
}

/// Second iterated integral of `erfc`,
/// `i2erfc(x) = [(1 + 2x^2) erfc(x) - (2x/sqrt(pi)) exp(-x^2)] / 4`.
///
/// Only defined here for `x >= 0`; for large `x` the two terms cancel and
/// the result loses relative (not absolute) accuracy.
pub fn i2erfc<T: Real>(x: T) -> Result<T> {
    if !(x >= T::zero()) || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "x",
            value: to_f64(x),
            expected: "finite and >= 0",
        });
    }
    let two = lit::<T>(2.0);
    let value =
        ((T::one() + two * x * x) * erfc(x) - x * T::FRAC_2_SQRT_PI() * gauss_kernel(x)) / lit(4.0);
    Ok(value.max(T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erfc_anchor_values() {
        assert_eq!(erfc(0.0f64), 1.0);
        assert!((erfc(1.0f64) - 0.157_299_207_050_285_13).abs() < 1e-16);
        assert!((2.0 - erfc(-0.7f64) - erfc(0.7)).abs() < 1e-14);
        assert_eq!(erfc(30.0f64), 0.0);
        assert_eq!(erfc(-30.0f64), 2.0);
        assert!(erfc(f64::NAN).is_nan());
    }

    #[test]
    fn erf_complements_erfc() {
        for &x in &[-2.0, -0.3, 0.0, 0.2, 0.46875, 0.9, 3.0] {
            assert!((erf(x) + erfc(x) - 1.0f64).abs() < 1e-15, "x = {x}");
        }
    }

    #[test]
    fn erfc_single_precision() {
        assert!((erfc(1.0f32) - 0.157_299_2).abs() < 1e-6);
        assert_eq!(erfc(0.0f32), 1.0);
    }

    #[test]
    fn gauss_kernel_values() {
        assert_eq!(gauss_kernel(0.0f64), 1.0);
        assert!((gauss_kernel(1.0f64) - 0.367_879_441_171_442_33).abs() < 1e-16);
        assert_eq!(gauss_kernel(40.0f64), 0.0);
    }

    #[test]
    fn i2erfc_endpoints() {
        assert_eq!(i2erfc(0.0f64).unwrap(), 0.25);
        assert!(i2erfc(6.0f64).unwrap() < 1e-12);
        assert!(i2erfc(-0.1f64).is_err());
        assert!(i2erfc(f64::INFINITY).is_err());
    }

    #[test]
    fn i2erfc_satisfies_its_ode() {
        // y'' + 2x y' - 4y = 0 reduces, with y' = -i1erfc, to 4y - 2x y' = erfc.
        let h = 1e-5;
        for k in 1..40 {
            let x = 0.1 * f64::from(k);
            let d = (i2erfc(x + h).unwrap() - i2erfc(x - h).unwrap()) / (2.0 * h);
            let lhs = 4.0 * i2erfc(x).unwrap() - 2.0 * x * d;
            assert!(
                (lhs - erfc(x)).abs() < 1e-9,
                "x = {x}: {lhs} vs {}",
                erfc(x)
            );
        }
    }
}
