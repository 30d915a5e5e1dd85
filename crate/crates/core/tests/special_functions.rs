use plate_flow::special::{erfc, gauss_kernel, i2erfc};
use proptest::prelude::*;

mod common;

use common::{ERFC_REFERENCE, I2ERFC_REFERENCE};

#[test]
fn erfc_matches_reference_values() {
    for (x, expected) in ERFC_REFERENCE {
        let got = erfc(x);
        assert!(
            (got - expected).abs() <= 1e-12,
            "erfc({x}) = {got}, expected {expected}"
        );
    }
}

#[test]
fn erfc_is_monotone_on_a_dense_grid() {
    let mut prev = erfc(-8.0f64);
    for k in 1..=16_000 {
        let x = -8.0 + 1e-3 * f64::from(k);
        let v = erfc(x);
        assert!(v <= prev, "erfc increased at x = {x}");
        assert!((0.0..=2.0).contains(&v));
        prev = v;
    }
}

#[test]
fn gauss_kernel_matches_exp() {
    assert!((gauss_kernel(1.0f64) - 0.367_879_441_171_442_32).abs() < 1e-16);
    assert_eq!(gauss_kernel(40.0f64), 0.0);
    assert_eq!(gauss_kernel(-40.0f64), 0.0);
}

#[test]
fn i2erfc_matches_double_integral_reference() {
    for (x, expected) in I2ERFC_REFERENCE {
        let got = i2erfc(x).unwrap();
        assert!(
            (got - expected).abs() <= 1e-10,
            "i2erfc({x}) = {got}, expected {expected}"
        );
    }
}

/// Adaptive Simpson quadrature.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[test]
fn i2erfc_matches_in_test_quadrature() {
    // Cauchy's formula for the repeated integral:
    // i2erfc(x) = int_x^inf (s - x) erfc(s) ds, truncated at s = x + 12 where erfc < 1e-60.
    for k in 0..20 {
        let x = 0.2 * f64::from(k);
        let integrand = move |s: f64| (s - x) * erfc(s);
        // Panels of width 0.25 so the peak near s = x is always resolved.
        let quad: f64 = (0..48)
            .map(|j| {
                let a = x + 0.25 * f64::from(j);
                simpson(&integrand, a, a + 0.25, 1e-16)
            })
            .sum();
        let got = i2erfc(x).unwrap();
        assert!((got - quad).abs() < 1e-10, "x = {x}: {got} vs {quad}");
    }
}

proptest! {
    #[test]
    fn erfc_reflection(x in -6.0f64..6.0) {
        prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn kernels_are_deterministic(x in -10.0f64..10.0) {
        prop_assert_eq!(erfc(x).to_bits(), erfc(x).to_bits());
        prop_assert_eq!(gauss_kernel(x).to_bits(), gauss_kernel(x).to_bits());
        if x >= 0.0 {
            prop_assert_eq!(i2erfc(x).unwrap().to_bits(), i2erfc(x).unwrap().to_bits());
        }
    }

    #[test]
    fn i2erfc_regrouping_identity(x in 0.0f64..6.0) {
        let lhs = 4.0 * i2erfc(x).unwrap();
        let rhs = (1.0 + 2.0 * x * x) * erfc(x)
            - 2.0 * x / std::f64::consts::PI.sqrt() * gauss_kernel(x);
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn i2erfc_decays(x in 0.0f64..5.9) {
        prop_assert!(i2erfc(x + 0.1).unwrap() <= i2erfc(x).unwrap());
    }
}
