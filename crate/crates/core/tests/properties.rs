use besselnu::bessel::{eval, BesselKind};
use besselnu::derivatives::derivative_value;
use besselnu::quadrature::{
    integrate_doubly_infinite, integrate_finite, integrate_semi_infinite, QuadratureConfig,
};
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_rule_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, lo in -2.0f64..0.0, hi in 0.1f64..2.0) {
        let f = |x: f64| x.cos() * (1.0 + x * x);
        let g = |x: f64| (0.5 * x).exp();
        let lhs = integrate_finite(|x| a * f(x) + b * g(x), lo, hi, &cfg()).unwrap().value;
        let rhs = a * integrate_finite(f, lo, hi, &cfg()).unwrap().value
            + b * integrate_finite(g, lo, hi, &cfg()).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + rhs.abs()));
    }

    #[test]
    fn real_line_is_two_half_lines(nu in -3.0f64..3.0, t in 0.2f64..8.0) {
        let full = integrate_doubly_infinite(|x| (nu * x - t * x.cosh()).exp(), &cfg()).unwrap().value;
        let right = integrate_semi_infinite(|x| (nu * x - t * x.cosh()).exp(), &cfg()).unwrap().value;
        let left = integrate_semi_infinite(|x| (-nu * x - t * x.cosh()).exp(), &cfg()).unwrap().value;
        prop_assert!((full - (left + right)).abs() <= 1e-12 * (1.0 + full.abs()));
        // both halves sum to 2 K_nu(t)
        let k = eval(BesselKind::K, nu, t, &cfg()).unwrap();
        prop_assert!((full - 2.0 * k).abs() <= 1e-11 * (1.0 + full.abs()));
    }

    #[test]
    fn k_derivative_parity(n in 0u32..=6, nu in 0.0f64..4.0, t in 0.3f64..12.0) {
        let pos = derivative_value(BesselKind::K, n, nu, t, &cfg()).unwrap();
        let neg = derivative_value(BesselKind::K, n, -nu, t, &cfg()).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((neg - sign * pos).abs() <= 1e-10 * (1.0 + pos.abs()));
    }

    #[test]
    fn recurrence_in_order(nu in -5.0f64..5.0, t in 0.5f64..15.0) {
        // J_{nu-1} + J_{nu+1} = (2 nu / t) J_nu
        let jm = eval(BesselKind::J, nu - 1.0, t, &cfg()).unwrap();
        let j = eval(BesselKind::J, nu, t, &cfg()).unwrap();
        let jp = eval(BesselKind::J, nu + 1.0, t, &cfg()).unwrap();
        let rhs = 2.0 * nu / t * j;
        prop_assert!((jm + jp - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }
}
