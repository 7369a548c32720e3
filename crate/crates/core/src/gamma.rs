//! Gamma, digamma and the exactly-reduced `sin(pi x)`, `cos(pi x)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 Lanczos coefficients (the set distributed with GSL).
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(pi x)` with argument reduction by the nearest integer, so that
/// integer `x` gives exactly zero.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `cos(pi x)`; exactly `+-1` at integers and exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let c = if r.abs() == 0.5 { 0.0 } else { (PI * r).cos() };
    if n.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

/// The gamma function for real `x`, Lanczos for `x >= 1/2`, reflection below.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_unchecked(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// `1/Gamma(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        0.0
    } else {
        1.0 / gamma_unchecked(x)
    }
}

/// The digamma function `psi = Gamma'/Gamma`.
///
/// Negative arguments use `psi(x) = psi(1 - x) - pi cot(pi x)`; positive ones
/// are shifted above 10 by `psi(x) = psi(x + 1) - 1/x` and finished with the
/// asymptotic expansion.
pub fn digamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x < 0.5 {
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut y = x;
    let mut shift = 0.0;
    while y < 10.0 {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // Bernoulli terms B_{2k} / (2k y^{2k}), k = 1..7
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(y.ln() - 0.5 / y - series - shift)
}

/// `ln(n!)` by direct summation; exact enough for the finite sums' log path.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * f64::from(n - i) / f64::from(i + 1);
    }
    c.round()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn integers_and_half_integers() {
        assert_eq!(gamma(5.0).unwrap().round(), 24.0);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
        for n in 1..=29u32 {
            let exact = factorial(n - 1);
            assert!(rel(gamma(f64::from(n)).unwrap(), exact) < 1e-13, "n = {n}");
        }
        // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        for n in 0..=25u32 {
            let exact = factorial(2 * n) * PI.sqrt() / (4f64.powi(n as i32) * factorial(n));
            let x = f64::from(n) + 0.5;
            assert!(rel(gamma(x).unwrap(), exact) < 1e-13, "x = {x}");
            // Gamma(1/2 - n) = (-4)^n n! sqrt(pi) / (2n)!
            let exact_neg = (-4f64).powi(n as i32) * factorial(n) * PI.sqrt() / factorial(2 * n);
            let x = 0.5 - f64::from(n);
            assert!(rel(gamma(x).unwrap(), exact_neg) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn poles() {
        for x in [0.0, -1.0, -7.0, -30.0] {
            assert_eq!(gamma(x), Err(Error::Pole(x)));
            assert_eq!(digamma(x), Err(Error::Pole(x)));
            assert_eq!(recip_gamma(x), 0.0);
        }
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let half = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!(rel(digamma(0.5).unwrap(), half) < 1e-14);
        let mut harmonic = 0.0;
        for n in 1..=29u32 {
            harmonic += 1.0 / f64::from(n);
            let exact = -EULER_GAMMA + harmonic;
            assert!(
                rel(digamma(f64::from(n) + 1.0).unwrap(), exact) < 1e-14,
                "n = {n}"
            );
        }
        // psi(1/2 - n) = psi(1/2 + n) via reflection at half-integers
        for n in 1..=20 {
            let x = f64::from(n) + 0.5;
            let a = digamma(x).unwrap();
            let b = digamma(1.0 - x).unwrap();
            assert!((a - b).abs() < 1e-13 * (1.0 + a.abs()), "n = {n}");
        }
    }

    #[test]
    fn trig_exact_at_integers() {
        for m in -20..=20 {
            let x = f64::from(m);
            assert_eq!(sin_pi(x), 0.0);
            assert_eq!(cos_pi(x), if m % 2 == 0 { 1.0 } else { -1.0 });
            assert_eq!(cos_pi(x + 0.5), 0.0);
            assert_eq!(sin_pi(x + 0.5).abs(), 1.0);
        }
        assert!((sin_pi(1.0 / 3.0) - (PI / 3.0).sin()).abs() < 1e-16);
        assert!((cos_pi(-2.7) - (-2.7 * PI).cos()).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn gamma_recurrence(x in -29.5f64..29.0) {
                prop_assume!((x - x.round()).abs() > 1e-3);
                let g = gamma(x).unwrap();
                let g1 = gamma(x + 1.0).unwrap();
                prop_assert!((g1 - x * g).abs() <= 1e-13 * g1.abs());
            }

            #[test]
            fn digamma_recurrence(x in -29.5f64..29.0) {
                prop_assume!((x - x.round()).abs() > 1e-3);
                let p = digamma(x).unwrap();
                let p1 = digamma(x + 1.0).unwrap();
                prop_assert!((p1 - p - 1.0 / x).abs() <= 1e-12 * (1.0 + p1.abs() + (1.0 / x).abs()));
            }

            #[test]
            fn gamma_reflection(x in 0.01f64..0.99) {
                let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
                let rhs = PI / sin_pi(x);
                prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
            }
        }
    }
}
