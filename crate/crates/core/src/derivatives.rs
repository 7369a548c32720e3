//! `d^n/dnu^n` of `J`, `Y`, `I`, `K` at fixed argument.
//!
//! Each derivative is a finite integral over `[0, pi]` weighted by `x^n` plus
//! an exponentially damped tail whose weight comes from the real and imaginary
//! parts of `(i pi - x)^n` (see [`PiPolynomialPair`]). `K` has no finite part:
//! its derivatives are moments of `e^{nu x - t cosh x}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{check_domain, BesselKind};
use crate::error::{Error, Result};
use crate::gamma::{binomial, cos_pi, factorial, sin_pi};
use crate::quadrature::{
    integrate_doubly_infinite, integrate_finite, integrate_semi_infinite, QuadratureConfig,
    QuadratureResult,
};

/// Largest supported derivative order.
pub const N_MAX: u32 = 8;

/// `p_n(x) = Re[(i pi - x)^n]` and `q_n(x) = Im[(i pi - x)^n]` as ascending
/// coefficient vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiPolynomialPair {
    pub n: u32,
    pub p_coeffs: Vec<f64>,
    pub q_coeffs: Vec<f64>,
}

impl PiPolynomialPair {
    pub fn p(&self, x: f64) -> f64 {
        horner(&self.p_coeffs, x)
    }

    pub fn q(&self, x: f64) -> f64 {
        horner(&self.q_coeffs, x)
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn check_order(n: u32) -> Result<()> {
    if n > N_MAX {
        return Err(Error::Range(format!(
            "derivative order {n} exceeds {N_MAX}"
        )));
    }
    Ok(())
}

fn neg_one_pow(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Binomial expansion of `(i pi - x)^n`.
pub fn pi_polynomials(n: u32) -> Result<PiPolynomialPair> {
    check_order(n)?;
    let len = n as usize + 1;
    let mut p_coeffs = vec![0.0; len];
    let mut q_coeffs = vec![0.0; len];
    for k in 0..=n / 2 {
        p_coeffs[(n - 2 * k) as usize] =
            binomial(n, 2 * k) * neg_one_pow(n + k) * PI.powi(2 * k as i32);
    }
    if n >= 1 {
        for k in 0..=(n - 1) / 2 {
            q_coeffs[(n - 2 * k - 1) as usize] =
                binomial(n, 2 * k + 1) * neg_one_pow(n + k + 1) * PI.powi(2 * k as i32 + 1);
        }
        q_coeffs.truncate(n as usize);
    } else {
        q_coeffs.clear();
    }
    Ok(PiPolynomialPair {
        n,
        p_coeffs,
        q_coeffs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeRequest {
    pub kind: BesselKind,
    pub n: u32,
    pub nu: f64,
    pub t: f64,
}

impl DerivativeRequest {
    pub fn new(kind: BesselKind, n: u32, nu: f64, t: f64) -> Result<Self> {
        let req = Self { kind, n, nu, t };
        req.validate()?;
        Ok(req)
    }

    pub fn validate(&self) -> Result<()> {
        check_order(self.n)?;
        check_domain(self.nu, self.t)
    }
}

/// `cos(theta - n pi/2)` without rounding `n pi/2`.
fn cos_shifted(theta: f64, n: u32) -> f64 {
    match n % 4 {
        0 => theta.cos(),
        1 => theta.sin(),
        2 => -theta.cos(),
        _ => -theta.sin(),
    }
}

/// `sin(theta - n pi/2)`.
fn sin_shifted(theta: f64, n: u32) -> f64 {
    match n % 4 {
        0 => theta.sin(),
        1 => -theta.cos(),
        2 => -theta.sin(),
        _ => theta.cos(),
    }
}

/// `d^n/dnu^n` of the requested function at `(nu, t)`.
pub fn derivative(req: &DerivativeRequest, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    req.validate()?;
    let DerivativeRequest { kind, n, nu, t } = *req;
    match kind {
        BesselKind::J => derivative_j(n, nu, t, cfg),
        BesselKind::Y => derivative_y(n, nu, t, cfg),
        BesselKind::I => derivative_i(n, nu, t, cfg),
        BesselKind::K => derivative_k(n, nu, t, cfg),
    }
}

/// Convenience wrapper returning the value only; non-convergence is an error.
pub fn derivative_value(
    kind: BesselKind,
    n: u32,
    nu: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let r = derivative(&DerivativeRequest::new(kind, n, nu, t)?, cfg)?;
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NotConverged {
            estimate: r.abs_error_estimate,
        })
    }
}

/// `-(1/pi) int_0^inf e^{-phase(x) - nu x} [p_n sin(pi nu) + q_n cos(pi nu)] dx`,
/// shared by `J` (`phase = t sinh x`) and `I` (`phase = t cosh x`).
fn damped_tail<P>(n: u32, nu: f64, phase: P, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    P: Fn(f64) -> f64,
{
    let s = sin_pi(nu);
    let c = cos_pi(nu);
    if n == 0 && s == 0.0 {
        return Ok(QuadratureResult::zero());
    }
    let poly = pi_polynomials(n)?;
    let tail = integrate_semi_infinite(
        |x| (-phase(x) - nu * x).exp() * (poly.p(x) * s + poly.q(x) * c),
        cfg,
    )?;
    Ok(tail.scaled(-1.0 / PI))
}

fn derivative_j(n: u32, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let head = integrate_finite(
        |x| x.powi(n as i32) * cos_shifted(t * x.sin() - nu * x, n),
        0.0,
        PI,
        cfg,
    )?
    .scaled(1.0 / PI);
    let tail = damped_tail(n, nu, |x| t * x.sinh(), cfg)?;
    Ok(head.plus(tail))
}

fn derivative_y(n: u32, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let head = integrate_finite(
        |x| x.powi(n as i32) * sin_shifted(t * x.sin() - nu * x, n),
        0.0,
        PI,
        cfg,
    )?
    .scaled(1.0 / PI);
    let poly = pi_polynomials(n)?;
    let s = sin_pi(nu);
    let c = cos_pi(nu);
    let tail = integrate_semi_infinite(
        |x| {
            let sh = t * x.sinh();
            x.powi(n as i32) * (nu * x - sh).exp()
                + (-nu * x - sh).exp() * (poly.p(x) * c - poly.q(x) * s)
        },
        cfg,
    )?
    .scaled(-1.0 / PI);
    Ok(head.plus(tail))
}

fn derivative_i(n: u32, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    // cos(nu x + n pi/2) = cos(-nu x - n pi/2)
    let head = integrate_finite(
        |x| x.powi(n as i32) * (t * x.cos()).exp() * cos_shifted(-nu * x, n),
        0.0,
        PI,
        cfg,
    )?
    .scaled(1.0 / PI);
    let tail = damped_tail(n, nu, |x| t * x.cosh(), cfg)?;
    Ok(head.plus(tail))
}

/// Half-line form `(1/2) int_0^inf x^n e^{-t cosh x} [e^{nu x} + (-1)^n e^{-nu x}] dx`.
fn derivative_k(n: u32, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let sign = neg_one_pow(n);
    integrate_semi_infinite(
        |x| {
            let ch = t * x.cosh();
            0.5 * x.powi(n as i32) * ((nu * x - ch).exp() + sign * (-nu * x - ch).exp())
        },
        cfg,
    )
}

/// Full-line form `(1/2) int_{-inf}^{inf} x^n e^{nu x - t cosh x} dx` of the
/// `K` derivative.
pub fn derivative_k_full_line(
    n: u32,
    nu: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    check_order(n)?;
    check_domain(nu, t)?;
    let r = integrate_doubly_infinite(|x| x.powi(n as i32) * (nu * x - t * x.cosh()).exp(), cfg)?;
    Ok(r.scaled(0.5))
}

/// Truncated Taylor series in the order around `nu0`, evaluated at `nu`:
/// `sum_{k < terms} d^k f(nu0) (nu - nu0)^k / k!`.
pub fn taylor_consistency(
    kind: BesselKind,
    nu0: f64,
    nu: f64,
    t: f64,
    terms: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !((nu - nu0).abs() <= 1.0) {
        return Err(Error::Domain(format!(
            "|nu - nu0| must be <= 1, got {}",
            nu - nu0
        )));
    }
    if terms == 0 || terms > N_MAX + 1 {
        return Err(Error::Range(format!(
            "terms must be in 1..={}, got {terms}",
            N_MAX + 1
        )));
    }
    check_domain(nu, t)?;
    let dnu = nu - nu0;
    // the zeroth derivative is the function itself
    let mut sum = crate::bessel::eval(kind, nu0, t, cfg)?;
    for k in 1..terms {
        let d = derivative_value(kind, k, nu0, t, cfg)?;
        sum += d * dnu.powi(k as i32) / factorial(k);
    }
    Ok(sum)
}
