//! Finite-sum closed forms at integer order.
//!
//! Everything here is built on the weighted sum
//!
//! ```text
//! S_B(m, t) = m! * sum_{k=0}^{m-1} B_k(t) (t/2)^{k-m} / (k! (m-k))
//! ```
//!
//! for a Bessel family `B`, which is empty (zero) at `m = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{check_domain, eval, BesselKind, NU_MAX};
use crate::error::{Error, Result};
use crate::gamma::{factorial, ln_factorial};
use crate::quadrature::QuadratureConfig;

/// Above this order the sum coefficients are built in log space.
const DIRECT_SUM_MAX: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegerOrderRequest {
    pub kind: BesselKind,
    pub m: i32,
    pub t: f64,
}

impl IntegerOrderRequest {
    pub fn new(kind: BesselKind, m: i32, t: f64) -> Result<Self> {
        check_domain(f64::from(m), t)?;
        Ok(Self { kind, m, t })
    }
}

fn check_order(m: i64, t: f64) -> Result<()> {
    if (m.unsigned_abs() as f64) > NU_MAX {
        return Err(Error::Domain(format!("|m| must be <= {NU_MAX}, got {m}")));
    }
    check_domain(0.0, t)
}

/// `m!/(k!(m-k)) (t/2)^{k-m}`.
fn sum_coefficient(m: u32, k: u32, t: f64) -> f64 {
    let half = 0.5 * t;
    let gap = m - k;
    if m <= DIRECT_SUM_MAX {
        factorial(m) / (factorial(k) * f64::from(gap)) * half.powi(k as i32 - m as i32)
    } else {
        let ln = ln_factorial(m) - ln_factorial(k) - f64::from(gap).ln()
            + f64::from(k as i32 - m as i32) * half.ln();
        ln.exp()
    }
}

/// `m! sum_{k<m} w_k B_k(t) (t/2)^{k-m} / (k!(m-k))` with `w_k = (-1)^k` when
/// `alternate` is set.
fn weighted_sum(
    family: BesselKind,
    m: u32,
    t: f64,
    alternate: bool,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..m {
        let b = eval(family, f64::from(k), t, cfg)?;
        let sign = if alternate && k % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * sum_coefficient(m, k, t) * b;
    }
    Ok(sum)
}

/// The finite sum `S_B(m, t)` for family `family`; public for table output.
pub fn finite_sum(family: BesselKind, m: u32, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_order(i64::from(m), t)?;
    weighted_sum(family, m, t, false, cfg)
}

fn parity(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `d/dnu` of the requested function at `nu = m`, any integer `m`.
///
/// Non-negative orders use the classical finite sums; negative orders the
/// extensions obtained from the first-derivative reflection formulas, e.g.
/// `dJ/dnu|_{-m} = (-1)^m [pi/2 Y_m - S_J(m)/2]`.
pub fn first_derivative_closed(req: &IntegerOrderRequest, cfg: &QuadratureConfig) -> Result<f64> {
    let IntegerOrderRequest { kind, m, t } = *req;
    check_order(i64::from(m), t)?;
    let order = m.unsigned_abs();
    // the +- of the extension formulas
    let pm = if m < 0 { -1.0 } else { 1.0 };
    // (+-1)^m
    let pm_pow = if m < 0 { parity(order) } else { 1.0 };
    let mf = f64::from(order);
    let value = match kind {
        BesselKind::J => {
            let y = eval(BesselKind::Y, mf, t, cfg)?;
            let s = weighted_sum(BesselKind::J, order, t, false, cfg)?;
            pm_pow * (PI / 2.0 * y + pm * 0.5 * s)
        }
        BesselKind::Y => {
            let j = eval(BesselKind::J, mf, t, cfg)?;
            let s = weighted_sum(BesselKind::Y, order, t, false, cfg)?;
            pm_pow * (-PI / 2.0 * j + pm * 0.5 * s)
        }
        BesselKind::I => {
            let k = eval(BesselKind::K, mf, t, cfg)?;
            let s = weighted_sum(BesselKind::I, order, t, true, cfg)?;
            parity(order) * (-k + pm * 0.5 * s)
        }
        BesselKind::K => {
            let s = weighted_sum(BesselKind::K, order, t, false, cfg)?;
            pm * 0.5 * s
        }
    };
    Ok(value)
}

/// Closed-form right-hand side of the second-derivative reflection formulas
/// `f''(m) + (-1)^{m+1} f''(-m)` for `J` and `Y`, and `I''(m) - I''(-m)` for `I`.
pub fn second_derivative_reflection_rhs(
    kind: BesselKind,
    m: u32,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_order(i64::from(m), t)?;
    match kind {
        BesselKind::J => Ok(PI * weighted_sum(BesselKind::Y, m, t, false, cfg)?),
        BesselKind::Y => Ok(-PI * weighted_sum(BesselKind::J, m, t, false, cfg)?),
        BesselKind::I => Ok(2.0 * parity(m + 1) * weighted_sum(BesselKind::K, m, t, false, cfg)?),
        BesselKind::K => Err(Error::Domain(
            "no second-derivative reflection closed form for K".into(),
        )),
    }
}

/// `int_{-inf}^{inf} x e^{m x - t cosh x} dx = sign(m) S_K(|m|, t)`.
pub fn new_integral_closed(m: i32, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_order(i64::from(m), t)?;
    if m == 0 {
        return Ok(0.0);
    }
    let s = weighted_sum(BesselKind::K, m.unsigned_abs(), t, false, cfg)?;
    Ok(if m < 0 { -s } else { s })
}
