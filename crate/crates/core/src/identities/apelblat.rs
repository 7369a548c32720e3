//! Order-derivative cross-checks against the product-integral forms
//!
//! ```text
//! dJ/dnu = pi nu   int_0^{pi/2} tan(th) Y_0(t sin^2 th) J_nu(t cos^2 th) dth
//! dI/dnu = -2 nu   int_0^{pi/2} tan(th) K_0(t sin^2 th) I_nu(t cos^2 th) dth
//! ```
//!
//! With `u = cos^2 th` the angle integral becomes
//! `(1/2) int_0^1 W_0(t(1-u)) B_nu(t u) / u du`, split at `u = 1/2` and
//! written in `v = 1 - u` on the upper half so both endpoint singularities
//! sit at an exactly representable zero. A window of width `CUT` at each
//! singular end is replaced by the leading term of the small-argument
//! expansion.

use std::cell::RefCell;

use crate::bessel::{check_domain, eval, BesselKind};
use crate::derivatives::derivative_value;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::identities::{IdentityInputs, IdentityReport};
use crate::quadrature::{integrate_finite, QuadratureConfig, QuadratureResult};

const CUT: f64 = 1e-12;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn checked(r: QuadratureResult, what: &str) -> Result<f64> {
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::EndpointNonConvergence(format!(
            "{what}: error estimate {:e}",
            r.abs_error_estimate
        )))
    }
}

/// `int_0^1 W_0(t(1-u)) B_nu(t u) / u du` for `(W, B) = (Y, J)` or `(K, I)`.
fn product_integral(kind: BesselKind, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let weight = match kind {
        BesselKind::J => BesselKind::Y,
        BesselKind::I => BesselKind::K,
        _ => unreachable!(),
    };
    let failure = RefCell::new(None);
    let guarded = |k: BesselKind, order: f64, x: f64| match eval(k, order, x, cfg) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            0.0
        }
    };

    let lower = integrate_finite(
        |u| guarded(weight, 0.0, t * (1.0 - u)) * guarded(kind, nu, t * u) / u,
        CUT,
        0.5,
        cfg,
    )?;
    let upper = integrate_finite(
        |v| guarded(weight, 0.0, t * v) * guarded(kind, nu, t * (1.0 - v)) / (1.0 - v),
        CUT,
        0.5,
        cfg,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let mut total = checked(lower, "u near 0")? + checked(upper, "u near 1")?;

    // int_0^CUT B_nu(t u)/u du with B_nu(x) ~ (x/2)^nu / Gamma(nu+1)
    let w_t = eval(weight, 0.0, t, cfg)?;
    total += w_t * (t / 2.0).powf(nu) * CUT.powf(nu) / (nu * gamma(nu + 1.0)?);
    // int_0^CUT W_0(t v) dv with Y_0 ~ (2/pi)(ln(x/2) + gamma), K_0 ~ -(ln(x/2) + gamma)
    let log_part = CUT * ((t * CUT / 2.0).ln() + EULER_GAMMA - 1.0);
    let w_int = match weight {
        BesselKind::Y => 2.0 / std::f64::consts::PI * log_part,
        _ => -log_part,
    };
    total += eval(kind, nu, t, cfg)? * w_int;
    Ok(total)
}

/// Quadrature `d/dnu` of `J` or `I` against the product-integral form.
pub fn apelblat_check(
    kind: BesselKind,
    nu: f64,
    t: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let id = match kind {
        BesselKind::J => "apelblat_J",
        BesselKind::I => "apelblat_I",
        other => {
            return Err(Error::Domain(format!(
                "product-integral check is defined for J and I, not {other}"
            )))
        }
    };
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("nu must be > 0, got {nu}")));
    }
    check_domain(nu, t)?;
    let lhs = derivative_value(kind, 1, nu, t, cfg)?;
    let integral = product_integral(kind, nu, t, cfg)?;
    let rhs = match kind {
        BesselKind::J => std::f64::consts::PI * nu / 2.0 * integral,
        _ => -nu * integral,
    };
    let inputs = IdentityInputs::new(nu, t).with_kind(kind).with_n(1);
    Ok(IdentityReport::new(id, inputs, lhs, rhs, tol))
}
