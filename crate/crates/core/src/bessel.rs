//! `J`, `Y`, `I`, `K` of real order and positive argument, each evaluated
//! from its integral representation (finite part on `[0, pi]` plus a
//! decaying tail on `[0, inf)`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{cos_pi, sin_pi};
use crate::quadrature::{
    integrate_finite, integrate_semi_infinite, QuadratureConfig, QuadratureResult,
};

/// Largest supported `|nu|`.
pub const NU_MAX: f64 = 20.0;
/// Largest supported argument `t`.
pub const T_MAX: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

impl BesselKind {
    pub const ALL: [BesselKind; 4] = [BesselKind::J, BesselKind::Y, BesselKind::I, BesselKind::K];
}

impl fmt::Display for BesselKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BesselKind::J => "J",
            BesselKind::Y => "Y",
            BesselKind::I => "I",
            BesselKind::K => "K",
        };
        f.write_str(s)
    }
}

impl FromStr for BesselKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "J" | "j" => Ok(BesselKind::J),
            "Y" | "y" => Ok(BesselKind::Y),
            "I" | "i" => Ok(BesselKind::I),
            "K" | "k" => Ok(BesselKind::K),
            other => Err(Error::Domain(format!("unknown Bessel kind {other:?}"))),
        }
    }
}

/// Rejects points outside `|nu| <= NU_MAX`, `0 < t <= T_MAX`.
pub fn check_domain(nu: f64, t: f64) -> Result<()> {
    if !nu.is_finite() || nu.abs() > NU_MAX {
        return Err(Error::Domain(format!("|nu| must be <= {NU_MAX}, got {nu}")));
    }
    if !(t > 0.0 && t <= T_MAX) {
        return Err(Error::Domain(format!(
            "t must lie in (0, {T_MAX}], got {t}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselPoint {
    pub kind: BesselKind,
    pub nu: f64,
    pub t: f64,
}

impl BesselPoint {
    pub fn new(kind: BesselKind, nu: f64, t: f64) -> Result<Self> {
        check_domain(nu, t)?;
        Ok(Self { kind, nu, t })
    }
}

/// Function value with the quadrature bookkeeping.
pub fn bessel_result(point: BesselPoint, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let BesselPoint { kind, nu, t } = point;
    check_domain(nu, t)?;
    match kind {
        BesselKind::J => bessel_j(nu, t, cfg),
        BesselKind::Y => bessel_y(nu, t, cfg),
        BesselKind::I => bessel_i(nu, t, cfg),
        BesselKind::K => bessel_k(nu.abs(), t, cfg),
    }
}

/// Function value; a non-converged quadrature is reported as an error.
pub fn bessel(point: BesselPoint, cfg: &QuadratureConfig) -> Result<f64> {
    let r = bessel_result(point, cfg)?;
    if r.converged {
        Ok(r.value)
    } else {
        Err(Error::NotConverged {
            estimate: r.abs_error_estimate,
        })
    }
}

/// Shorthand for `bessel(BesselPoint::new(kind, nu, t)?, cfg)`.
pub fn eval(kind: BesselKind, nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    bessel(BesselPoint::new(kind, nu, t)?, cfg)
}

fn bessel_j(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let head = integrate_finite(|x| (t * x.sin() - nu * x).cos(), 0.0, PI, cfg)?;
    let s = sin_pi(nu);
    let tail = if s == 0.0 {
        QuadratureResult::zero()
    } else {
        integrate_semi_infinite(|x| (-t * x.sinh() - nu * x).exp(), cfg)?.scaled(-s)
    };
    Ok(head.plus(tail).scaled(1.0 / PI))
}

fn bessel_y(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let head = integrate_finite(|x| (t * x.sin() - nu * x).sin(), 0.0, PI, cfg)?;
    let c = cos_pi(nu);
    let tail = integrate_semi_infinite(
        |x| {
            let sh = t * x.sinh();
            (nu * x - sh).exp() + c * (-nu * x - sh).exp()
        },
        cfg,
    )?;
    Ok(head.plus(tail.scaled(-1.0)).scaled(1.0 / PI))
}

fn bessel_i(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let head = integrate_finite(|x| (t * x.cos()).exp() * (nu * x).cos(), 0.0, PI, cfg)?;
    let s = sin_pi(nu);
    let tail = if s == 0.0 {
        QuadratureResult::zero()
    } else {
        integrate_semi_infinite(|x| (-t * x.cosh() - nu * x).exp(), cfg)?.scaled(-s)
    };
    Ok(head.plus(tail).scaled(1.0 / PI))
}

fn bessel_k(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    integrate_semi_infinite(
        |x| {
            let ch = t * x.cosh();
            0.5 * ((nu * x - ch).exp() + (-nu * x - ch).exp())
        },
        cfg,
    )
}
