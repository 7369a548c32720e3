//! Reference values built without the integral representations: ascending
//! series for `J` and `I`, `K` from the connection formula, and finite
//! differences in the order. Used only for validation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{check_domain, eval, BesselKind, NU_MAX};
use crate::error::{Error, Result};
use crate::gamma::{recip_gamma, sin_pi};
use crate::quadrature::QuadratureConfig;

/// Largest argument accepted by the ascending series.
pub const SERIES_T_MAX: f64 = 20.0;
const SERIES_TERM_MAX: usize = 500;
const K_OFFSET: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub series_tol: f64,
    pub fd_step: f64,
    pub richardson_levels: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            series_tol: 1e-15,
            fd_step: 0.05,
            richardson_levels: 2,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.fd_step > 0.0 && self.fd_step <= 0.2) {
            return Err(Error::Domain(format!(
                "fd_step must lie in (0, 0.2], got {}",
                self.fd_step
            )));
        }
        if self.richardson_levels == 0 {
            return Err(Error::Range("richardson_levels must be >= 1".into()));
        }
        if !(self.series_tol > 0.0) {
            return Err(Error::Domain(format!(
                "series_tol must be > 0, got {}",
                self.series_tol
            )));
        }
        Ok(())
    }
}

/// `sum_k s^k (t/2)^{nu+2k} / (k! Gamma(nu+k+1))`, `s = -1` for `J`, `1` for `I`.
pub fn series_bessel(kind: BesselKind, nu: f64, t: f64, ocfg: &OracleConfig) -> Result<f64> {
    let sign = match kind {
        BesselKind::J => -1.0,
        BesselKind::I => 1.0,
        other => return Err(Error::Domain(format!("no ascending series for {other}"))),
    };
    ocfg.validate()?;
    if !(nu > -NU_MAX - 1e-12 && nu.is_finite()) {
        return Err(Error::Domain(format!("nu must be > -{NU_MAX}, got {nu}")));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("t must be > 0, got {t}")));
    }
    if t > SERIES_T_MAX {
        return Err(Error::Conditioning(format!(
            "ascending series is not used beyond t = {SERIES_T_MAX}, got {t}"
        )));
    }
    let half = t / 2.0;
    let q = sign * half * half;
    // at a negative integer order the first -nu terms vanish
    let k0 = if nu < 0.0 && nu == nu.floor() {
        (-nu) as usize
    } else {
        0
    };
    let mut k = k0;
    let kf = k0 as f64;
    let mut term = sign.powi(k0 as i32)
        * half.powf(nu + 2.0 * kf)
        * recip_gamma(kf + 1.0)
        * recip_gamma(nu + kf + 1.0);
    let mut sum = term;
    loop {
        term *= q / ((k as f64 + 1.0) * (nu + k as f64 + 1.0));
        sum += term;
        k += 1;
        let past_peak = (k as f64) > half;
        if past_peak && term.abs() <= ocfg.series_tol * sum.abs() {
            return Ok(sum);
        }
        if k - k0 > SERIES_TERM_MAX {
            return Err(Error::SeriesNonConvergence {
                budget: SERIES_TERM_MAX,
            });
        }
    }
}

/// `K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu))`; at integer order the
/// average over `nu +- delta` is extrapolated to `delta = 0`.
pub fn series_k(nu: f64, t: f64, ocfg: &OracleConfig) -> Result<f64> {
    let nu = nu.abs();
    if nu > NU_MAX - 2.0 * K_OFFSET && nu == nu.round() {
        return Err(Error::Domain(format!(
            "integer-order K oracle needs nu < {NU_MAX}"
        )));
    }
    let direct = |v: f64| -> Result<f64> {
        let i_neg = series_bessel(BesselKind::I, -v, t, ocfg)?;
        let i_pos = series_bessel(BesselKind::I, v, t, ocfg)?;
        Ok(PI * (i_neg - i_pos) / (2.0 * sin_pi(v)))
    };
    if nu != nu.round() {
        return direct(nu);
    }
    let avg = |d: f64| -> Result<f64> { Ok(0.5 * (direct(nu + d)? + direct(nu - d)?)) };
    let a = avg(K_OFFSET)?;
    let b = avg(K_OFFSET / 2.0)?;
    Ok((4.0 * b - a) / 3.0)
}

/// Central difference in the order with a Richardson tableau of
/// `richardson_levels` extrapolation steps (error `O(h^{2 levels + 2})`).
pub fn fd_order_derivative(
    kind: BesselKind,
    n: u32,
    nu: f64,
    t: f64,
    ocfg: &OracleConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    ocfg.validate()?;
    if !(n == 1 || n == 2) {
        return Err(Error::Range(format!(
            "finite-difference oracle supports n = 1, 2; got {n}"
        )));
    }
    check_domain(nu, t)?;
    let h0 = ocfg.fd_step;
    if nu.abs() + h0 > NU_MAX {
        return Err(Error::Domain(format!(
            "stencil nu +- {h0} leaves the order domain"
        )));
    }
    let f = |v: f64| eval(kind, v, t, cfg);
    let center = if n == 2 { f(nu)? } else { 0.0 };
    let levels = ocfg.richardson_levels as usize;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels + 1);
    for i in 0..=levels {
        let h = h0 / f64::from(1u32 << i);
        let (fp, fm) = (f(nu + h)?, f(nu - h)?);
        let d = if n == 1 {
            (fp - fm) / (2.0 * h)
        } else {
            (fp - 2.0 * center + fm) / (h * h)
        };
        let mut row = vec![d];
        for j in 1..=i {
            let factor = 4f64.powi(j as i32) - 1.0;
            let next = row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / factor;
            row.push(next);
        }
        table.push(row);
    }
    Ok(table[levels][levels])
}
