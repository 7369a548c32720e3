//! Registry of reflection formulas and cross-checks, each evaluated into an
//! [`IdentityReport`].

pub mod apelblat;
pub mod hypergeometric;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bessel::{check_domain, eval, BesselKind, NU_MAX};
use crate::closed_forms::{
    first_derivative_closed, new_integral_closed, second_derivative_reflection_rhs,
    IntegerOrderRequest,
};
use crate::derivatives::{derivative_value, taylor_consistency, N_MAX};
use crate::error::{Error, Result};
use crate::gamma::{binomial, cos_pi, sin_pi};
use crate::oracles::{fd_order_derivative, OracleConfig};
use crate::quadrature::{integrate_doubly_infinite, QuadratureConfig};

pub use apelblat::apelblat_check;
pub use hypergeometric::{new_integral_hypergeometric, pfq, HypergeometricSpec};

/// Parameters an identity was evaluated at. `order` is `m`, `mu` or `nu`
/// depending on the identity; `base_order` is the expansion point of a
/// Taylor check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityInputs {
    pub kind: Option<BesselKind>,
    pub order: f64,
    pub t: f64,
    pub n: Option<u32>,
    pub base_order: Option<f64>,
}

impl IdentityInputs {
    pub fn new(order: f64, t: f64) -> Self {
        Self {
            kind: None,
            order,
            t,
            n: None,
            base_order: None,
        }
    }

    pub fn with_kind(mut self, kind: BesselKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_base_order(mut self, nu0: f64) -> Self {
        self.base_order = Some(nu0);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub inputs: IdentityInputs,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityReport {
    /// Fills in the residuals: `abs = |lhs - rhs|`, `rel = abs / (1 + |rhs|)`,
    /// and `pass` iff `rel <= tolerance`.
    pub fn new(
        identity_id: impl Into<String>,
        inputs: IdentityInputs,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        let abs_residual = (lhs - rhs).abs();
        let rel_residual = abs_residual / (1.0 + rhs.abs());
        Self {
            identity_id: identity_id.into(),
            inputs,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass: rel_residual <= tolerance,
        }
    }

    /// Same report judged against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.rel_residual <= tolerance;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReflectionId {
    J1,
    J2,
    J2Closed,
    Y1,
    Y2,
    Y2Closed,
    IGeneral,
    I1,
    I2,
    IHalf,
    K,
}

impl ReflectionId {
    pub const ALL: [ReflectionId; 11] = [
        ReflectionId::J1,
        ReflectionId::J2,
        ReflectionId::J2Closed,
        ReflectionId::Y1,
        ReflectionId::Y2,
        ReflectionId::Y2Closed,
        ReflectionId::IGeneral,
        ReflectionId::I1,
        ReflectionId::I2,
        ReflectionId::IHalf,
        ReflectionId::K,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReflectionId::J1 => "refl_J1",
            ReflectionId::J2 => "refl_J2",
            ReflectionId::J2Closed => "refl_J2_closed",
            ReflectionId::Y1 => "refl_Y1",
            ReflectionId::Y2 => "refl_Y2",
            ReflectionId::Y2Closed => "refl_Y2_closed",
            ReflectionId::IGeneral => "refl_I_general",
            ReflectionId::I1 => "refl_I1",
            ReflectionId::I2 => "refl_I2",
            ReflectionId::IHalf => "refl_I_half",
            ReflectionId::K => "refl_K",
        }
    }

    /// Whether the identity takes a real order and a derivative count
    /// rather than an integer order.
    pub fn is_general(self) -> bool {
        matches!(self, ReflectionId::IGeneral | ReflectionId::K)
    }
}

impl fmt::Display for ReflectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReflectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReflectionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity {s:?}")))
    }
}

/// `order` is `m` for the integer-order identities and `mu` for
/// `refl_I_general` / `refl_K`, where `n` is the derivative count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReflectionParams {
    pub order: f64,
    pub t: f64,
    pub n: u32,
}

impl ReflectionParams {
    pub fn integer(m: u32, t: f64) -> Self {
        Self {
            order: f64::from(m),
            t,
            n: 0,
        }
    }

    pub fn general(n: u32, mu: f64, t: f64) -> Self {
        Self { order: mu, t, n }
    }
}

fn integer_order(order: f64, limit: f64) -> Result<u32> {
    if !(order >= 0.0 && order == order.floor() && order <= limit) {
        return Err(Error::Domain(format!(
            "order must be an integer in 0..={limit}, got {order}"
        )));
    }
    Ok(order as u32)
}

fn parity(m: u32) -> f64 {
    if m.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Evaluates one reflection formula, returning its two sides.
fn reflection_sides(
    id: ReflectionId,
    p: ReflectionParams,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    use BesselKind::{I, J, K, Y};
    let t = p.t;
    let d = |kind, n, nu| derivative_value(kind, n, nu, t, cfg);
    if id.is_general() {
        if p.n > N_MAX {
            return Err(Error::Range(format!("n must be <= {N_MAX}, got {}", p.n)));
        }
        check_domain(p.order, t)?;
        let (n, mu) = (p.n, p.order);
        let lhs_kind = if id == ReflectionId::K { K } else { I };
        let lhs = d(lhs_kind, n, mu)? + parity(n + 1) * d(lhs_kind, n, -mu)?;
        if id == ReflectionId::K {
            return Ok((lhs, 0.0));
        }
        let mut even = 0.0;
        let mut odd = 0.0;
        let mut weight = 1.0;
        for k in 0..=n / 2 {
            even += binomial(n, 2 * k) * weight * d(K, n - 2 * k, mu)?;
            if 2 * k < n {
                odd += binomial(n, 2 * k + 1) * weight * d(K, n - 2 * k - 1, mu)?;
            }
            weight *= -PI * PI;
        }
        let rhs = -2.0 / PI * sin_pi(mu) * even - 2.0 * cos_pi(mu) * odd;
        return Ok((lhs, rhs));
    }

    let limit = if id == ReflectionId::IHalf {
        NU_MAX - 0.5
    } else {
        NU_MAX
    };
    let m = integer_order(p.order, limit)?;
    check_domain(0.0, t)?;
    let mf = f64::from(m);
    let sides = match id {
        ReflectionId::J1 => (
            d(J, 1, mf)? + parity(m) * d(J, 1, -mf)?,
            PI * eval(Y, mf, t, cfg)?,
        ),
        ReflectionId::Y1 => (
            d(Y, 1, mf)? + parity(m) * d(Y, 1, -mf)?,
            -PI * eval(J, mf, t, cfg)?,
        ),
        ReflectionId::J2 => (
            d(J, 2, mf)? + parity(m + 1) * d(J, 2, -mf)?,
            2.0 * PI * d(Y, 1, mf)? + PI * PI * eval(J, mf, t, cfg)?,
        ),
        ReflectionId::Y2 => (
            d(Y, 2, mf)? + parity(m + 1) * d(Y, 2, -mf)?,
            -2.0 * PI * d(J, 1, mf)? + PI * PI * eval(Y, mf, t, cfg)?,
        ),
        ReflectionId::J2Closed => (
            d(J, 2, mf)? + parity(m + 1) * d(J, 2, -mf)?,
            second_derivative_reflection_rhs(J, m, t, cfg)?,
        ),
        ReflectionId::Y2Closed => (
            d(Y, 2, mf)? + parity(m + 1) * d(Y, 2, -mf)?,
            second_derivative_reflection_rhs(Y, m, t, cfg)?,
        ),
        ReflectionId::I1 => (
            d(I, 1, mf)? + d(I, 1, -mf)?,
            2.0 * parity(m + 1) * eval(K, mf, t, cfg)?,
        ),
        ReflectionId::I2 => (
            d(I, 2, mf)? - d(I, 2, -mf)?,
            4.0 * parity(m + 1) * d(K, 1, mf)?,
        ),
        ReflectionId::IHalf => {
            let mu = mf + 0.5;
            (
                d(I, 1, mu)? + d(I, 1, -mu)?,
                2.0 / PI * parity(m + 1) * d(K, 1, mu)?,
            )
        }
        ReflectionId::IGeneral | ReflectionId::K => unreachable!(),
    };
    Ok(sides)
}

/// Evaluates a registered reflection formula at `params`.
pub fn check_reflection(
    id: ReflectionId,
    params: ReflectionParams,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let (lhs, rhs) = reflection_sides(id, params, cfg)?;
    let mut inputs = IdentityInputs::new(params.order, params.t);
    if id.is_general() {
        inputs = inputs.with_n(params.n);
    }
    Ok(IdentityReport::new(id.as_str(), inputs, lhs, rhs, tol))
}

/// Quadrature `d/dnu` at `nu = m` against the finite-sum closed form.
pub fn closed_form_check(
    kind: BesselKind,
    m: i32,
    t: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let req = IntegerOrderRequest::new(kind, m, t)?;
    let lhs = derivative_value(kind, 1, f64::from(m), t, cfg)?;
    let rhs = first_derivative_closed(&req, cfg)?;
    let inputs = IdentityInputs::new(f64::from(m), t)
        .with_kind(kind)
        .with_n(1);
    Ok(IdentityReport::new(
        "closed_first_derivative",
        inputs,
        lhs,
        rhs,
        tol,
    ))
}

fn new_integral_quadrature(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_domain(nu, t)?;
    let r = integrate_doubly_infinite(|x| x * (nu * x - t * x.cosh()).exp(), cfg)?;
    if !r.converged {
        return Err(Error::NotConverged {
            estimate: r.abs_error_estimate,
        });
    }
    Ok(r.value)
}

/// `int x e^{m x - t cosh x} dx` by quadrature against its finite-sum form.
pub fn new_integral_closed_check(
    m: i32,
    t: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let rhs = new_integral_closed(m, t, cfg)?;
    let lhs = new_integral_quadrature(f64::from(m), t, cfg)?;
    Ok(IdentityReport::new(
        "new_integral_closed",
        IdentityInputs::new(f64::from(m), t),
        lhs,
        rhs,
        tol,
    ))
}

/// `int x e^{nu x - t cosh x} dx` by quadrature against the hypergeometric form.
pub fn new_integral_hypergeometric_check(
    nu: f64,
    t: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let rhs = new_integral_hypergeometric(nu, t, cfg)?;
    let lhs = new_integral_quadrature(nu, t, cfg)?;
    Ok(IdentityReport::new(
        "new_integral_hypergeometric",
        IdentityInputs::new(nu, t),
        lhs,
        rhs,
        tol,
    ))
}

/// `0F1(; 1; t^2/4)` against the engine's `I_0(t)`.
pub fn pfq_bessel_check(t: f64, tol: f64, cfg: &QuadratureConfig) -> Result<IdentityReport> {
    let lhs = pfq(&HypergeometricSpec::new(vec![], vec![1.0], t * t / 4.0)?)?;
    let rhs = eval(BesselKind::I, 0.0, t, cfg)?;
    Ok(IdentityReport::new(
        "pfq_0F1_I0",
        IdentityInputs::new(0.0, t).with_kind(BesselKind::I),
        lhs,
        rhs,
        tol,
    ))
}

/// Truncated Taylor expansion in the order around `nu0` against the
/// function value at `nu`.
pub fn taylor_check(
    kind: BesselKind,
    nu0: f64,
    nu: f64,
    t: f64,
    terms: u32,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let lhs = taylor_consistency(kind, nu0, nu, t, terms, cfg)?;
    let rhs = eval(kind, nu, t, cfg)?;
    let inputs = IdentityInputs::new(nu, t)
        .with_kind(kind)
        .with_n(terms)
        .with_base_order(nu0);
    Ok(IdentityReport::new("taylor", inputs, lhs, rhs, tol))
}

/// Quadrature `n`-th order derivative against the finite-difference oracle.
pub fn fd_oracle_check(
    kind: BesselKind,
    n: u32,
    nu: f64,
    t: f64,
    tol: f64,
    ocfg: &OracleConfig,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    let lhs = derivative_value(kind, n, nu, t, cfg)?;
    let rhs = fd_order_derivative(kind, n, nu, t, ocfg, cfg)?;
    let inputs = IdentityInputs::new(nu, t).with_kind(kind).with_n(n);
    Ok(IdentityReport::new("fd_oracle", inputs, lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn report_residuals() {
        let r = IdentityReport::new("x", IdentityInputs::new(0.0, 1.0), 1.5, -1.0, 0.3);
        assert_eq!(r.abs_residual, 2.5);
        assert_eq!(r.rel_residual, 1.25);
        assert!(!r.pass);
        assert!(r.with_tolerance(2.0).pass);
    }

    #[test]
    fn ids_round_trip() {
        for id in ReflectionId::ALL {
            assert_eq!(id.as_str().parse::<ReflectionId>().unwrap(), id);
        }
        assert!("refl_X".parse::<ReflectionId>().is_err());
    }

    #[test]
    fn j1_at_zero_order() {
        for t in [0.5, 3.0] {
            let r = check_reflection(
                ReflectionId::J1,
                ReflectionParams::integer(0, t),
                1e-8,
                &cfg(),
            )
            .unwrap();
            let y0 = eval(BesselKind::Y, 0.0, t, &cfg()).unwrap();
            assert_eq!(r.rhs, PI * y0);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn k_first_derivative_at_zero_is_exactly_zero() {
        let r = check_reflection(
            ReflectionId::K,
            ReflectionParams::general(1, 0.0, 2.0),
            1e-8,
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.abs_residual, 0.0);
    }

    #[test]
    fn i_general_zero_derivative_is_connection_formula() {
        let (mu, t) = (0.3, 1.5);
        let r = check_reflection(
            ReflectionId::IGeneral,
            ReflectionParams::general(0, mu, t),
            1e-8,
            &cfg(),
        )
        .unwrap();
        let k = eval(BesselKind::K, mu, t, &cfg()).unwrap();
        assert!((r.rhs + 2.0 / PI * sin_pi(mu) * k).abs() < 1e-15);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn i_general_specializes_to_i1() {
        for m in 0..=3u32 {
            for t in [0.5, 2.0] {
                let g = check_reflection(
                    ReflectionId::IGeneral,
                    ReflectionParams::general(1, f64::from(m), t),
                    1e-8,
                    &cfg(),
                )
                .unwrap();
                let s = check_reflection(
                    ReflectionId::I1,
                    ReflectionParams::integer(m, t),
                    1e-8,
                    &cfg(),
                )
                .unwrap();
                assert!((g.lhs - s.lhs).abs() <= 1e-10 * (1.0 + s.lhs.abs()));
                assert!((g.rhs - s.rhs).abs() <= 1e-10 * (1.0 + s.rhs.abs()));
            }
        }
    }

    #[test]
    fn every_identity_passes_at_a_sample_point() {
        for id in ReflectionId::ALL {
            let p = if id.is_general() {
                ReflectionParams::general(3, 0.7, 2.0)
            } else {
                ReflectionParams::integer(3, 2.0)
            };
            let r = check_reflection(id, p, 1e-8, &cfg()).unwrap();
            assert!(r.pass, "{id}: {r:?}");
        }
    }

    #[test]
    fn integer_identities_reject_fractional_orders() {
        let p = ReflectionParams {
            order: 1.5,
            t: 1.0,
            n: 0,
        };
        assert!(matches!(
            check_reflection(ReflectionId::J1, p, 1e-8, &cfg()),
            Err(Error::Domain(_))
        ));
        let p = ReflectionParams::general(9, 0.5, 1.0);
        assert!(matches!(
            check_reflection(ReflectionId::K, p, 1e-8, &cfg()),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn cross_checks_pass() {
        let c = cfg();
        assert!(
            closed_form_check(BesselKind::Y, -3, 2.0, 1e-9, &c)
                .unwrap()
                .pass
        );
        assert!(new_integral_closed_check(-2, 1.0, 1e-9, &c).unwrap().pass);
        assert!(
            new_integral_hypergeometric_check(0.25, 2.0, 1e-6, &c)
                .unwrap()
                .pass
        );
        assert!(pfq_bessel_check(5.0, 1e-9, &c).unwrap().pass);
        assert!(
            taylor_check(BesselKind::K, 1.0, 1.3, 2.0, 8, 1e-6, &c)
                .unwrap()
                .pass
        );
        let o = OracleConfig::default();
        assert!(
            fd_oracle_check(BesselKind::I, 2, 1.0, 2.0, 1e-6, &o, &c)
                .unwrap()
                .pass
        );
    }
}
