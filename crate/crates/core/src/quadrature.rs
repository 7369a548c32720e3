//! Double-exponential quadrature.
//!
//! Finite intervals use the tanh-sinh substitution, `[0, inf)` uses exp-sinh
//! and the real line is split into two exp-sinh halves. Each rule is the
//! trapezoidal rule in the transformed variable `s` on `[-S_MAX, S_MAX]`; a
//! level halves the step and only evaluates the new odd nodes. Refinement
//! stops once two successive levels agree to `max(abs_tol, rel_tol*|I|)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling for `QuadratureConfig::max_level`.
pub const MAX_LEVEL_LIMIT: u32 = 16;

/// Half-width of the truncated `s` range. At `s = 4` the tanh-sinh node sits
/// ~1e-37 from the endpoint and exp-sinh spans `[2e-19, 4e18]`.
const S_MAX: f64 = 4.0;

/// Successive-level comparisons start at this level.
const MIN_LEVEL: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_level: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_level: 12,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_level: u32) -> Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_level,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain(format!(
                "abs_tol must be > 0, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Domain(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if self.max_level > MAX_LEVEL_LIMIT {
            return Err(Error::Range(format!(
                "max_level {} exceeds {MAX_LEVEL_LIMIT}",
                self.max_level
            )));
        }
        Ok(())
    }

    /// Acceptance threshold for a result of magnitude `value`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Exact zero, used for terms whose integrand vanishes identically.
    pub(crate) fn zero() -> Self {
        Self {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Sum of two independently computed pieces.
    pub fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }
}

/// One refinement level: its estimate and the difference to the previous one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub level: u32,
    pub value: f64,
    pub abs_error_estimate: f64,
}

/// Maps the trapezoidal variable `s` to an abscissa and Jacobian weight.
/// Returns `None` when the node collapses onto an endpoint.
trait Substitution {
    fn node(&self, s: f64) -> Option<(f64, f64)>;
}

struct TanhSinh {
    a: f64,
    b: f64,
}

impl Substitution for TanhSinh {
    fn node(&self, s: f64) -> Option<(f64, f64)> {
        let u = FRAC_PI_2 * s.sinh();
        let width = self.b - self.a;
        // distance to the nearer endpoint, computed without cancellation
        let gap = width / (1.0 + (2.0 * u.abs()).exp());
        let x = if s < 0.0 { self.a + gap } else { self.b - gap };
        if !(x > self.a && x < self.b) {
            return None;
        }
        let cu = u.cosh();
        let w = width * 0.5 * FRAC_PI_2 * s.cosh() / (cu * cu);
        (w > 0.0 && w.is_finite()).then_some((x, w))
    }
}

struct ExpSinh;

impl Substitution for ExpSinh {
    fn node(&self, s: f64) -> Option<(f64, f64)> {
        let x = (FRAC_PI_2 * s.sinh()).exp();
        let w = FRAC_PI_2 * s.cosh() * x;
        (x > 0.0 && x.is_finite() && w.is_finite()).then_some((x, w))
    }
}

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::IntegrandOverflow { x })
    }
}

/// Level-doubling trapezoidal driver shared by all interval shapes.
fn refine<F, S>(
    f: &F,
    sub: &S,
    cfg: &QuadratureConfig,
    mut history: Option<&mut Vec<LevelEstimate>>,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    S: Substitution,
{
    cfg.validate()?;
    let mut evaluations = 0usize;
    let mut eval_at = |s: f64| -> Result<f64> {
        match sub.node(s) {
            Some((x, w)) => {
                evaluations += 1;
                Ok(w * sample(f, x)?)
            }
            None => Ok(0.0),
        }
    };

    // level 0: h = 1, nodes at integers in [-S_MAX, S_MAX]
    let n0 = S_MAX as i64;
    let mut sum = 0.0;
    for k in -n0..=n0 {
        sum += eval_at(k as f64)?;
    }
    let mut h = 1.0;
    let mut estimate = h * sum;
    let mut error = f64::INFINITY;
    if let Some(hist) = history.as_deref_mut() {
        hist.push(LevelEstimate {
            level: 0,
            value: estimate,
            abs_error_estimate: error,
        });
    }

    let mut converged = false;
    for level in 1..=cfg.max_level {
        h *= 0.5;
        let steps = (S_MAX / h) as i64;
        let mut j = -steps + 1;
        while j < steps {
            sum += eval_at(j as f64 * h)?;
            j += 2;
        }
        let next = h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if let Some(hist) = history.as_deref_mut() {
            hist.push(LevelEstimate {
                level,
                value: estimate,
                abs_error_estimate: error,
            });
        }
        if level >= MIN_LEVEL && error <= cfg.tolerance_for(estimate) {
            converged = true;
            break;
        }
    }

    Ok(QuadratureResult {
        value: estimate,
        abs_error_estimate: error,
        evaluations: evaluations.max(1),
        converged,
    })
}

/// `int_a^b f(x) dx` by tanh-sinh.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    refine(&f, &TanhSinh { a, b }, cfg, None)
}

/// Same as [`integrate_finite`] but also returns every level's estimate.
pub fn integrate_finite_traced<F>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(QuadratureResult, Vec<LevelEstimate>)>
where
    F: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    let mut hist = Vec::new();
    let res = refine(&f, &TanhSinh { a, b }, cfg, Some(&mut hist))?;
    Ok((res, hist))
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!("need finite a < b, got [{a}, {b}]")));
    }
    Ok(())
}

fn check_decay<F: Fn(f64) -> f64>(f: &F, cfg: &QuadratureConfig) -> Result<()> {
    if let Some((x, _)) = ExpSinh.node(S_MAX) {
        let magnitude = sample(f, x)?.abs();
        if magnitude > cfg.abs_tol {
            return Err(Error::DecayViolation { x, magnitude });
        }
    }
    Ok(())
}

/// `int_0^inf f(x) dx` by exp-sinh. The integrand must decay faster than any
/// power; its value at the outermost node is checked against `abs_tol`.
pub fn integrate_semi_infinite<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    check_decay(&f, cfg)?;
    refine(&f, &ExpSinh, cfg, None)
}

pub fn integrate_semi_infinite_traced<F>(
    f: F,
    cfg: &QuadratureConfig,
) -> Result<(QuadratureResult, Vec<LevelEstimate>)>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    check_decay(&f, cfg)?;
    let mut hist = Vec::new();
    let res = refine(&f, &ExpSinh, cfg, Some(&mut hist))?;
    Ok((res, hist))
}

/// `int_{-inf}^{inf} f(x) dx` as two exp-sinh halves.
pub fn integrate_doubly_infinite<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    let right = integrate_semi_infinite(&f, cfg)?;
    let left = integrate_semi_infinite(|x| f(-x), cfg)?;
    Ok(right.plus(left))
}
