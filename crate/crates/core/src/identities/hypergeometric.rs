//! Generalized hypergeometric series and the `2F3`/`3F4` form of
//! `int_{-inf}^{inf} x e^{nu x - t cosh x} dx` for `2 nu` not an integer.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bessel::{check_domain, eval, BesselKind};
use crate::error::{Error, Result};
use crate::gamma::{cos_pi, digamma, gamma, sin_pi};
use crate::quadrature::QuadratureConfig;

pub const PFQ_TERM_BUDGET: usize = 100_000;
pub const PFQ_ARGUMENT_MAX: f64 = 400.0;
/// Minimum distance of `2 nu` from the integers accepted by
/// [`new_integral_hypergeometric`].
pub const TWO_NU_GUARD: f64 = 0.05;

const STOP_RATIO: f64 = 1e-16;
const STOP_RUN: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub argument: f64,
}

impl HypergeometricSpec {
    pub fn new(upper: Vec<f64>, lower: Vec<f64>, argument: f64) -> Result<Self> {
        let spec = Self {
            upper,
            lower,
            argument,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&b) = self.lower.iter().find(|&&b| b <= 0.0 && b == b.floor()) {
            return Err(Error::ParameterPole(b));
        }
        if self.upper.len() > self.lower.len() {
            return Err(Error::Domain(format!(
                "{}F{} does not converge everywhere; need p <= q",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if !(self.argument.abs() <= PFQ_ARGUMENT_MAX) {
            return Err(Error::Domain(format!(
                "|argument| must be <= {PFQ_ARGUMENT_MAX}, got {}",
                self.argument
            )));
        }
        Ok(())
    }

    /// Ratio `term_{k+1} / term_k`.
    fn ratio(&self, k: usize) -> f64 {
        let kf = k as f64;
        let num: f64 = self.upper.iter().map(|a| a + kf).product();
        let den: f64 = self.lower.iter().map(|b| b + kf).product();
        num / den * self.argument / (kf + 1.0)
    }
}

/// Sum of `prod (a)_k / prod (b)_k z^k / k!` by term-ratio recurrence.
pub fn pfq(spec: &HypergeometricSpec) -> Result<f64> {
    spec.validate()?;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small_run = 0;
    for k in 0..PFQ_TERM_BUDGET {
        term *= spec.ratio(k);
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= STOP_RATIO * sum.abs() {
            small_run += 1;
            if small_run == STOP_RUN {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::SeriesNonConvergence {
        budget: PFQ_TERM_BUDGET,
    })
}

/// The first `count` terms of the series (term 0 is 1).
pub fn pfq_terms(spec: &HypergeometricSpec, count: usize) -> Result<Vec<f64>> {
    spec.validate()?;
    let mut terms = Vec::with_capacity(count);
    let mut term = 1.0;
    for k in 0..count {
        terms.push(term);
        term *= spec.ratio(k);
    }
    Ok(terms)
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// `int_{-inf}^{inf} x e^{nu x - t cosh x} dx` from its hypergeometric
/// reduction, with the `z` of that form taken to be `t`:
///
/// ```text
/// pi csc(pi nu) { pi cot(pi nu) I_nu
///     - [I_nu + I_-nu] [ t^2/(4(1-nu^2)) 3F4(1,1,3/2; 2,2,2-nu,2+nu; t^2)
///                        + log(t/2) - psi(nu) - 1/(2nu) ] }
/// + 1/2 { I_-nu Gamma(-nu)^2 (t/2)^{2nu} 2F3(nu, 1/2+nu; 1+nu, 1+nu, 1+2nu; t^2)
///       - I_nu Gamma(nu)^2 (t/2)^{-2nu} 2F3(-nu, 1/2-nu; 1-nu, 1-nu, 1-2nu; t^2) }
/// ```
pub fn new_integral_hypergeometric(nu: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_domain(nu, t)?;
    if distance_to_integer(2.0 * nu) < TWO_NU_GUARD {
        return Err(Error::NearIntegerTwoNu {
            nu,
            guard: TWO_NU_GUARD,
        });
    }
    let z2 = t * t;
    let i_pos = eval(BesselKind::I, nu, t, cfg)?;
    let i_neg = eval(BesselKind::I, -nu, t, cfg)?;
    let s = sin_pi(nu);
    let c = cos_pi(nu);
    let csc = 1.0 / s;
    let cot = c / s;

    let f34 = pfq(&HypergeometricSpec::new(
        vec![1.0, 1.0, 1.5],
        vec![2.0, 2.0, 2.0 - nu, 2.0 + nu],
        z2,
    )?)?;
    let bracket =
        z2 / (4.0 * (1.0 - nu * nu)) * f34 + (t / 2.0).ln() - digamma(nu)? - 1.0 / (2.0 * nu);
    let first = PI * csc * (PI * cot * i_pos - (i_pos + i_neg) * bracket);

    let f23_pos = pfq(&HypergeometricSpec::new(
        vec![nu, 0.5 + nu],
        vec![1.0 + nu, 1.0 + nu, 1.0 + 2.0 * nu],
        z2,
    )?)?;
    let f23_neg = pfq(&HypergeometricSpec::new(
        vec![-nu, 0.5 - nu],
        vec![1.0 - nu, 1.0 - nu, 1.0 - 2.0 * nu],
        z2,
    )?)?;
    let g_neg = gamma(-nu)?;
    let g_pos = gamma(nu)?;
    let half = t / 2.0;
    let second = 0.5
        * (i_neg * g_neg * g_neg * half.powf(2.0 * nu) * f23_pos
            - i_pos * g_pos * g_pos * half.powf(-2.0 * nu) * f23_neg);

    Ok(first + second)
}
