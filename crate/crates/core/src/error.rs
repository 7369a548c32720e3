use thiserror::Error;

/// Errors raised by the evaluation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the supported `(nu, t)` box or otherwise invalid.
    #[error("domain: {0}")]
    Domain(String),

    /// Derivative order or similar count out of range.
    #[error("range: {0}")]
    Range(String),

    #[error("pole: gamma-type function evaluated at non-positive integer {0}")]
    Pole(f64),

    #[error("integrand overflow: non-finite sample at x = {x}")]
    IntegrandOverflow { x: f64 },

    #[error("decay violation: |f| = {magnitude:e} at the largest node x = {x:e}")]
    DecayViolation { x: f64, magnitude: f64 },

    /// A quadrature did not reach its tolerance and the caller needs a value it can trust.
    #[error("quadrature did not converge (error estimate {estimate:e})")]
    NotConverged { estimate: f64 },

    #[error("non-convergence: series term budget of {budget} exhausted")]
    SeriesNonConvergence { budget: usize },

    #[error("parameter pole: lower parameter {0} is a non-positive integer")]
    ParameterPole(f64),

    #[error("near-integer 2nu: 2*{nu} is within {guard} of an integer")]
    NearIntegerTwoNu { nu: f64, guard: f64 },

    #[error("endpoint non-convergence: {0}")]
    EndpointNonConvergence(String),

    #[error("conditioning: {0}")]
    Conditioning(String),
}

pub type Result<T> = std::result::Result<T, Error>;
