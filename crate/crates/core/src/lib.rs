//! Derivatives of Bessel functions with respect to their order.
//!
//! Values come from integral representations evaluated with
//! double-exponential quadrature. Reflection formulas, finite-sum closed
//! forms and independent oracles are exposed as checkable
//! [`identities::IdentityReport`]s.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bessel;
#[cfg(feature = "cli")]
pub mod cli;
pub mod closed_forms;
pub mod derivatives;
pub mod error;
pub mod gamma;
pub mod identities;
pub mod oracles;
pub mod quadrature;
pub mod suites;

pub use bessel::{bessel, BesselKind, BesselPoint};
pub use derivatives::{derivative, DerivativeRequest};
pub use error::{Error, Result};
pub use quadrature::{QuadratureConfig, QuadratureResult};
