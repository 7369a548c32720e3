//! Named batches of identity checks, as run by `besselnu check`.

use std::fmt;
use std::str::FromStr;

use crate::bessel::BesselKind;
use crate::error::{Error, Result};
use crate::identities::{
    apelblat_check, check_reflection, closed_form_check, fd_oracle_check,
    new_integral_closed_check, new_integral_hypergeometric_check, pfq_bessel_check, taylor_check,
    IdentityReport, ReflectionId, ReflectionParams,
};
use crate::oracles::OracleConfig;
use crate::quadrature::QuadratureConfig;

pub const REFLECTION_TOL: f64 = 1e-8;
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const CROSS_CHECK_TOL: f64 = 1e-6;
pub const ZERO_INTEGRAL_TOL: f64 = 1e-12;
pub const TAYLOR_TERMS: u32 = 8;

pub const T_GRID: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];
pub const GENERAL_I_ORDERS: [f64; 4] = [0.3, 0.7, 1.5, 2.5];
pub const GENERAL_K_ORDERS: [f64; 4] = [0.0, 0.5, 1.3, 2.0];
pub const NEW_INTEGRAL_T: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const HYPERGEOMETRIC_NU: [f64; 3] = [1.0 / 3.0, 0.25, 0.7];
pub const HYPERGEOMETRIC_T: [f64; 3] = [0.5, 1.0, 2.0];
pub const FD_NU: [f64; 4] = [0.0, 0.5, 1.0, 2.7];
pub const FD_T: [f64; 3] = [0.5, 2.0, 10.0];
pub const TAYLOR_PAIRS: [(f64, f64); 3] = [(1.0, 1.3), (0.0, 0.25), (2.0, 1.8)];
pub const TAYLOR_T: [f64; 3] = [1.0, 2.0, 5.0];
pub const APELBLAT_NU: [f64; 3] = [0.5, 1.0, 2.0];
pub const APELBLAT_T: [f64; 2] = [1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Reflections,
    ClosedForms,
    Oracle,
    Hypergeometric,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = [
        "all",
        "reflections",
        "closed-forms",
        "oracle",
        "hypergeometric",
    ];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::ClosedForms,
                Suite::Reflections,
                Suite::Hypergeometric,
                Suite::Oracle,
            ],
            other => vec![other],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Reflections => "reflections",
            Suite::ClosedForms => "closed-forms",
            Suite::Oracle => "oracle",
            Suite::Hypergeometric => "hypergeometric",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "reflections" => Ok(Suite::Reflections),
            "closed-forms" => Ok(Suite::ClosedForms),
            "oracle" => Ok(Suite::Oracle),
            "hypergeometric" => Ok(Suite::Hypergeometric),
            other => Err(Error::Domain(format!("unknown suite {other:?}"))),
        }
    }
}

/// One check of a suite, with its default tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Case {
    ClosedForm {
        kind: BesselKind,
        m: i32,
        t: f64,
    },
    NewIntegralClosed {
        m: i32,
        t: f64,
    },
    Reflection {
        id: ReflectionId,
        params: ReflectionParams,
    },
    NewIntegralHypergeometric {
        nu: f64,
        t: f64,
    },
    PfqBessel {
        t: f64,
    },
    FdOracle {
        kind: BesselKind,
        n: u32,
        nu: f64,
        t: f64,
    },
    Taylor {
        kind: BesselKind,
        nu0: f64,
        nu: f64,
        t: f64,
    },
    Apelblat {
        kind: BesselKind,
        nu: f64,
        t: f64,
    },
}

impl Case {
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Case::ClosedForm { .. } => CLOSED_FORM_TOL,
            Case::NewIntegralClosed { m: 0, .. } => ZERO_INTEGRAL_TOL,
            Case::NewIntegralClosed { .. } => CLOSED_FORM_TOL,
            Case::Reflection { .. } => REFLECTION_TOL,
            Case::PfqBessel { .. } => CLOSED_FORM_TOL,
            Case::NewIntegralHypergeometric { .. }
            | Case::FdOracle { .. }
            | Case::Taylor { .. }
            | Case::Apelblat { .. } => CROSS_CHECK_TOL,
        }
    }

    pub fn run(&self, tol: f64, cfg: &QuadratureConfig) -> Result<IdentityReport> {
        match *self {
            Case::ClosedForm { kind, m, t } => closed_form_check(kind, m, t, tol, cfg),
            Case::NewIntegralClosed { m, t } => new_integral_closed_check(m, t, tol, cfg),
            Case::Reflection { id, params } => check_reflection(id, params, tol, cfg),
            Case::NewIntegralHypergeometric { nu, t } => {
                new_integral_hypergeometric_check(nu, t, tol, cfg)
            }
            Case::PfqBessel { t } => pfq_bessel_check(t, tol, cfg),
            Case::FdOracle { kind, n, nu, t } => {
                fd_oracle_check(kind, n, nu, t, tol, &OracleConfig::default(), cfg)
            }
            Case::Taylor { kind, nu0, nu, t } => {
                taylor_check(kind, nu0, nu, t, TAYLOR_TERMS, tol, cfg)
            }
            Case::Apelblat { kind, nu, t } => apelblat_check(kind, nu, t, tol, cfg),
        }
    }
}

pub fn closed_form_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for kind in BesselKind::ALL {
        for m in -4..=4 {
            for t in T_GRID {
                cases.push(Case::ClosedForm { kind, m, t });
            }
        }
    }
    cases
}

pub fn new_integral_closed_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for m in -4..=4 {
        for t in NEW_INTEGRAL_T {
            cases.push(Case::NewIntegralClosed { m, t });
        }
    }
    cases
}

pub fn reflection_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for id in ReflectionId::ALL {
        if id.is_general() {
            let orders = if id == ReflectionId::K {
                GENERAL_K_ORDERS
            } else {
                GENERAL_I_ORDERS
            };
            for n in 0..=4 {
                for mu in orders {
                    for t in T_GRID {
                        cases.push(Case::Reflection {
                            id,
                            params: ReflectionParams::general(n, mu, t),
                        });
                    }
                }
            }
        } else {
            for m in 0..=5 {
                for t in T_GRID {
                    cases.push(Case::Reflection {
                        id,
                        params: ReflectionParams::integer(m, t),
                    });
                }
            }
        }
    }
    cases
}

pub fn hypergeometric_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for t in T_GRID {
        cases.push(Case::PfqBessel { t });
    }
    for nu in HYPERGEOMETRIC_NU {
        for t in HYPERGEOMETRIC_T {
            cases.push(Case::NewIntegralHypergeometric { nu, t });
        }
    }
    cases
}

pub fn fd_oracle_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for kind in BesselKind::ALL {
        for n in [1, 2] {
            for nu in FD_NU {
                for t in FD_T {
                    cases.push(Case::FdOracle { kind, n, nu, t });
                }
            }
        }
    }
    cases
}

pub fn taylor_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for kind in BesselKind::ALL {
        for (nu0, nu) in TAYLOR_PAIRS {
            for t in TAYLOR_T {
                cases.push(Case::Taylor { kind, nu0, nu, t });
            }
        }
    }
    cases
}

pub fn apelblat_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for kind in [BesselKind::J, BesselKind::I] {
        for nu in APELBLAT_NU {
            for t in APELBLAT_T {
                cases.push(Case::Apelblat { kind, nu, t });
            }
        }
    }
    cases
}

/// All cases of `suite`, in report order.
pub fn cases(suite: Suite) -> Vec<Case> {
    let mut out = Vec::new();
    for part in suite.parts() {
        match part {
            Suite::ClosedForms => {
                out.extend(closed_form_cases());
                out.extend(new_integral_closed_cases());
            }
            Suite::Reflections => out.extend(reflection_cases()),
            Suite::Hypergeometric => out.extend(hypergeometric_cases()),
            Suite::Oracle => {
                out.extend(fd_oracle_cases());
                out.extend(taylor_cases());
                out.extend(apelblat_cases());
            }
            Suite::All => unreachable!(),
        }
    }
    out
}

/// Runs `cases` in order, optionally across threads; `tol` overrides each
/// case's default tolerance.
pub fn run_cases(
    cases: &[Case],
    tol: Option<f64>,
    cfg: &QuadratureConfig,
    parallel: bool,
) -> Vec<Result<IdentityReport>> {
    let one = |c: &Case| c.run(tol.unwrap_or_else(|| c.default_tolerance()), cfg);
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return cases.par_iter().map(one).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    cases.iter().map(one).collect()
}

pub fn run_suite(
    suite: Suite,
    tol: Option<f64>,
    cfg: &QuadratureConfig,
    parallel: bool,
) -> Vec<Result<IdentityReport>> {
    run_cases(&cases(suite), tol, cfg, parallel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_counts() {
        assert_eq!(closed_form_cases().len(), 180);
        assert_eq!(reflection_cases().len(), 9 * 30 + 2 * 100);
        assert_eq!(fd_oracle_cases().len(), 96);
        assert_eq!(taylor_cases().len(), 36);
        assert_eq!(apelblat_cases().len(), 12);
        let all = cases(Suite::All).len();
        let parts: usize = ["reflections", "closed-forms", "oracle", "hypergeometric"]
            .iter()
            .map(|s| cases(s.parse().unwrap()).len())
            .sum();
        assert_eq!(all, parts);
    }

    #[test]
    fn names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn order_is_independent_of_threads() {
        let cfg = QuadratureConfig::default();
        let cs = &hypergeometric_cases();
        let a = run_cases(cs, None, &cfg, false);
        let b = run_cases(cs, None, &cfg, true);
        assert_eq!(a, b);
    }

    #[test]
    fn tolerance_override() {
        let cfg = QuadratureConfig::default();
        let r = run_cases(&[Case::PfqBessel { t: 1.0 }], Some(0.0), &cfg, false);
        assert_eq!(r[0].as_ref().unwrap().tolerance, 0.0);
    }
}
