//! End-to-end acceptance criteria. Prints one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use besselnu::bessel::BesselKind;
use besselnu::derivatives::{derivative, DerivativeRequest};
use besselnu::identities::IdentityReport;
use besselnu::quadrature::QuadratureConfig;
use besselnu::suites::{self, Case, Suite};

const CLOSED_FORM_TOL: f64 = 1e-9;
const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(10);
const REFLECTION_TOL: f64 = 1e-8;
const ZERO_RHS_ABS_TOL: f64 = 1e-12;
const NEW_INTEGRAL_CLOSED_TOL: f64 = 1e-9;
const NEW_INTEGRAL_HYPERGEOMETRIC_TOL: f64 = 1e-6;
const TAYLOR_TOL: f64 = 1e-6;
const ORACLE_ABS_TOL: f64 = 1e-6;
const APELBLAT_TOL: f64 = 1e-6;
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const EVALUATION_BUDGET: usize = 50_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(cases: &[Case], tol: f64) -> Vec<IdentityReport> {
    suites::run_cases(cases, Some(tol), &QuadratureConfig::default(), false)
        .into_iter()
        .map(|r| r.expect("identity evaluation failed"))
        .collect()
}

fn summarize(reports: &[IdentityReport]) -> (usize, f64) {
    let passed = reports.iter().filter(|r| r.pass).count();
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    (passed, worst)
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    let reports = run(&suites::closed_form_cases(), CLOSED_FORM_TOL);
    let elapsed = start.elapsed();
    let (passed, worst) = summarize(&reports);
    Outcome {
        pass: reports.len() == 180 && passed == 180 && elapsed <= CLOSED_FORM_BUDGET,
        detail: format!(
            "{passed}/{} within {CLOSED_FORM_TOL:e}, worst {worst:.2e}, {elapsed:.2?}",
            reports.len()
        ),
    }
}

fn reflections() -> Outcome {
    let reports = run(&suites::reflection_cases(), REFLECTION_TOL);
    let (passed, worst) = summarize(&reports);
    let zero_rhs: Vec<_> = reports
        .iter()
        .filter(|r| r.identity_id == "refl_K")
        .collect();
    let worst_zero = zero_rhs.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
    Outcome {
        pass: passed == reports.len() && worst_zero <= ZERO_RHS_ABS_TOL,
        detail: format!(
            "{passed}/{} within {REFLECTION_TOL:e}, worst {worst:.2e}; refl_K worst |lhs| {worst_zero:.2e}",
            reports.len()
        ),
    }
}

fn new_integral() -> Outcome {
    let closed: Vec<Case> = suites::new_integral_closed_cases()
        .into_iter()
        .filter(|c| !matches!(c, Case::NewIntegralClosed { m: 0, .. }))
        .collect();
    let closed = run(&closed, NEW_INTEGRAL_CLOSED_TOL);
    let hyper: Vec<Case> = suites::HYPERGEOMETRIC_NU
        .iter()
        .flat_map(|&nu| {
            suites::HYPERGEOMETRIC_T
                .iter()
                .map(move |&t| Case::NewIntegralHypergeometric { nu, t })
        })
        .collect();
    let hyper = run(&hyper, NEW_INTEGRAL_HYPERGEOMETRIC_TOL);
    let (pc, wc) = summarize(&closed);
    let (ph, wh) = summarize(&hyper);
    Outcome {
        pass: closed.len() == 32 && pc == 32 && hyper.len() == 9 && ph == 9,
        detail: format!(
            "closed {pc}/{} worst {wc:.2e}; hypergeometric {ph}/{} worst {wh:.2e}",
            closed.len(),
            hyper.len()
        ),
    }
}

fn taylor() -> Outcome {
    let reports = run(&suites::taylor_cases(), TAYLOR_TOL);
    let (passed, worst) = summarize(&reports);
    Outcome {
        pass: reports.len() == 36 && passed == 36,
        detail: format!(
            "{passed}/{} within {TAYLOR_TOL:e}, worst {worst:.2e}",
            reports.len()
        ),
    }
}

fn oracle() -> Outcome {
    let reports = run(&suites::fd_oracle_cases(), ORACLE_ABS_TOL);
    let worst = reports.iter().map(|r| r.abs_residual).fold(0.0, f64::max);
    let passed = reports
        .iter()
        .filter(|r| r.abs_residual <= ORACLE_ABS_TOL)
        .count();
    Outcome {
        pass: passed == reports.len(),
        detail: format!(
            "{passed}/{} within {ORACLE_ABS_TOL:e} absolute, worst {worst:.2e}",
            reports.len()
        ),
    }
}

fn apelblat() -> Outcome {
    let reports = run(&suites::apelblat_cases(), APELBLAT_TOL);
    let (passed, worst) = summarize(&reports);
    Outcome {
        pass: reports.len() == 12 && passed == 12,
        detail: format!(
            "{passed}/{} within {APELBLAT_TOL:e}, worst {worst:.2e}",
            reports.len()
        ),
    }
}

fn performance() -> Outcome {
    let cfg = QuadratureConfig::default();
    let start = Instant::now();
    let results = suites::run_suite(Suite::All, None, &cfg, false);
    let elapsed = start.elapsed();
    let all_ok = results.iter().all(|r| r.as_ref().is_ok_and(|r| r.pass));

    let mut most = 0;
    let mut count = 0;
    for kind in BesselKind::ALL {
        for n in 0..=8 {
            for nu in (-8..=8).map(|k| 0.5 * f64::from(k)) {
                for t in [0.5, 1.0, 2.0, 5.0, 10.0] {
                    let r =
                        derivative(&DerivativeRequest::new(kind, n, nu, t).unwrap(), &cfg).unwrap();
                    most = most.max(r.evaluations);
                    count += 1;
                }
            }
        }
    }
    Outcome {
        pass: all_ok && elapsed <= SUITE_BUDGET && most <= EVALUATION_BUDGET,
        detail: format!(
            "suite all single-threaded in {elapsed:.2?}; at most {most} integrand evaluations over {count} derivatives"
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 7] = [
        ("1 closed-form agreement", closed_forms),
        ("2 reflection suite", reflections),
        ("3 new integral", new_integral),
        ("4 Taylor consistency", taylor),
        ("5 oracle agreement", oracle),
        ("6 product-integral cross-check", apelblat),
        ("7 performance", performance),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let o = check();
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
