//! Browser bindings: a derivative curve over the order, a reflection
//! residual, and the `x e^{nu x - t cosh x}` integral two ways. Every
//! export returns a JSON string.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use serde::Serialize;
use wasm_bindgen::prelude::*;

use besselnu::bessel::BesselKind;
use besselnu::closed_forms::new_integral_closed;
use besselnu::derivatives::{derivative, DerivativeRequest};
use besselnu::identities::{
    check_reflection, new_integral_hypergeometric, ReflectionId, ReflectionParams,
};
use besselnu::quadrature::{integrate_doubly_infinite, QuadratureConfig};

const MAX_POINTS: u32 = 2001;

#[derive(Serialize)]
struct Curve {
    kind: BesselKind,
    n: u32,
    t: f64,
    nu: Vec<f64>,
    value: Vec<f64>,
    err_estimate: Vec<f64>,
    converged: Vec<bool>,
}

#[derive(Serialize)]
struct IntegralComparison {
    nu: f64,
    t: f64,
    quadrature: f64,
    closed_form: f64,
    method: &'static str,
    abs_difference: f64,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn curve_json(
    kind: &str,
    n: u32,
    t: f64,
    nu_min: f64,
    nu_max: f64,
    points: u32,
) -> Result<String, String> {
    let kind: BesselKind = kind.parse().map_err(|e: besselnu::Error| e.to_string())?;
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_POINTS}"));
    }
    if !(nu_max > nu_min) {
        return Err("nu_max must exceed nu_min".into());
    }
    let cfg = QuadratureConfig::default();
    let step = (nu_max - nu_min) / f64::from(points - 1);
    let mut curve = Curve {
        kind,
        n,
        t,
        nu: Vec::new(),
        value: Vec::new(),
        err_estimate: Vec::new(),
        converged: Vec::new(),
    };
    for i in 0..points {
        let nu = nu_min + f64::from(i) * step;
        let req = DerivativeRequest::new(kind, n, nu, t).map_err(|e| e.to_string())?;
        let r = derivative(&req, &cfg).map_err(|e| e.to_string())?;
        curve.nu.push(nu);
        curve.value.push(r.value);
        curve.err_estimate.push(r.abs_error_estimate);
        curve.converged.push(r.converged);
    }
    to_json(&curve)
}

pub fn reflection_json(id: &str, order: f64, n: u32, t: f64, tol: f64) -> Result<String, String> {
    let id: ReflectionId = id.parse().map_err(|e: besselnu::Error| e.to_string())?;
    let params = if id.is_general() {
        ReflectionParams::general(n, order, t)
    } else {
        ReflectionParams { order, t, n: 0 }
    };
    let report = check_reflection(id, params, tol, &QuadratureConfig::default())
        .map_err(|e| e.to_string())?;
    to_json(&report)
}

pub fn new_integral_json(nu: f64, t: f64) -> Result<String, String> {
    let cfg = QuadratureConfig::default();
    besselnu::bessel::check_domain(nu, t).map_err(|e| e.to_string())?;
    let quadrature = integrate_doubly_infinite(|x| x * (nu * x - t * x.cosh()).exp(), &cfg)
        .map_err(|e| e.to_string())?
        .value;
    let (closed_form, method) = if nu == nu.round() {
        (
            new_integral_closed(nu as i32, t, &cfg).map_err(|e| e.to_string())?,
            "finite sum",
        )
    } else {
        (
            new_integral_hypergeometric(nu, t, &cfg).map_err(|e| e.to_string())?,
            "hypergeometric",
        )
    };
    to_json(&IntegralComparison {
        nu,
        t,
        quadrature,
        closed_form,
        method,
        abs_difference: (quadrature - closed_form).abs(),
    })
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// `d^n/dnu^n` of `kind` at `t` on `points` evenly spaced orders.
#[wasm_bindgen(js_name = derivativeCurve)]
pub fn derivative_curve(
    kind: &str,
    n: u32,
    t: f64,
    nu_min: f64,
    nu_max: f64,
    points: u32,
) -> Result<String, JsValue> {
    js(curve_json(kind, n, t, nu_min, nu_max, points))
}

/// Both sides of a reflection formula; `n` is used by `refl_I_general` and `refl_K`.
#[wasm_bindgen(js_name = reflectionCheck)]
pub fn reflection_check(id: &str, order: f64, n: u32, t: f64, tol: f64) -> Result<String, JsValue> {
    js(reflection_json(id, order, n, t, tol))
}

/// The integral by quadrature next to its finite-sum (integer `nu`) or
/// hypergeometric form.
#[wasm_bindgen(js_name = newIntegral)]
pub fn new_integral(nu: f64, t: f64) -> Result<String, JsValue> {
    js(new_integral_json(nu, t))
}
