//! `besselnu` command line: `eval`, `check` and `table`.
//!
//! Exit codes: 0 success, 1 domain or evaluation error (or a failed check),
//! 2 non-converged quadrature, 64 usage error, 73 output file not writable.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bessel::{check_domain, BesselKind};
use crate::derivatives::{derivative, DerivativeRequest, N_MAX};
use crate::error::Error;
use crate::identities::IdentityReport;
use crate::quadrature::{QuadratureConfig, QuadratureResult, MAX_LEVEL_LIMIT};
use crate::suites::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_CANT_CREATE: i32 = 73;

pub const MAX_LEVEL_ENV: &str = "BESSELNU_MAX_LEVEL";
const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "besselnu",
    version,
    about = "Order derivatives of Bessel functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate d^n/dnu^n of J, Y, I or K at one point.
    Eval {
        #[arg(long, value_parser = parse_kind)]
        kind: BesselKind,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long)]
        t: f64,
        /// Quadrature tolerance (absolute and relative).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a suite of identity checks.
    Check {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        /// Pass threshold on the relative residual, replacing the suite defaults.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Evaluate on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Tabulate derivatives over a grid, e.g. `kind=J,Y;n=0,1;nu=-2:2:0.5;t=0.5,1`.
    Table {
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn parse_kind(s: &str) -> Result<BesselKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
        .map_err(|_| format!("expected one of {}", Suite::NAMES.join(", ")))
}

/// Grid of `table` rows, iterated kinds -> n -> nu -> t.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationGrid {
    pub kinds: Vec<BesselKind>,
    pub n_values: Vec<u32>,
    pub nu_values: Vec<f64>,
    pub t_values: Vec<f64>,
}

impl EvaluationGrid {
    pub fn len(&self) -> usize {
        self.kinds.len() * self.n_values.len() * self.nu_values.len() * self.t_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<DerivativeRequest> {
        let mut out = Vec::with_capacity(self.len());
        for &kind in &self.kinds {
            for &n in &self.n_values {
                for &nu in &self.nu_values {
                    for &t in &self.t_values {
                        out.push(DerivativeRequest { kind, n, nu, t });
                    }
                }
            }
        }
        out
    }

    /// Checks every axis value against the evaluation domain.
    pub fn validate(&self) -> Result<(), Error> {
        if let Some(&n) = self.n_values.iter().find(|&&n| n > N_MAX) {
            return Err(Error::Range(format!("n must be <= {N_MAX}, got {n}")));
        }
        for &nu in &self.nu_values {
            check_domain(nu, 1.0)?;
        }
        for &t in &self.t_values {
            check_domain(0.0, t)?;
        }
        Ok(())
    }
}

/// Parses `key=list;key=list;...` with keys `kind`, `n`, `nu`, `t`. Lists
/// are comma separated; `a:b:step` expands to `a, a+step, ...` up to `b`
/// inclusive (within `1e-12 step`).
pub fn parse_grid(spec: &str) -> Result<EvaluationGrid, String> {
    let mut kinds = None;
    let mut n_values = None;
    let mut nu_values = None;
    let mut t_values = None;
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, list) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=values, got {part:?}"))?;
        let key = key.trim();
        let slot_taken = match key {
            "kind" => kinds.replace(parse_list(list, parse_kind)?).is_some(),
            "n" => n_values
                .replace(parse_list(list, |s| {
                    s.parse::<u32>().map_err(|e| format!("n {s:?}: {e}"))
                })?)
                .is_some(),
            "nu" => nu_values.replace(parse_reals(list)?).is_some(),
            "t" => t_values.replace(parse_reals(list)?).is_some(),
            other => return Err(format!("unknown grid key {other:?}")),
        };
        if slot_taken {
            return Err(format!("grid key {key:?} given twice"));
        }
    }
    let grid = EvaluationGrid {
        kinds: kinds.ok_or("grid is missing kind=")?,
        n_values: n_values.ok_or("grid is missing n=")?,
        nu_values: nu_values.ok_or("grid is missing nu=")?,
        t_values: t_values.ok_or("grid is missing t=")?,
    };
    if grid.len() > MAX_GRID_POINTS {
        return Err(format!("grid has more than {MAX_GRID_POINTS} points"));
    }
    Ok(grid)
}

fn parse_list<T>(list: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err("empty value list".into());
    }
    items.into_iter().map(item).collect()
}

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if !v.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(v)
}

fn parse_reals(list: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in parse_list(list, |s| Ok(s.to_string()))? {
        let fields: Vec<&str> = item.split(':').collect();
        match fields.as_slice() {
            [v] => out.push(parse_real(v)?),
            [a, b, step] => {
                let (a, b, step) = (parse_real(a)?, parse_real(b)?, parse_real(step)?);
                if !(step > 0.0) {
                    return Err(format!("range step must be > 0 in {item:?}"));
                }
                if b < a {
                    return Err(format!("empty range {item:?}"));
                }
                let count = ((b - a) / step + 1e-12).floor();
                if count >= MAX_GRID_POINTS as f64 {
                    return Err(format!("range {item:?} is too long"));
                }
                out.extend((0..=count as usize).map(|i| a + i as f64 * step));
            }
            _ => return Err(format!("expected a value or a:b:step, got {item:?}")),
        }
    }
    Ok(out)
}

/// 17 significant digits.
fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Serialize)]
struct EvalRecord {
    kind: BesselKind,
    n: u32,
    nu: f64,
    t: f64,
    value: f64,
    err_estimate: f64,
    evaluations: usize,
    converged: bool,
}

impl EvalRecord {
    fn new(req: &DerivativeRequest, r: &QuadratureResult) -> Self {
        Self {
            kind: req.kind,
            n: req.n,
            nu: req.nu,
            t: req.t,
            value: r.value,
            err_estimate: r.abs_error_estimate,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }

    fn csv_fields(&self) -> [String; 6] {
        [
            self.kind.to_string(),
            self.n.to_string(),
            fmt_real(self.nu),
            fmt_real(self.t),
            fmt_real(self.value),
            fmt_real(self.err_estimate),
        ]
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    kind: BesselKind,
    n: u32,
    nu: f64,
    t: f64,
    value: f64,
    err_estimate: f64,
    converged: bool,
}

const REPORT_HEADER: &str =
    "identity_id,kind,order,base_order,n,t,lhs,rhs,abs_residual,rel_residual,tolerance,pass";

fn report_csv(r: &IdentityReport) -> String {
    let opt_real = |x: Option<f64>| x.map(fmt_real).unwrap_or_default();
    [
        r.identity_id.clone(),
        r.inputs.kind.map(|k| k.to_string()).unwrap_or_default(),
        fmt_real(r.inputs.order),
        opt_real(r.inputs.base_order),
        r.inputs.n.map(|n| n.to_string()).unwrap_or_default(),
        fmt_real(r.inputs.t),
        fmt_real(r.lhs),
        fmt_real(r.rhs),
        fmt_real(r.abs_residual),
        fmt_real(r.rel_residual),
        fmt_real(r.tolerance),
        r.pass.to_string(),
    ]
    .join(",")
}

fn quadrature_config(
    env_max_level: Option<&str>,
    tol: Option<f64>,
) -> Result<QuadratureConfig, String> {
    let mut cfg = QuadratureConfig::default();
    if let Some(raw) = env_max_level {
        let level: u32 = raw.trim().parse().map_err(|_| {
            format!("{MAX_LEVEL_ENV} must be an integer in 1..={MAX_LEVEL_LIMIT}, got {raw:?}")
        })?;
        if level == 0 || level > MAX_LEVEL_LIMIT {
            return Err(format!(
                "{MAX_LEVEL_ENV} must be in 1..={MAX_LEVEL_LIMIT}, got {level}"
            ));
        }
        cfg.max_level = level;
    }
    if let Some(tol) = tol {
        cfg.abs_tol = tol;
        cfg.rel_tol = tol;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(
    args: I,
    env_max_level: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval {
            kind,
            n,
            nu,
            t,
            tol,
            format,
        } => {
            if matches!(tol, Some(x) if !(x > 0.0)) {
                return usage(err, "--tol must be > 0");
            }
            match quadrature_config(env_max_level, tol) {
                Ok(cfg) => cmd_eval(DerivativeRequest { kind, n, nu, t }, &cfg, format, out, err),
                Err(msg) => return usage(err, &msg),
            }
        }
        Command::Check {
            suite,
            tol,
            format,
            sequential,
        } => {
            if matches!(tol, Some(x) if !(x >= 0.0)) {
                return usage(err, "--tol must be >= 0");
            }
            match quadrature_config(env_max_level, None) {
                Ok(cfg) => cmd_check(suite, tol, !sequential, &cfg, format, out, err),
                Err(msg) => return usage(err, &msg),
            }
        }
        Command::Table {
            grid,
            out: path,
            format,
        } => {
            let grid = match parse_grid(&grid) {
                Ok(g) => g,
                Err(msg) => return usage(err, &format!("invalid --grid: {msg}")),
            };
            match quadrature_config(env_max_level, None) {
                Ok(cfg) => cmd_table(&grid, &path, &cfg, format, err),
                Err(msg) => return usage(err, &msg),
            }
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "besselnu: output error: {e}");
            EXIT_FAILURE
        }
    }
}

fn usage(err: &mut dyn Write, msg: &str) -> i32 {
    let _ = writeln!(err, "besselnu: {msg}");
    EXIT_USAGE
}

fn cmd_eval(
    req: DerivativeRequest,
    cfg: &QuadratureConfig,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let r = match req.validate().and_then(|_| derivative(&req, cfg)) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "besselnu: {e}")?;
            return Ok(EXIT_FAILURE);
        }
    };
    let rec = EvalRecord::new(&req, &r);
    match format {
        Format::Csv => {
            writeln!(out, "kind,n,nu,t,value,err_estimate,evaluations,converged")?;
            writeln!(
                out,
                "{},{},{}",
                rec.csv_fields().join(","),
                rec.evaluations,
                rec.converged
            )?;
        }
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&rec).map_err(io::Error::other)?
        )?,
    }
    if r.converged {
        Ok(EXIT_OK)
    } else {
        writeln!(
            err,
            "besselnu: quadrature did not converge (error estimate {:e})",
            r.abs_error_estimate
        )?;
        Ok(EXIT_NOT_CONVERGED)
    }
}

fn cmd_check(
    suite: Suite,
    tol: Option<f64>,
    parallel: bool,
    cfg: &QuadratureConfig,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let results = run_suite(suite, tol, cfg, parallel);
    let mut reports = Vec::with_capacity(results.len());
    let mut errors = 0;
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => {
                errors += 1;
                writeln!(err, "besselnu: check failed to evaluate: {e}")?;
            }
        }
    }
    match format {
        Format::Csv => {
            writeln!(out, "{REPORT_HEADER}")?;
            for r in &reports {
                writeln!(out, "{}", report_csv(r))?;
            }
        }
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&reports).map_err(io::Error::other)?
        )?,
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let max_rel = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    writeln!(
        err,
        "check {suite}: {passed}/{} passed, {errors} errors, max rel_residual {max_rel:.3e}",
        reports.len() + errors
    )?;
    Ok(if errors == 0 && passed == reports.len() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn cmd_table(
    grid: &EvaluationGrid,
    path: &Path,
    cfg: &QuadratureConfig,
    format: Format,
    err: &mut dyn Write,
) -> io::Result<i32> {
    if let Err(e) = grid.validate() {
        writeln!(err, "besselnu: {e}")?;
        return Ok(EXIT_FAILURE);
    }
    let points = grid.points();
    let eval_one = |req: &DerivativeRequest| derivative(req, cfg);
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        points.par_iter().map(eval_one).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = points.iter().map(eval_one).collect();

    let mut rows = Vec::with_capacity(points.len());
    for (req, r) in points.iter().zip(results) {
        match r {
            Ok(r) => rows.push(TableRow {
                kind: req.kind,
                n: req.n,
                nu: req.nu,
                t: req.t,
                value: r.value,
                err_estimate: r.abs_error_estimate,
                converged: r.converged,
            }),
            Err(e) => {
                writeln!(
                    err,
                    "besselnu: {} n={} nu={} t={}: {e}",
                    req.kind, req.n, req.nu, req.t
                )?;
                return Ok(EXIT_FAILURE);
            }
        }
    }
    let mut body = Vec::new();
    match format {
        Format::Csv => {
            writeln!(body, "kind,n,nu,t,value,err_estimate,converged")?;
            for r in &rows {
                writeln!(
                    body,
                    "{},{},{},{},{},{},{}",
                    r.kind,
                    r.n,
                    fmt_real(r.nu),
                    fmt_real(r.t),
                    fmt_real(r.value),
                    fmt_real(r.err_estimate),
                    r.converged
                )?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut body, &rows).map_err(io::Error::other)?;
            writeln!(body)?;
        }
    }
    if let Err(e) = write_atomically(path, &body) {
        writeln!(err, "besselnu: cannot write {}: {e}", path.display())?;
        return Ok(EXIT_CANT_CREATE);
    }
    let stalled = rows.iter().filter(|r| !r.converged).count();
    if stalled > 0 {
        writeln!(
            err,
            "besselnu: {stalled} of {} rows did not converge",
            rows.len()
        )?;
        return Ok(EXIT_NOT_CONVERGED);
    }
    Ok(EXIT_OK)
}

fn write_atomically(path: &Path, body: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if path.is_dir() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            "path is a directory",
        ));
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    fs::metadata(path).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["besselnu"];
        full.extend_from_slice(args);
        let code = run(full, env, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("kind=J,Y;n=0,1,2;nu=-2:2:0.5;t=0.5,1,2").unwrap();
        assert_eq!(g.kinds, vec![BesselKind::J, BesselKind::Y]);
        assert_eq!(g.n_values, vec![0, 1, 2]);
        assert_eq!(g.nu_values.len(), 9);
        assert_eq!(*g.nu_values.last().unwrap(), 2.0);
        assert_eq!(g.len(), 2 * 3 * 9 * 3);
        let g = parse_grid("kind=K;n=0;nu=0:0.3:0.1;t=1").unwrap();
        assert_eq!(g.nu_values.len(), 4);
    }

    #[test]
    fn grid_errors() {
        for bad in [
            "kind=J;n=0;nu=;t=1",
            "kind=J;n=0;t=1",
            "kind=H;n=0;nu=0;t=1",
            "kind=J;n=0;nu=1:0:0.1;t=1",
            "kind=J;n=0;nu=0:1:0;t=1",
            "kind=J;n=0;nu=0;t=1;t=2",
            "kind=J;n=0;nu=x;t=1",
            "kind=J;n=-1;nu=0;t=1",
            "kind=J;n=0;nu=0;t=1;z=3",
        ] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn env_level() {
        assert_eq!(quadrature_config(Some("10"), None).unwrap().max_level, 10);
        assert!(quadrature_config(Some("17"), None).is_err());
        assert!(quadrature_config(Some("zero"), None).is_err());
        assert!(quadrature_config(Some("0"), None).is_err());
    }

    #[test]
    fn eval_k_first_derivative_at_zero() {
        let (code, out, _) = run_str(
            &["eval", "--kind", "K", "--n", "1", "--nu", "0", "--t", "1"],
            None,
        );
        assert_eq!(code, 0);
        let row = out.lines().nth(1).unwrap();
        let value: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert!(value.abs() < 1e-12);
    }

    #[test]
    fn eval_exit_codes() {
        assert_eq!(
            run_str(&["eval", "--kind", "J", "--nu", "0", "--t", "0"], None).0,
            1
        );
        assert_eq!(
            run_str(
                &["eval", "--kind", "J", "--n", "9", "--nu", "0", "--t", "1"],
                None
            )
            .0,
            1
        );
        assert_eq!(
            run_str(&["eval", "--kind", "Q", "--nu", "0", "--t", "1"], None).0,
            64
        );
        assert_eq!(run_str(&["eval", "--kind", "J", "--t", "1"], None).0, 64);
        assert_eq!(
            run_str(
                &["eval", "--kind", "J", "--nu", "0", "--t", "1", "--tol", "-1"],
                None
            )
            .0,
            64
        );
        assert_eq!(
            run_str(
                &["eval", "--kind", "J", "--nu", "0", "--t", "1"],
                Some("99")
            )
            .0,
            64
        );
        assert_eq!(run_str(&["frobnicate"], None).0, 64);
        assert_eq!(run_str(&["--help"], None).0, 0);
    }

    #[test]
    fn eval_reports_non_convergence() {
        let (code, out, err) = run_str(
            &[
                "eval", "--kind", "Y", "--n", "3", "--nu", "1.5", "--t", "80",
            ],
            Some("3"),
        );
        assert_eq!(code, 2, "{out}{err}");
        assert!(out.lines().nth(1).unwrap().ends_with("false"));
    }

    #[test]
    fn eval_json() {
        let (code, out, _) = run_str(
            &[
                "eval",
                "--kind",
                "J",
                "--nu",
                "0.5",
                "--t",
                "1.5707963267948966",
                "--format",
                "json",
            ],
            None,
        );
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - std::f64::consts::FRAC_2_PI).abs() < 1e-12);
        assert_eq!(v["kind"], "J");
        assert_eq!(v["converged"], true);
    }

    #[test]
    fn negative_nu_parses() {
        let (code, _, err) = run_str(&["eval", "--kind", "I", "--nu", "-1.5", "--t", "1"], None);
        assert_eq!(code, 0, "{err}");
    }
}
