//! One function per subcommand. Each builds a configuration, calls the
//! library and packs the result into a [`ReportRecord`].

use clap::Args;
use nearto::analysis::{self, bounds_report, exact_infinity_norm, rowsum_report, sign_pattern, trace_inverse};
use nearto::bvp::{default_initial_guess, solve_fixed_point, BvpProblem, Nonlinearity, DEFAULT_MAX_ITER, DEFAULT_TOL};
use nearto::experiments::{reproduce, Reproduction, TableId};
use nearto::inverse::scaled_inverse_entry;
use nearto::params::singular_corners;
use nearto::{assemble_inverse, is_singular, near_toeplitz_inverse_entry, Error, MatrixConfig, Result};
use serde_json::json;

use crate::report::{scalar_text, to_value, ReportRecord};
use crate::MatrixArgs;

#[derive(Args)]
pub struct BvpArgs {
    #[command(flatten)]
    pub m: MatrixArgs,
    /// Domain length; the grid spacing is length / n
    #[arg(long)]
    pub length: f64,
    /// Coefficient of the nonlinearity, decimal or p/q
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, value_parser = parse_nonlinearity)]
    pub nonlinearity: Nonlinearity,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub bc_left: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub bc_right: f64,
    /// Lower end of the assumed iterate range (for the Lipschitz constant)
    #[arg(long, allow_hyphen_values = true, requires = "u_max")]
    pub u_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "u_min")]
    pub u_max: Option<f64>,
}

pub fn parse_rational(s: &str) -> std::result::Result<f64, String> {
    let bad = || format!("expected a number or p/q, got '{s}'");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn parse_nonlinearity(s: &str) -> std::result::Result<Nonlinearity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn config(m: &MatrixArgs) -> Result<MatrixConfig> {
    MatrixConfig::with_scale(m.n, m.b, m.btilde, m.chat)
}

fn record(command: &str, m: &MatrixArgs) -> ReportRecord {
    ReportRecord::new(command).input("n", m.n).input("b", m.b).input("btilde", m.btilde).input("chat", m.chat)
}

pub fn entry(m: &MatrixArgs, i: usize, j: usize) -> Result<ReportRecord> {
    let cfg = config(m)?;
    Ok(record("entry", m)
        .input("i", i)
        .input("j", j)
        .output("value", near_toeplitz_inverse_entry(&cfg, i, j)?)
        .output("scaled_value", scaled_inverse_entry(&cfg, i, j)?))
}

pub fn invert(m: &MatrixArgs) -> Result<ReportRecord> {
    let inv = assemble_inverse(&config(m)?)?;
    let rows: Vec<&[f64]> = inv.rows().collect();
    Ok(record("invert", m).output("inverse", rows))
}

pub fn trace(m: &MatrixArgs) -> Result<ReportRecord> {
    Ok(record("trace", m).output("trace", trace_inverse(&config(m)?)?))
}

pub fn rowsum(m: &MatrixArgs, i: Option<usize>) -> Result<ReportRecord> {
    let cfg = config(m)?;
    match i {
        Some(i) => Ok(record("rowsum", m).input("i", i).output("rowsum", analysis::rowsum(&cfg, i)?)),
        None => {
            let rep = rowsum_report(&cfg)?;
            Ok(record("rowsum", m).output("rowsums", &rep.values).output("lower", rep.lower).output("upper", rep.upper))
        }
    }
}

pub fn norm(m: &MatrixArgs) -> Result<ReportRecord> {
    Ok(record("norm", m).output("norm", exact_infinity_norm(&config(m)?)?))
}

pub fn bounds(m: &MatrixArgs) -> Result<ReportRecord> {
    let cfg = config(m)?;
    let rep = bounds_report(&cfg)?;
    Ok(record("bounds", m)
        .output("lower", rep.lower)
        .output("upper", rep.upper)
        .output("exact_norm", rep.exact_norm)
        .output("terms", rep.terms)
        .with_branch(rep.branch.label(cfg.diagonal())))
}

pub fn signs(m: &MatrixArgs) -> Result<ReportRecord> {
    let pat = sign_pattern(&config(m)?)?;
    let rows: Vec<&[i8]> = pat.rows().collect();
    Ok(record("signs", m).output("pattern", rows))
}

pub fn singular(m: &MatrixArgs, tol: f64) -> Result<ReportRecord> {
    let cfg = config(m)?;
    let chk = is_singular(&cfg, tol);
    let (r1, r2) = singular_corners(&cfg);
    Ok(record("singular", m)
        .input("tol", tol)
        .output("singular", chk.singular)
        .output("by_distance", chk.by_distance)
        .output("by_delta", chk.by_delta)
        .output("distance", chk.distance)
        .output("delta", chk.delta)
        .output("singular_corners", [r1, r2]))
}

pub fn solve_bvp(a: &BvpArgs) -> Result<ReportRecord> {
    let cfg = config(&a.m)?;
    let mut prob = BvpProblem::new(cfg, a.length, a.k, a.nonlinearity)?.with_boundary(a.bc_left, a.bc_right);
    if let (Some(lo), Some(hi)) = (a.u_min, a.u_max) {
        prob = prob.with_iterate_range(lo, hi);
    }
    let u0 = default_initial_guess(&cfg);
    let res = solve_fixed_point(&prob, &u0, a.tol, a.max_iter)?;
    Ok(record("solve-bvp", &a.m)
        .input("length", a.length)
        .input("k", a.k)
        .input("nonlinearity", a.nonlinearity.name())
        .input("tol", a.tol)
        .input("max_iter", a.max_iter)
        .input("bc_left", a.bc_left)
        .input("bc_right", a.bc_right)
        .output("converged", res.converged)
        .output("iterations", res.iterations)
        .output("observed_rate", res.observed_rate)
        .output("expected_rate", res.expected_rate)
        .output("diffs", &res.diffs)
        .output("solution", &res.solution))
}

fn table_name(t: TableId) -> String {
    scalar_text(&to_value(t))
}

pub fn reproduce_record(table: TableId) -> Result<ReportRecord> {
    let rows = match reproduce(table)? {
        Reproduction::Norm(r) => to_value(r),
        Reproduction::Rate(r) => to_value(r),
    };
    Ok(ReportRecord::new("reproduce").input("table", table_name(table)).output("rows", rows))
}

/// The table as CSV: the recomputed columns, then the reference
/// values and the per-row verdict.
pub fn reproduce_csv(table: TableId) -> Result<String> {
    let mut out = String::new();
    match reproduce(table)? {
        Reproduction::Norm(rows) => {
            out.push_str("n,b,btilde,norm,bound,ref_norm,ref_bound,norm_ok,bound_ok,pass\n");
            for r in rows {
                let line = [
                    json!(r.reference.n),
                    json!(r.reference.b),
                    to_value(r.reference.b_tilde),
                    to_value(r.norm),
                    to_value(r.bound),
                    to_value(r.reference.norm),
                    to_value(r.reference.bound),
                    json!(r.norm_ok),
                    json!(r.bound_ok),
                    json!(r.pass()),
                ];
                push_line(&mut out, &line);
            }
        }
        Reproduction::Rate(rows) => {
            out.push_str(
                "k,iterations,numerical_rate,expected_rate,ref_iterations,ref_numerical_rate,\
                 ref_expected_rate,converged,pass\n",
            );
            for r in rows {
                let line = [
                    json!(r.reference.k_label),
                    json!(r.iterations),
                    to_value(r.observed_rate),
                    to_value(r.expected_rate),
                    json!(r.reference.iterations),
                    to_value(r.reference.observed_rate),
                    to_value(r.reference.expected_rate),
                    json!(r.converged),
                    json!(r.pass()),
                ];
                push_line(&mut out, &line);
            }
        }
    }
    Ok(out)
}

fn push_line(out: &mut String, cells: &[serde_json::Value]) {
    let text: Vec<String> = cells.iter().map(scalar_text).collect();
    out.push_str(&text.join(","));
    out.push('\n');
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Singular { .. } | Error::PivotBreakdown { .. } => 3,
        Error::Divergence { .. } => 4,
        Error::InvalidConfig(_)
        | Error::InvalidArgument(_)
        | Error::IndexOutOfRange { .. }
        | Error::UnboundedRange(_) => 2,
        Error::Unsupported(_) => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidConfig(_) => "invalid_config",
        Error::Singular { .. } => "singular",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::Unsupported(_) => "unsupported",
        Error::PivotBreakdown { .. } => "pivot_breakdown",
        Error::Divergence { .. } => "divergence",
        Error::UnboundedRange(_) => "unbounded_range",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

/// `{"error": {"kind", "message", ...}}`; divergence carries the
/// successive-difference trace up to the failure.
pub fn error_object(e: &Error) -> String {
    let mut body = serde_json::Map::new();
    body.insert("kind".into(), json!(error_kind(e)));
    body.insert("message".into(), json!(e.to_string()));
    if let Error::Divergence { iterations, diffs } = e {
        body.insert("iterations".into(), json!(iterations));
        body.insert("diffs".into(), to_value(diffs));
    }
    let mut s = serde_json::to_string_pretty(&json!({ "error": body })).expect("error object is serializable");
    s.push('\n');
    s
}
