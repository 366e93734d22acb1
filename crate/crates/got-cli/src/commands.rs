//! Command implementations shared by the binary and the integration tests.
//!
//! Exit code convention: 0 for success (including audits, which succeed by
//! producing their report), 1 for a failed assertion (an ASSERT identity
//! with diffs, or `equal` concluding the expressions differ), 2 for parse
//! or parameter errors.

use got_core::algebra::{OperatorExpr, OrderParam};
use got_core::catalog::{self, CheckParams, Mode, VerdictReport};
use got_core::engine::{canonical_poly, order_expression};
use got_core::rational::{format_rational, parse_rational, Rational};
use got_core::special::{hermite2, hermite2_incomplete, laguerre};
use serde_json::json;

use crate::json::{bivariate_to_json, canonical_to_json, coeffs_to_json, report_to_json};
use crate::parse::{parse_expr, parse_order};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Finished command: text to print and the process exit code.
#[derive(Debug)]
pub struct CmdOutput {
    pub text: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        CmdOutput {
            text,
            code: EXIT_OK,
        }
    }
}

/// A parse or parameter error (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn from_flag(s: &str) -> Result<Format, UsageError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(UsageError(format!(
                "unknown format `{other}` (expected text or json)"
            ))),
        }
    }
}

fn parse_target(target: &str) -> Result<OrderParam, UsageError> {
    parse_order(target).map_err(|e| UsageError(format!("bad --target value: {e}")))
}

fn parse_input(expr: &str) -> Result<OperatorExpr, UsageError> {
    parse_expr(expr).map_err(|e| UsageError(e.to_string()))
}

/// `got order`: canonical t-ordered form of an expression.
pub fn run_order(expr: &str, target: &str, format: Format) -> Result<CmdOutput, UsageError> {
    let t = parse_target(target)?;
    let e = parse_input(expr)?;
    let canon = order_expression(&e, &t);
    let text = match format {
        Format::Text => match canon.canonical_block() {
            Some(b) => b.canonical_display(),
            None => "0".to_string(),
        },
        Format::Json => canonical_to_json(&canon, &t).to_string(),
    };
    Ok(CmdOutput::ok(text))
}

/// `got equal`: canonical equality of two expressions at a target order,
/// reporting the first differing monomial on failure.
pub fn run_equal(
    expr1: &str,
    expr2: &str,
    target: &str,
    format: Format,
) -> Result<CmdOutput, UsageError> {
    let t = parse_target(target)?;
    let e1 = parse_input(expr1)?;
    let e2 = parse_input(expr2)?;
    let p1 = canonical_poly(&e1, &t);
    let p2 = canonical_poly(&e2, &t);
    let diff = p1.sub(&p2);
    // highest differing monomial in the canonical print order
    let first_diff = diff
        .terms()
        .map(|(n, m, _)| (n, m))
        .max()
        .map(|(n, m)| (n, m, p1.coeff(n, m), p2.coeff(n, m)));
    let equal = first_diff.is_none();

    let text = match format {
        Format::Text => match &first_diff {
            None => "equal".to_string(),
            Some((n, m, c1, c2)) => format!(
                "unequal\nfirst difference at ad^{n} a^{m}: left={} right={}",
                format_rational(c1),
                format_rational(c2)
            ),
        },
        Format::Json => {
            let diff_json = first_diff.as_ref().map(|(n, m, c1, c2)| {
                json!({
                    "ad": n,
                    "a": m,
                    "left": format_rational(c1),
                    "right": format_rational(c2),
                })
            });
            json!({
                "equal": equal,
                "target": t.to_string(),
                "first_diff": diff_json,
            })
            .to_string()
        }
    };
    Ok(CmdOutput {
        text,
        code: if equal { EXIT_OK } else { EXIT_ASSERT_FAILED },
    })
}

/// Raw string-valued parameters of `got verify`, straight from the flags.
#[derive(Clone, Debug, Default)]
pub struct VerifyArgs {
    pub s: Option<String>,
    pub t: Option<String>,
    pub lambda: Option<String>,
    pub tau: Option<String>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub max_k: Option<u32>,
    pub max_order: Option<usize>,
    pub cutoff: Option<u32>,
}

fn rational_flag(name: &str, value: &Option<String>) -> Result<Option<Rational>, UsageError> {
    match value {
        None => Ok(None),
        Some(v) => parse_rational(v)
            .map(Some)
            .ok_or_else(|| UsageError(format!("bad --{name} value `{v}` (expected p/q)"))),
    }
}

impl VerifyArgs {
    fn to_params(&self) -> Result<CheckParams, UsageError> {
        Ok(CheckParams {
            s: rational_flag("s", &self.s)?,
            t: rational_flag("t", &self.t)?,
            lambda: rational_flag("lambda", &self.lambda)?,
            tau: rational_flag("tau", &self.tau)?,
            n: self.n,
            m: self.m,
            // --cutoff bounds the probed basis range like --max-k
            max_k: self.max_k.or(self.cutoff),
            max_order: self.max_order,
        })
    }
}

fn report_text(report: &VerdictReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "identity: {} ({})\n",
        report.identity, report.mode
    ));
    for (k, v) in &report.params {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    out.push_str(&format!("checked: {} comparisons\n", report.checked));
    if !report.per_order.is_empty() {
        out.push_str("per-order coefficients (engine | printed):\n");
        for row in &report.per_order {
            let mark = if row.matches { "=" } else { "!" };
            out.push_str(&format!(
                "  {:<10} {} engine: {}\n  {:<10} {} printed: {}\n",
                row.index, mark, row.engine, row.index, mark, row.printed
            ));
        }
    }
    if !report.diffs.is_empty() && report.per_order.is_empty() {
        out.push_str("diffs:\n");
        for d in &report.diffs {
            out.push_str(&format!(
                "  {}: left = {} ; right = {}\n",
                d.index, d.left, d.right
            ));
        }
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    let verdict = match (report.mode, report.pass()) {
        (Mode::Assert, true) => "PASS",
        (Mode::Assert, false) => "FAIL",
        (Mode::Audit, true) => "AUDIT: printed form holds",
        (Mode::Audit, false) => "AUDIT: printed form does NOT hold",
    };
    out.push_str(&format!("result: {verdict}"));
    out
}

/// `got verify`: run one registered identity check.
pub fn run_verify(
    identity: &str,
    args: &VerifyArgs,
    format: Format,
) -> Result<CmdOutput, UsageError> {
    let params = args.to_params()?;
    let report = catalog::check(identity, &params).map_err(|e| UsageError(e.to_string()))?;
    let text = match format {
        Format::Text => report_text(&report),
        Format::Json => report_to_json(&report).to_string(),
    };
    let code = match report.mode {
        Mode::Audit => EXIT_OK,
        Mode::Assert => {
            if report.pass() {
                EXIT_OK
            } else {
                EXIT_ASSERT_FAILED
            }
        }
    };
    Ok(CmdOutput { text, code })
}

/// `got hermite`: print `H_{m,n}` or `h_{m,n}(.|tau)`.
pub fn run_hermite(
    m: u32,
    n: u32,
    tau: &Option<String>,
    format: Format,
) -> Result<CmdOutput, UsageError> {
    let tau = rational_flag("tau", tau)?;
    let poly = match &tau {
        Some(tau) => hermite2_incomplete(m, n, tau),
        None => hermite2(m, n),
    };
    let text = match format {
        Format::Text => poly.display_with("x", "y"),
        Format::Json => {
            let tau_str = tau
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "-1".to_string());
            json!({
                "m": m,
                "n": n,
                "tau": tau_str,
                "terms": bivariate_to_json(&poly),
            })
            .to_string()
        }
    };
    Ok(CmdOutput::ok(text))
}

/// `got laguerre`: print `L_n^alpha`.
pub fn run_laguerre(n: u32, alpha: i64, format: Format) -> Result<CmdOutput, UsageError> {
    let poly = laguerre(n, alpha);
    let text = match format {
        Format::Text => poly.to_string(),
        Format::Json => json!({
            "n": n,
            "alpha": alpha,
            "coeffs": coeffs_to_json(poly.coeffs()),
        })
        .to_string(),
    };
    Ok(CmdOutput::ok(text))
}

/// `got list-identities`.
pub fn run_list(format: Format) -> Result<CmdOutput, UsageError> {
    let text = match format {
        Format::Text => {
            let mut lines: Vec<String> = Vec::new();
            for info in catalog::identities() {
                lines.push(format!("{:<28} {:<7} {}", info.name, info.mode, info.summary));
            }
            lines.join("\n")
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = catalog::identities()
                .iter()
                .map(|i| {
                    json!({
                        "name": i.name,
                        "mode": i.mode.to_string(),
                        "summary": i.summary,
                    })
                })
                .collect();
            json!(items).to_string()
        }
    };
    Ok(CmdOutput::ok(text))
}
