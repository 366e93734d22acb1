//! JSON encodings.
//!
//! Canonical expression schema (rationals are strings so no precision is
//! lost):
//!
//! ```json
//! {"order": "p/q",
//!  "terms": [{"coeff": "p/q",
//!             "monomials": [{"ad": k, "a": l, "coeff": "p/q"}]}]}
//! ```
//!
//! A canonical form has at most one term — the single t-ordered block, with
//! the block's polynomial spelled out monomial by monomial (highest first).
//! The zero expression has an empty term list.

use got_core::algebra::{OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use got_core::catalog::VerdictReport;
use got_core::rational::{format_rational, parse_rational};
use serde_json::{json, Value};

/// Encodes a canonical (single-block or zero) expression.
pub fn canonical_to_json(e: &OperatorExpr, target: &OrderParam) -> Value {
    let terms = match e.canonical_block() {
        None => Vec::new(),
        Some(block) => {
            let monomials: Vec<Value> = block
                .poly
                .terms()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .map(|(n, m, c)| {
                    json!({"ad": n, "a": m, "coeff": format_rational(c)})
                })
                .collect();
            vec![json!({"coeff": "1", "monomials": monomials})]
        }
    };
    json!({"order": target.to_string(), "terms": terms})
}

/// Decodes the canonical expression schema back into an expression.
pub fn canonical_from_json(v: &Value) -> Result<(OperatorExpr, OrderParam), String> {
    let order_str = v
        .get("order")
        .and_then(Value::as_str)
        .ok_or("missing `order`")?;
    let order = OrderParam::new(parse_rational(order_str).ok_or("bad `order` rational")?);
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or("missing `terms`")?;
    let mut expr = OperatorExpr::zero();
    for term in terms {
        let coeff_str = term
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or("missing term `coeff`")?;
        let coeff = parse_rational(coeff_str).ok_or("bad term coefficient")?;
        let monomials = term
            .get("monomials")
            .and_then(Value::as_array)
            .ok_or("missing `monomials`")?;
        let mut poly = SymbolPoly::zero();
        for mono in monomials {
            let n = mono.get("ad").and_then(Value::as_u64).ok_or("missing `ad`")? as u32;
            let m = mono.get("a").and_then(Value::as_u64).ok_or("missing `a`")? as u32;
            let c = mono
                .get("coeff")
                .and_then(Value::as_str)
                .and_then(parse_rational)
                .ok_or("bad monomial coefficient")?;
            poly.add_term(n, m, c);
        }
        let block = OperatorExpr::block(OrderedBlock::new(poly, order.clone())).scale(&coeff);
        expr = expr.add(&block);
    }
    // normalize sums of blocks back into at most one term
    let expr = got_core::engine::order_expression(&expr, &order);
    Ok((expr, order))
}

/// Encodes a verdict report.
pub fn report_to_json(r: &VerdictReport) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let diffs: Vec<Value> = r
        .diffs
        .iter()
        .map(|d| json!({"index": d.index, "left": d.left, "right": d.right}))
        .collect();
    let per_order: Vec<Value> = r
        .per_order
        .iter()
        .map(|row| {
            json!({
                "index": row.index,
                "engine": row.engine,
                "printed": row.printed,
                "match": row.matches,
            })
        })
        .collect();
    json!({
        "identity": r.identity,
        "mode": r.mode.to_string(),
        "params": params,
        "checked": r.checked,
        "pass": r.pass(),
        "diffs": diffs,
        "per_order": per_order,
        "notes": r.notes,
    })
}

/// Encodes a bivariate polynomial as a term list with `x`/`y` exponents.
pub fn bivariate_to_json(p: &SymbolPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|(i, j, c)| json!({"x": i, "y": j, "coeff": format_rational(c)}))
        .collect();
    json!(terms)
}

/// Encodes a univariate polynomial as its dense coefficient list.
pub fn coeffs_to_json(coeffs: &[got_core::Rational]) -> Value {
    let list: Vec<Value> = coeffs
        .iter()
        .map(|c| Value::String(format_rational(c)))
        .collect();
    json!(list)
}
