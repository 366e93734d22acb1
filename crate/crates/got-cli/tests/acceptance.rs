//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it completes (run with `--nocapture` to see them).
//!
//! Every comparison here is exact — rational arithmetic end to end, no
//! tolerances anywhere.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use got_core::algebra::{Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use got_core::catalog::{self, CheckParams};
use got_core::engine::{canonical_poly, order_expression, reorder_block};
use got_core::oracle::equal_on_basis;
use got_core::rational::{rat, ratio, Rational};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn order_grid() -> Vec<Rational> {
    vec![rat(-1), ratio(-1, 2), rat(0), ratio(1, 2), rat(1)]
}

fn random_order(rng: &mut StdRng) -> OrderParam {
    let grid = order_grid();
    OrderParam::new(grid[rng.gen_range(0..grid.len())].clone())
}

fn random_block(rng: &mut StdRng, max_terms: usize, max_degree: u32) -> OrderedBlock {
    let mut poly = SymbolPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let n = rng.gen_range(0..=max_degree);
        let m = rng.gen_range(0..=max_degree - n);
        let num: i64 = rng.gen_range(-6..=6);
        let den: i64 = rng.gen_range(1..=4);
        poly.add_term(n, m, Rational::new(if num == 0 { 1 } else { num }.into(), den.into()));
    }
    if poly.is_zero() {
        poly.add_term(0, 0, rat(1));
    }
    OrderedBlock::new(poly, random_order(rng))
}

#[test]
fn criterion_01_oracle_equivalence_on_random_products() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xACCE01);
    for round in 0..500 {
        let mut e = OperatorExpr::one();
        for _ in 0..rng.gen_range(1..=4usize) {
            e = e.mul(&OperatorExpr::block(random_block(&mut rng, 3, 5)));
        }
        let t = random_order(&mut rng);
        let canon = order_expression(&e, &t);
        assert!(
            equal_on_basis(&e, &canon).expect("internally sized cutoff"),
            "round {round}: canonical form differs from the oracle action"
        );
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 30.0, "expected < 30 s, took {secs:.1} s");
    println!("ACCEPTANCE 1 (oracle equivalence, 500 random products): PASS ({secs:.1}s)");
}

/// Independent naive rewriter: normal-orders a word by literally applying
/// `a ad -> ad a + 1` until fixpoint.
fn naive_normal_order(word: &[Generator]) -> SymbolPoly {
    let mut pending: BTreeMap<Vec<Generator>, Rational> = BTreeMap::new();
    pending.insert(word.to_vec(), rat(1));
    let mut out = SymbolPoly::zero();
    while let Some((w, c)) = pending.pop_first() {
        match (0..w.len().saturating_sub(1))
            .find(|&i| w[i] == Generator::A && w[i + 1] == Generator::AD)
        {
            None => {
                let n = w.iter().filter(|g| **g == Generator::AD).count() as u32;
                out.add_term(n, w.len() as u32 - n, c);
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w.clone();
                contracted.drain(i..i + 2);
                *pending.entry(swapped).or_insert_with(Rational::zero) += c.clone();
                *pending.entry(contracted).or_insert_with(Rational::zero) += c;
            }
        }
    }
    out
}

#[test]
fn criterion_02_wick_consistency_on_random_words() {
    let mut rng = StdRng::seed_from_u64(0xACCE02);
    let t = OrderParam::normal();
    for round in 0..200 {
        let len = rng.gen_range(0..=10usize);
        let word: Vec<Generator> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Generator::A
                } else {
                    Generator::AD
                }
            })
            .collect();
        let expr = word
            .iter()
            .fold(OperatorExpr::one(), |acc, g| acc.mul(&OperatorExpr::generator(*g)));
        assert_eq!(
            canonical_poly(&expr, &t),
            naive_normal_order(&word),
            "round {round}: word {word:?}"
        );
    }
    println!("ACCEPTANCE 2 (Wick consistency, 200 random words): PASS");
}

#[test]
fn criterion_03_round_trip_and_composition_on_grid() {
    let grid = order_grid();
    for s_val in &grid {
        let s = OrderParam::new(s_val.clone());
        for n in 0..=6u32 {
            for m in 0..=6u32 {
                let b = OrderedBlock::monomial(n, m, s.clone());
                for t_val in &grid {
                    let t = OrderParam::new(t_val.clone());
                    // round trip s -> t -> s
                    assert_eq!(
                        reorder_block(&reorder_block(&b, &t), &s),
                        b,
                        "round trip s={s_val} t={t_val} n={n} m={m}"
                    );
                    // composition s -> u -> t equals s -> t
                    for u_val in &grid {
                        let u = OrderParam::new(u_val.clone());
                        assert_eq!(
                            reorder_block(&reorder_block(&b, &u), &t),
                            reorder_block(&b, &t),
                            "composition s={s_val} u={u_val} t={t_val} n={n} m={m}"
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 3 (reorder round trips and compositions on the 5x5 grid): PASS");
}

#[test]
fn criterion_04_glauber_identity() {
    for lambda in [ratio(-1, 3), ratio(1, 2), rat(2), rat(3)] {
        let params = CheckParams {
            lambda: Some(lambda.clone()),
            max_k: Some(10),
            ..CheckParams::default()
        };
        let report = catalog::check("glauber-normal", &params).unwrap();
        assert!(report.pass(), "lambda={lambda}: {:?}", report.diffs);
    }
    println!("ACCEPTANCE 4 (Glauber identity, lambda grid, k <= 10): PASS");
}

#[test]
fn criterion_05_factorial_identities() {
    let params = CheckParams {
        n: Some(6),
        max_k: Some(12),
        ..CheckParams::default()
    };
    for name in ["falling-factorial", "rising-factorial"] {
        let report = catalog::check(name, &params).unwrap();
        assert!(report.pass(), "{name}: {:?}", report.diffs);
    }
    let params = CheckParams {
        max_k: Some(12),
        max_order: Some(8),
        ..CheckParams::default()
    };
    let report = catalog::check("antinormal-lambda", &params).unwrap();
    assert!(report.pass(), "antinormal-lambda: {:?}", report.diffs);
    println!("ACCEPTANCE 5 (factorial identities, n <= 6, k <= 12; formal series to order 8): PASS");
}

#[test]
fn criterion_06_derivative_lemmas() {
    let params = CheckParams {
        n: Some(4),
        m: Some(4), // degree bound of the block polynomials
        ..CheckParams::default()
    };
    for name in [
        "deriv-left-a",
        "deriv-right-a",
        "deriv-left-ad",
        "deriv-right-ad",
    ] {
        let report = catalog::check(name, &params).unwrap();
        assert!(report.pass(), "{name}: {:?}", report.diffs);
    }
    println!("ACCEPTANCE 6 (derivative lemmas, n <= 4, degrees <= 4, 5 orders): PASS");
}

#[test]
fn criterion_07_hermite_laguerre_suite() {
    let defaults = CheckParams::default(); // m, n <= 6; tau/kappa grid
    for name in [
        "fan-hermite-normal",
        "fan-hermite-general",
        "incomplete-hermite-gf",
        "h-nn-laguerre",
        "h-H-special-case",
        "hermite-laguerre",
    ] {
        let report = catalog::check(name, &defaults).unwrap();
        assert!(report.pass(), "{name}: {:?}", report.diffs);
    }
    println!("ACCEPTANCE 7 (Hermite/Laguerre suite, m,n <= 6, tau/kappa grid): PASS");
}

#[test]
fn criterion_08_exp_number_reorder_series() {
    // default grid: all (s,t) pairs with s != t, K = 8, formal lambda
    let report = catalog::check("exp-number-reorder", &CheckParams::default()).unwrap();
    assert!(report.pass(), "{:?}", report.diffs);
    assert_eq!(report.checked, 20 * 9, "expected 20 pairs x 9 coefficients");
    println!("ACCEPTANCE 8 (ordered exponential reordering, K = 8, 20 grid pairs): PASS");
}

fn got_binary(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_got"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_09_audit_reports() {
    let started = Instant::now();
    for (s, t) in [("0", "1"), ("1/2", "-1/2")] {
        for n in 0..=2u32 {
            for m in 0..=2u32 {
                // a^n {exp(lambda ad a)}_s audit (no m parameter)
                if m == 0 {
                    let (stdout, code) = got_binary(&[
                        "verify",
                        "--identity",
                        "aneL-audit",
                        "--s",
                        s,
                        "--t",
                        t,
                        "--n",
                        &n.to_string(),
                        "--max-order",
                        "6",
                        "--format",
                        "json",
                    ]);
                    assert_eq!(code, 0, "audit must succeed whether or not the form holds");
                    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
                    let rows = v["per_order"].as_array().unwrap();
                    assert_eq!(rows.len(), 7, "complete per-order table for K = 6");
                    for row in rows {
                        assert!(row["engine"].is_string() && row["printed"].is_string());
                    }
                    assert!(!v["notes"].as_array().unwrap().is_empty());
                }
                let (stdout, code) = got_binary(&[
                    "verify",
                    "--identity",
                    "general-product-rule-audit",
                    "--s",
                    s,
                    "--t",
                    t,
                    "--n",
                    &n.to_string(),
                    "--m",
                    &m.to_string(),
                    "--max-order",
                    "6",
                    "--format",
                    "json",
                ]);
                assert_eq!(code, 0, "audit must succeed whether or not the form holds");
                let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
                let rows = v["per_order"].as_array().unwrap();
                assert_eq!(
                    rows.len(),
                    7 + n as usize,
                    "orders -n..-1 plus 0..=6 for n={n} m={m}"
                );
                assert!(!v["notes"].as_array().unwrap().is_empty());
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    assert!(secs < 10.0, "expected < 10 s, took {secs:.1} s");
    println!("ACCEPTANCE 9 (audit reports, K = 6, n,m <= 2): PASS ({secs:.1}s)");
}

#[test]
fn criterion_10_cli_contract() {
    // order
    let (out, code) = got_binary(&["order", "--target", "N", "a * ad"]);
    assert_eq!((out.as_str(), code), ("{ad a}_1 + 1", 0));
    let (out, code) = got_binary(&["order", "--target", "A", "{ad a}_N"]);
    assert_eq!((out.as_str(), code), ("{ad a}_-1 - 1", 0));
    let (out, code) = got_binary(&["order", "--target", "0", "{ad a}_0"]);
    assert_eq!((out.as_str(), code), ("{ad a}_0", 0));

    // verify
    let (out, code) = got_binary(&[
        "verify",
        "--identity",
        "glauber-normal",
        "--lambda",
        "3",
        "--max-k",
        "8",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("result: PASS"), "out: {out}");
    let (out, code) = got_binary(&[
        "verify",
        "--identity",
        "fan-hermite-general",
        "--s",
        "1",
        "--t",
        "-1",
        "--n",
        "3",
        "--m",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.ends_with("result: PASS"), "out: {out}");
    let (out, code) = got_binary(&[
        "verify",
        "--identity",
        "aneL-audit",
        "--s",
        "0",
        "--t",
        "1",
        "--n",
        "1",
        "--max-order",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid JSON report");
    assert_eq!(v["identity"], "aneL-audit");
    assert_eq!(v["mode"], "audit");

    // equal
    let (out, code) = got_binary(&["equal", "--target", "1", "a*ad", "ad*a + 1"]);
    assert_eq!((out.as_str(), code), ("equal", 0));
    let (out, code) = got_binary(&["equal", "--target", "1", "a", "ad"]);
    assert_eq!(code, 1);
    assert!(out.contains("unequal") && out.contains("ad^1 a^0"), "out: {out}");
    let (out, code) = got_binary(&["equal", "--target", "1", "{ad a}_0", "{ad a}_1 + 1/2"]);
    assert_eq!((out.as_str(), code), ("equal", 0));

    // parse errors exit with the usage code
    let (_, code) = got_binary(&["order", "--target", "N", "a * b"]);
    assert_eq!(code, 2);
    let (_, code) = got_binary(&["verify", "--identity", "no-such-identity"]);
    assert_eq!(code, 2);

    println!("ACCEPTANCE 10 (CLI contract: documented invocations and exit codes): PASS");
}
