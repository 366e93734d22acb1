//! The rewriting engine: ordering transforms, block merging and
//! canonicalization by contraction counting.
//!
//! Rewriting rests on one combinatorial fact: re-expressing a product in
//! t-order replaces pairs of one `ad` and one `a` by the scalar weight
//! `(t - u)/2`, where `u` is the pair's relative order — `+1` when the `ad`
//! stands left of the `a` in different blocks, `-1` when the `a` stands left,
//! and the block's own parameter when both sit inside the same ordering
//! symbol. Sums over all ways of picking disjoint contracted pairs reduce to
//! closed-form binomial sums per monomial pair, so no pairing is ever
//! enumerated explicitly.

use thiserror::Error;

use crate::algebra::{Factor, Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use crate::rational::{binomial, factorial, pow_u, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum EngineError {
    #[error("merge requires both blocks in the target order {target}, got {left} and {right}")]
    OrderMismatch {
        target: String,
        left: String,
        right: String,
    },
}

/// `C(n, i) C(m, i) i!` — the number of ways to contract `i` disjoint pairs
/// out of `n` symbols of one kind and `m` of the other.
fn pair_count(n: u32, m: u32, i: u32) -> Rational {
    Rational::from(binomial(n, i) * binomial(m, i) * factorial(i))
}

/// Rewrites a block in the target order `t`.
///
/// Monomial rule, extended linearly:
/// `{ad^n a^m}_s = sum_i C(n,i) C(m,i) i! ((t-s)/2)^i {ad^(n-i) a^(m-i)}_t`.
///
/// ```
/// use got_core::{reorder_block, OrderParam, OrderedBlock};
///
/// // the symmetrically ordered number operator picks up 1/2 in normal order
/// let weyl = OrderedBlock::monomial(1, 1, OrderParam::weyl());
/// let normal = reorder_block(&weyl, &OrderParam::normal());
/// assert_eq!(normal.canonical_display(), "{ad a}_1 + 1/2");
/// ```
pub fn reorder_block(b: &OrderedBlock, t: &OrderParam) -> OrderedBlock {
    if b.order == *t {
        return b.clone();
    }
    let tau = b.order.tau_to(t);
    let mut out = SymbolPoly::zero();
    for (n, m, c) in b.poly.terms() {
        for i in 0..=n.min(m) {
            out.add_term(n - i, m - i, c * pair_count(n, m, i) * pow_u(&tau, i));
        }
    }
    OrderedBlock::new(out, t.clone())
}

/// Merges the operator product `left * right` of two t-ordered blocks into a
/// single t-ordered block.
///
/// Within each block every pair is relatively t-ordered and contributes the
/// weight `(t-t)/2 = 0`, so only cross-block pairs contract: each pair of a
/// left `a` with a right `ad` is relatively anti-normally ordered and weighs
/// `(t+1)/2`; each pair of a left `ad` with a right `a` is relatively
/// normally ordered and weighs `(t-1)/2`. The two families use disjoint
/// symbols, so their counts multiply:
///
/// `{ad^p a^q}_t {ad^r a^u}_t = sum_{i,j} C(q,i) C(r,i) i! ((t+1)/2)^i
///  * C(p,j) C(u,j) j! ((t-1)/2)^j * {ad^(p+r-i-j) a^(q+u-i-j)}_t`.
pub fn merge_blocks(
    left: &OrderedBlock,
    right: &OrderedBlock,
    t: &OrderParam,
) -> Result<OrderedBlock, EngineError> {
    if left.order != *t || right.order != *t {
        return Err(EngineError::OrderMismatch {
            target: t.to_string(),
            left: left.order.to_string(),
            right: right.order.to_string(),
        });
    }
    let anti = t.tau_plus(); // (t+1)/2: left a against right ad
    let norm = t.tau_minus(); // (t-1)/2: left ad against right a
    let mut out = SymbolPoly::zero();
    for (p, q, c1) in left.poly.terms() {
        for (r, u, c2) in right.poly.terms() {
            let c = c1 * c2;
            for i in 0..=q.min(r) {
                let wi = pair_count(q, r, i) * pow_u(&anti, i);
                for j in 0..=p.min(u) {
                    let wj = pair_count(p, u, j) * pow_u(&norm, j);
                    out.add_term(p + r - i - j, q + u - i - j, &c * &wi * &wj);
                }
            }
        }
    }
    Ok(OrderedBlock::new(out, t.clone()))
}

/// Rewrites an arbitrary expression into canonical t-ordered form: a single
/// t-ordered block (or zero).
///
/// Every factor is first brought to t-order — raw generators are absorbed as
/// degree-one blocks, for which every ordering parameter is equivalent — and
/// the factor sequence is then folded left-to-right through [`merge_blocks`].
pub fn order_expression(e: &OperatorExpr, t: &OrderParam) -> OperatorExpr {
    let mut total = SymbolPoly::zero();
    for (coeff, factors) in e.terms() {
        let mut acc = OrderedBlock::new(SymbolPoly::one(), t.clone());
        for f in factors {
            let fb = match f {
                Factor::Gen(g) => OrderedBlock::new(SymbolPoly::generator(*g), t.clone()),
                Factor::Block(b) => reorder_block(b, t),
            };
            acc = merge_blocks(&acc, &fb, t).expect("factors were reordered to t");
        }
        total = total.add(&acc.poly.scale(coeff));
    }
    if total.is_zero() {
        OperatorExpr::zero()
    } else {
        OperatorExpr::block(OrderedBlock::new(total, t.clone()))
    }
}

/// True iff both expressions have identical t-ordered canonical forms.
pub fn canonical_eq(e1: &OperatorExpr, e2: &OperatorExpr, t: &OrderParam) -> bool {
    order_expression(e1, t) == order_expression(e2, t)
}

/// Returns the canonical t-ordered polynomial of an expression (zero poly
/// for the zero expression).
pub fn canonical_poly(e: &OperatorExpr, t: &OrderParam) -> SymbolPoly {
    match order_expression(e, t).canonical_block() {
        Some(b) => b.poly.clone(),
        None => SymbolPoly::zero(),
    }
}

fn shift_step(poly: &SymbolPoly, gen: Generator, tau: &Rational) -> SymbolPoly {
    // One application of (a + tau d/d_ad) resp. (ad + tau d/d_a).
    let (sym, deriv) = match gen {
        Generator::A => (SymbolPoly::generator(Generator::A), poly.derivative_ad()),
        Generator::AD => (SymbolPoly::generator(Generator::AD), poly.derivative_a()),
    };
    sym.mul(poly).add(&deriv.scale(tau))
}

/// Left multiplication `g^n * b`, staying in the block's own order.
///
/// For `g = a` this applies the shift operator `(a + tau_plus d/d_ad)` n
/// times to the block content; for `g = ad` it applies
/// `(ad + tau_minus d/d_a)`, with `tau_plus = (s+1)/2`, `tau_minus = (s-1)/2`
/// taken from the block's order.
pub fn left_multiply_power(g: Generator, n: u32, b: &OrderedBlock) -> OrderedBlock {
    let tau = match g {
        Generator::A => b.order.tau_plus(),
        Generator::AD => b.order.tau_minus(),
    };
    let mut poly = b.poly.clone();
    for _ in 0..n {
        poly = shift_step(&poly, g, &tau);
    }
    OrderedBlock::new(poly, b.order.clone())
}

/// Right multiplication `b * g^n`, staying in the block's own order.
///
/// Mirror image of [`left_multiply_power`]: for `g = a` the shift weight is
/// `tau_minus`, for `g = ad` it is `tau_plus`.
pub fn right_multiply_power(b: &OrderedBlock, g: Generator, n: u32) -> OrderedBlock {
    let tau = match g {
        Generator::A => b.order.tau_minus(),
        Generator::AD => b.order.tau_plus(),
    };
    let mut poly = b.poly.clone();
    for _ in 0..n {
        poly = shift_step(&poly, g, &tau);
    }
    OrderedBlock::new(poly, b.order.clone())
}

/// Left multiplication by a power of `a` or `ad`, producing an expression in
/// the block's own order. Convenience wrapper used by the identity catalog.
pub fn left_multiply_expr(g: Generator, n: u32, e: &OperatorExpr, t: &OrderParam) -> OperatorExpr {
    let canon = order_expression(e, t);
    match canon.canonical_block() {
        None => OperatorExpr::zero(),
        Some(b) => OperatorExpr::block(left_multiply_power(g, n, b)),
    }
}

/// Right multiplication counterpart of [`left_multiply_expr`].
pub fn right_multiply_expr(e: &OperatorExpr, g: Generator, n: u32, t: &OrderParam) -> OperatorExpr {
    let canon = order_expression(e, t);
    match canon.canonical_block() {
        None => OperatorExpr::zero(),
        Some(b) => OperatorExpr::block(right_multiply_power(b, g, n)),
    }
}
