//! Shared helpers for the integration tests: an independent naive
//! commutator rewriter and seeded random generators.
//!
//! The rewriter knows nothing about contraction counting: it normal-orders a
//! generator word by literally applying `a ad -> ad a + 1` until no `a`
//! stands left of an `ad`, which makes it a genuinely independent oracle for
//! the engine's t = 1 results.

use std::collections::BTreeMap;

use got_core::algebra::{Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use got_core::rational::{rat, Rational};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

/// Normal-orders a word of raw generators by repeated single swaps,
/// returning the resulting polynomial in normal form (`ad` exponent, `a`
/// exponent).
pub fn naive_normal_order(word: &[Generator]) -> SymbolPoly {
    let mut pending: BTreeMap<Vec<Generator>, Rational> = BTreeMap::new();
    pending.insert(word.to_vec(), rat(1));
    let mut out = SymbolPoly::zero();
    while let Some((w, c)) = pending.pop_first() {
        match (0..w.len().saturating_sub(1))
            .find(|&i| w[i] == Generator::A && w[i + 1] == Generator::AD)
        {
            None => {
                // already normal ordered: ad^n a^m
                let n = w.iter().filter(|g| **g == Generator::AD).count() as u32;
                let m = w.len() as u32 - n;
                out.add_term(n, m, c);
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

pub fn word_to_expr(word: &[Generator]) -> OperatorExpr {
    word.iter().fold(OperatorExpr::one(), |acc, g| {
        acc.mul(&OperatorExpr::generator(*g))
    })
}

pub fn order_grid() -> Vec<Rational> {
    vec![
        rat(-1),
        Rational::new((-1).into(), 2.into()),
        rat(0),
        Rational::new(1.into(), 2.into()),
        rat(1),
    ]
}

pub fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
}

pub fn random_order(rng: &mut StdRng) -> OrderParam {
    let grid = order_grid();
    OrderParam::new(grid[rng.gen_range(0..grid.len())].clone())
}

/// A random block: up to `max_terms` monomials with total degree at most
/// `max_degree`, order drawn from the standard grid.
pub fn random_block(rng: &mut StdRng, max_terms: usize, max_degree: u32) -> OrderedBlock {
    let mut poly = SymbolPoly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let n = rng.gen_range(0..=max_degree);
        let m = rng.gen_range(0..=max_degree.saturating_sub(n));
        let mut c = random_rational(rng);
        if c == rat(0) {
            c = rat(1);
        }
        poly.add_term(n, m, c);
    }
    if poly.is_zero() {
        poly.add_term(0, 0, rat(1));
    }
    OrderedBlock::new(poly, random_order(rng))
}

/// A random product of one to `max_blocks` blocks, as a single-term
/// expression.
pub fn random_block_product(
    rng: &mut StdRng,
    max_blocks: usize,
    max_terms: usize,
    max_degree: u32,
) -> OperatorExpr {
    let count = rng.gen_range(1..=max_blocks);
    let mut e = OperatorExpr::one();
    for _ in 0..count {
        e = e.mul(&OperatorExpr::block(random_block(rng, max_terms, max_degree)));
    }
    e
}

/// A random expression mixing scalars, raw generators, and blocks.
pub fn random_expr(rng: &mut StdRng, max_terms: usize) -> OperatorExpr {
    let mut e = OperatorExpr::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let coeff = random_rational(rng);
        let mut term = OperatorExpr::scalar(if coeff == rat(0) { rat(1) } else { coeff });
        for _ in 0..rng.gen_range(0..=3) {
            let factor = match rng.gen_range(0..3) {
                0 => OperatorExpr::generator(Generator::A),
                1 => OperatorExpr::generator(Generator::AD),
                _ => OperatorExpr::block(random_block(rng, 2, 3)),
            };
            term = term.mul(&factor);
        }
        e = e.add(&term);
    }
    e
}

pub fn random_word(rng: &mut StdRng, max_len: usize) -> Vec<Generator> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Generator::A
            } else {
                Generator::AD
            }
        })
        .collect()
}
