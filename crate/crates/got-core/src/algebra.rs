//! Core symbolic types: ordering parameters, commutative symbol polynomials,
//! ordered blocks and operator expressions.
//!
//! Inside an ordering symbol `{...}_s` the generators `ad` and `a` commute,
//! so a block's content is an ordinary bivariate polynomial ([`SymbolPoly`]).
//! Noncommutativity lives entirely at the level of [`OperatorExpr`], whose
//! factor sequences are order-significant; the rewriting engine collapses
//! such sequences back into single blocks.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is freely shareable across threads.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, format_rational, pow_u, rat, ratio, Rational};

/// An ordering parameter `s`.
///
/// The physically common values are `1` (normal), `0` (Weyl/symmetric) and
/// `-1` (anti-normal), but every formula in this crate is a polynomial
/// identity in `s`, so any exact rational is accepted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderParam(Rational);

impl OrderParam {
    pub fn new(value: Rational) -> Self {
        OrderParam(value)
    }

    /// Normal order, `s = 1`: all `ad` to the left of all `a`.
    pub fn normal() -> Self {
        OrderParam(rat(1))
    }

    /// Anti-normal order, `s = -1`: all `a` to the left of all `ad`.
    pub fn antinormal() -> Self {
        OrderParam(rat(-1))
    }

    /// Weyl (symmetric) order, `s = 0`.
    pub fn weyl() -> Self {
        OrderParam(rat(0))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `(s + 1) / 2`.
    pub fn tau_plus(&self) -> Rational {
        (&self.0 + rat(1)) * ratio(1, 2)
    }

    /// `(s - 1) / 2`.
    pub fn tau_minus(&self) -> Rational {
        (&self.0 - rat(1)) * ratio(1, 2)
    }

    /// `(t - s) / 2`: the contraction weight for re-expressing an s-ordered
    /// pair in t-order.
    pub fn tau_to(&self, t: &OrderParam) -> Rational {
        (&t.0 - &self.0) * ratio(1, 2)
    }
}

impl From<Rational> for OrderParam {
    fn from(r: Rational) -> Self {
        OrderParam(r)
    }
}

impl fmt::Display for OrderParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// A raw generator: the annihilation operator `A` (written `a`) or the
/// creation operator `AD` (written `ad`), with `[a, ad] = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A,
    AD,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A => write!(f, "a"),
            Generator::AD => write!(f, "ad"),
        }
    }
}

/// A commutative polynomial in the symbols `ad` and `a`.
///
/// Terms map `(ad exponent, a exponent)` to a nonzero rational coefficient;
/// zero coefficients are never stored. The `BTreeMap` keeps terms in
/// lexicographic `(ad, a)` order, which makes printing and equality
/// deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl SymbolPoly {
    pub fn zero() -> Self {
        SymbolPoly::default()
    }

    pub fn one() -> Self {
        SymbolPoly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = SymbolPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    /// The monomial `c * ad^n a^m`.
    pub fn monomial(n: u32, m: u32, c: Rational) -> Self {
        let mut p = SymbolPoly::zero();
        p.add_term(n, m, c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::A => SymbolPoly::monomial(0, 1, rat(1)),
            Generator::AD => SymbolPoly::monomial(1, 0, rat(1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) iff the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, n: u32, m: u32) -> Rational {
        self.terms.get(&(n, m)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates terms in ascending lexicographic `(ad, a)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(n, m), c)| (n, m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest total degree `n + m` over all terms; 0 for the zero poly.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(n, m)| n + m).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, n: u32, m: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((n, m)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(n, m));
        }
    }

    pub fn add(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = self.clone();
        for (n, m, c) in other.terms() {
            out.add_term(n, m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymbolPoly) -> SymbolPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymbolPoly {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> SymbolPoly {
        if c.is_zero() {
            return SymbolPoly::zero();
        }
        let mut out = SymbolPoly::zero();
        for (n, m, k) in self.terms() {
            out.add_term(n, m, k * c);
        }
        out
    }

    /// Commutative product; distributes over addition.
    pub fn mul(&self, other: &SymbolPoly) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n1, m1, c1) in self.terms() {
            for (n2, m2, c2) in other.terms() {
                out.add_term(n1 + n2, m1 + m2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SymbolPoly {
        let mut acc = SymbolPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `ad`.
    pub fn derivative_ad(&self) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n, m, c) in self.terms() {
            if n > 0 {
                out.add_term(n - 1, m, c * rat(n as i64));
            }
        }
        out
    }

    /// Formal partial derivative with respect to `a`.
    pub fn derivative_a(&self) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n, m, c) in self.terms() {
            if m > 0 {
                out.add_term(n, m - 1, c * rat(m as i64));
            }
        }
        out
    }

    /// Substitutes `ad -> ad + c`.
    pub fn shift_ad(&self, c: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n, m, k) in self.terms() {
            for i in 0..=n {
                let w = Rational::from(binomial(n, i)) * pow_u(c, n - i);
                out.add_term(i, m, k * w);
            }
        }
        out
    }

    /// Substitutes `a -> a + c`.
    pub fn shift_a(&self, c: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n, m, k) in self.terms() {
            for j in 0..=m {
                let w = Rational::from(binomial(m, j)) * pow_u(c, m - j);
                out.add_term(n, j, k * w);
            }
        }
        out
    }

    /// Substitutes `ad -> u * ad`, `a -> v * a`.
    pub fn scale_vars(&self, u: &Rational, v: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (n, m, c) in self.terms() {
            out.add_term(n, m, c * pow_u(u, n) * pow_u(v, m));
        }
        out
    }

    /// Renders the polynomial with custom variable names, highest terms
    /// first, using the block-interior syntax (juxtaposition as product).
    pub fn display_with(&self, var_ad: &str, var_a: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (&(n, m), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let body = monomial_body(n, m, var_ad, var_a);
            match body {
                Some(body) => {
                    if !abs.is_one() {
                        out.push_str(&format_rational(&abs));
                        out.push(' ');
                    }
                    out.push_str(&body);
                }
                None => out.push_str(&format_rational(&abs)),
            }
        }
        out
    }
}

fn monomial_body(n: u32, m: u32, var_ad: &str, var_a: &str) -> Option<String> {
    let mut parts = Vec::new();
    if n == 1 {
        parts.push(var_ad.to_string());
    } else if n > 1 {
        parts.push(format!("{var_ad}^{n}"));
    }
    if m == 1 {
        parts.push(var_a.to_string());
    } else if m > 1 {
        parts.push(format!("{var_a}^{m}"));
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join(" "))
    }
}

impl fmt::Display for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("ad", "a"))
    }
}

/// A polynomial wrapped in an ordering symbol: `{poly}_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedBlock {
    pub poly: SymbolPoly,
    pub order: OrderParam,
}

impl OrderedBlock {
    pub fn new(poly: SymbolPoly, order: OrderParam) -> Self {
        OrderedBlock { poly, order }
    }

    /// `{ad^n a^m}_order`.
    pub fn monomial(n: u32, m: u32, order: OrderParam) -> Self {
        OrderedBlock::new(SymbolPoly::monomial(n, m, rat(1)), order)
    }

    /// Canonical rendering: non-constant monomials stay inside the ordering
    /// braces, the constant part (for which the ordering symbol is inert) is
    /// printed outside. `{ad a + 1}_1` renders as `{ad a}_1 + 1`.
    pub fn canonical_display(&self) -> String {
        let constant = self.poly.coeff(0, 0);
        let mut inner = self.poly.clone();
        inner.add_term(0, 0, -constant.clone());
        if inner.is_zero() {
            return format_rational(&constant);
        }
        let mut out = format!("{{{}}}_{}", inner.display_with("ad", "a"), self.order);
        if !constant.is_zero() {
            if constant.is_negative() {
                out.push_str(&format!(" - {}", format_rational(&constant.abs())));
            } else {
                out.push_str(&format!(" + {}", format_rational(&constant)));
            }
        }
        out
    }
}

impl fmt::Display for OrderedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}_{}", self.poly, self.order)
    }
}

/// One multiplicative factor of an operator term.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Gen(Generator),
    Block(OrderedBlock),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gen(g) => write!(f, "{g}"),
            Factor::Block(b) => write!(f, "{b}"),
        }
    }
}

/// A sum of rational-weighted noncommutative products of blocks and raw
/// generators: the universal expression type.
///
/// The factor sequence of each term is order-significant. An empty factor
/// list denotes the scalar `coefficient * 1`; an empty term list is the
/// additive zero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct OperatorExpr {
    terms: Vec<(Rational, Vec<Factor>)>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn scalar(c: Rational) -> Self {
        if c.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr {
            terms: vec![(c, Vec::new())],
        }
    }

    pub fn one() -> Self {
        OperatorExpr::scalar(rat(1))
    }

    pub fn generator(g: Generator) -> Self {
        OperatorExpr {
            terms: vec![(rat(1), vec![Factor::Gen(g)])],
        }
    }

    pub fn block(b: OrderedBlock) -> Self {
        if b.poly.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr {
            terms: vec![(rat(1), vec![Factor::Block(b)])],
        }
    }

    pub fn from_terms(terms: Vec<(Rational, Vec<Factor>)>) -> Self {
        OperatorExpr {
            terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Rational, Vec<Factor>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OperatorExpr { terms }
    }

    pub fn sub(&self, other: &OperatorExpr) -> OperatorExpr {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> OperatorExpr {
        if c.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, fs)| (k * c, fs.clone()))
                .collect(),
        }
    }

    /// Noncommutative product: factor sequences concatenate left-to-right.
    pub fn mul(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, f1) in &self.terms {
            for (c2, f2) in &other.terms {
                let mut fs = f1.clone();
                fs.extend(f2.iter().cloned());
                terms.push((c1 * c2, fs));
            }
        }
        OperatorExpr { terms }
    }

    pub fn pow(&self, k: u32) -> OperatorExpr {
        let mut acc = OperatorExpr::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Some(c) if the expression is structurally the scalar `c` — either no
    /// terms (zero) or terms whose factors are all constant blocks.
    pub fn as_scalar(&self) -> Option<Rational> {
        let mut total = Rational::zero();
        for (c, fs) in &self.terms {
            let mut val = c.clone();
            for f in fs {
                match f {
                    Factor::Block(b) => val *= b.poly.as_constant()?,
                    Factor::Gen(_) => return None,
                }
            }
            total += val;
        }
        Some(total)
    }

    /// If the expression is a canonical single-block form (one term, unit
    /// coefficient, one block factor), returns that block.
    pub fn canonical_block(&self) -> Option<&OrderedBlock> {
        match self.terms.as_slice() {
            [(c, fs)] if c.is_one() => match fs.as_slice() {
                [Factor::Block(b)] => Some(b),
                _ => None,
            },
            _ => None,
        }
    }

    /// Upper bound on the total operator degree (number of generators) of
    /// any term; used to size oracle cutoffs.
    pub fn degree_bound(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, fs)| {
                fs.iter()
                    .map(|f| match f {
                        Factor::Gen(_) => 1,
                        Factor::Block(b) => b.poly.total_degree(),
                    })
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, fs)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if fs.is_empty() || !abs.is_one() {
                parts.push(format_rational(&abs));
            }
            let mut i = 0;
            while i < fs.len() {
                match &fs[i] {
                    Factor::Gen(g) => {
                        // compress runs of the same generator into a power
                        let mut run = 1;
                        while i + run < fs.len() && fs[i + run] == fs[i] {
                            run += 1;
                        }
                        if run == 1 {
                            parts.push(g.to_string());
                        } else {
                            parts.push(format!("{g}^{run}"));
                        }
                        i += run;
                    }
                    Factor::Block(b) => {
                        parts.push(b.to_string());
                        i += 1;
                    }
                }
            }
            write!(f, "{}", parts.join(" * "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ad_a() -> SymbolPoly {
        SymbolPoly::monomial(1, 1, rat(1))
    }

    #[test]
    fn poly_mul_identity() {
        assert_eq!(ad_a().mul(&SymbolPoly::one()), ad_a());
    }

    #[test]
    fn poly_mul_difference_of_squares() {
        // (ad + a)(ad - a) = ad^2 - a^2 because symbols commute
        let sum = SymbolPoly::monomial(1, 0, rat(1)).add(&SymbolPoly::monomial(0, 1, rat(1)));
        let diff = SymbolPoly::monomial(1, 0, rat(1)).sub(&SymbolPoly::monomial(0, 1, rat(1)));
        let expect =
            SymbolPoly::monomial(2, 0, rat(1)).sub(&SymbolPoly::monomial(0, 2, rat(1)));
        assert_eq!(sum.mul(&diff), expect);
    }

    #[test]
    fn poly_mul_scalars() {
        let p = SymbolPoly::monomial(1, 0, rat(2));
        let q = SymbolPoly::monomial(0, 1, rat(3));
        assert_eq!(p.mul(&q), SymbolPoly::monomial(1, 1, rat(6)));
    }

    #[test]
    fn no_zero_coefficients_survive() {
        let p = ad_a().sub(&ad_a());
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn shift_ad_expands_binomially() {
        // (ad + 2)^2 = ad^2 + 4 ad + 4
        let p = SymbolPoly::monomial(2, 0, rat(1)).shift_ad(&rat(2));
        assert_eq!(p.coeff(2, 0), rat(1));
        assert_eq!(p.coeff(1, 0), rat(4));
        assert_eq!(p.coeff(0, 0), rat(4));
    }

    #[test]
    fn tau_helpers() {
        let s = OrderParam::new(ratio(1, 2));
        assert_eq!(s.tau_plus(), ratio(3, 4));
        assert_eq!(s.tau_minus(), ratio(-1, 4));
        assert_eq!(s.tau_to(&OrderParam::antinormal()), ratio(-3, 4));
        assert_eq!(OrderParam::weyl().tau_to(&OrderParam::weyl()), rat(0));
    }

    #[test]
    fn canonical_display_splits_constant() {
        let mut p = ad_a();
        p.add_term(0, 0, rat(1));
        let b = OrderedBlock::new(p, OrderParam::normal());
        assert_eq!(b.canonical_display(), "{ad a}_1 + 1");

        let mut q = ad_a();
        q.add_term(0, 0, rat(-1));
        let b = OrderedBlock::new(q, OrderParam::antinormal());
        assert_eq!(b.canonical_display(), "{ad a}_-1 - 1");

        let c = OrderedBlock::new(SymbolPoly::constant(ratio(3, 2)), OrderParam::weyl());
        assert_eq!(c.canonical_display(), "3/2");
    }

    #[test]
    fn expr_display_compresses_generator_runs() {
        let a = OperatorExpr::generator(Generator::A);
        let e = a.pow(3).sub(&OperatorExpr::scalar(ratio(1, 2)));
        assert_eq!(e.to_string(), "a^3 - 1/2");
    }

    #[test]
    fn values_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<OrderParam>();
        assert_send_sync::<SymbolPoly>();
        assert_send_sync::<OrderedBlock>();
        assert_send_sync::<OperatorExpr>();
    }

    #[test]
    fn expr_as_scalar() {
        assert_eq!(OperatorExpr::zero().as_scalar(), Some(rat(0)));
        assert_eq!(OperatorExpr::scalar(ratio(2, 3)).as_scalar(), Some(ratio(2, 3)));
        assert_eq!(OperatorExpr::generator(Generator::A).as_scalar(), None);
        let b = OperatorExpr::block(OrderedBlock::new(
            SymbolPoly::constant(rat(4)),
            OrderParam::weyl(),
        ));
        assert_eq!(b.scale(&ratio(1, 2)).as_scalar(), Some(rat(2)));
    }
}
