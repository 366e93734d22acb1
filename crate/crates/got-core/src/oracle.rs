//! Independent exact oracle: operators act on polynomials in `z` through
//! `ad -> multiply by z` and `a -> d/dz`.
//!
//! This realizes `[a, ad] = 1` exactly in rational arithmetic (a Fock-matrix
//! realization would drag in square roots). Ordered blocks are grounded by
//! expanding them to normal order straight from the monomial definition of
//! s-ordering and then applying the resulting words; the oracle never calls
//! the rewriting engine, so agreement between the two is a genuine
//! cross-check.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Factor, Generator, OperatorExpr, OrderedBlock};
use crate::rational::{binomial, factorial, pow_u, rat, ratio, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("polynomial degree {degree} exceeds the oracle cutoff {cutoff}")]
    DegreeOverflow { degree: u32, cutoff: u32 },
}

/// A polynomial in `z` of degree at most the oracle cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<Rational>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    /// The basis monomial `z^k`.
    pub fn basis(k: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); k as usize + 1];
        coeffs[k as usize] = rat(1);
        ZPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = ZPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        ZPoly::from_coeffs(coeffs)
    }

    /// d/dz.
    fn derivative(&self) -> ZPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        ZPoly::from_coeffs(coeffs)
    }

    /// Multiplication by z.
    fn raise(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }
}

/// Oracle configuration: the degree cutoff `D` guaranteeing truncation-free
/// exactness. Callers must keep `D >= total degree of the expression under
/// test + the largest basis index probed`.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cutoff: u32,
}

impl Oracle {
    pub fn new(cutoff: u32) -> Self {
        Oracle { cutoff }
    }

    /// Applies a single generator: `AD` multiplies by z, `A` differentiates.
    pub fn apply_generator(&self, g: Generator, p: &ZPoly) -> Result<ZPoly, OracleError> {
        match g {
            Generator::A => Ok(p.derivative()),
            Generator::AD => {
                let out = p.raise();
                if let Some(d) = out.degree() {
                    if d > self.cutoff {
                        return Err(OracleError::DegreeOverflow {
                            degree: d,
                            cutoff: self.cutoff,
                        });
                    }
                }
                Ok(out)
            }
        }
    }

    /// Applies the normal-ordered word `ad^n a^m` (the `a`s act first).
    fn apply_word(&self, n: u32, m: u32, p: &ZPoly) -> Result<ZPoly, OracleError> {
        let mut out = p.clone();
        for _ in 0..m {
            out = self.apply_generator(Generator::A, &out)?;
        }
        for _ in 0..n {
            out = self.apply_generator(Generator::AD, &out)?;
        }
        Ok(out)
    }

    /// Applies an ordered block by expanding it to a combination of
    /// normal-ordered words directly from the monomial s-ordering rule
    /// `{ad^n a^m}_s = sum_i C(n,i) C(m,i) i! ((1-s)/2)^i ad^(n-i) a^(m-i)`.
    fn apply_block(&self, b: &OrderedBlock, p: &ZPoly) -> Result<ZPoly, OracleError> {
        let tau = (rat(1) - b.order.value()) * ratio(1, 2);
        let mut out = ZPoly::zero();
        for (n, m, c) in b.poly.terms() {
            for i in 0..=n.min(m) {
                let w = Rational::from(binomial(n, i) * binomial(m, i) * factorial(i))
                    * pow_u(&tau, i);
                out = out.add(&self.apply_word(n - i, m - i, p)?.scale(&(c * w)));
            }
        }
        Ok(out)
    }

    /// Applies a whole expression; factor sequences compose right-to-left.
    pub fn apply_expression(&self, e: &OperatorExpr, p: &ZPoly) -> Result<ZPoly, OracleError> {
        let mut out = ZPoly::zero();
        for (coeff, factors) in e.terms() {
            let mut acc = p.clone();
            for f in factors.iter().rev() {
                acc = match f {
                    Factor::Gen(g) => self.apply_generator(*g, &acc)?,
                    Factor::Block(b) => self.apply_block(b, &acc)?,
                };
            }
            out = out.add(&acc.scale(coeff));
        }
        Ok(out)
    }

    /// The closed-form number function `lambda^(ad a)`: `z^k -> lambda^k z^k`.
    pub fn apply_number_function(&self, lambda: &Rational, p: &ZPoly) -> ZPoly {
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * pow_u(lambda, k as u32))
            .collect();
        ZPoly::from_coeffs(coeffs)
    }

    /// True iff the two expressions act identically on every basis monomial
    /// `z^k`, `k = 0..=max_k`. The caller must give probes and cutoff enough
    /// room for faithfulness (see [`equal_on_basis`]).
    pub fn agree_on_probes(
        &self,
        e1: &OperatorExpr,
        e2: &OperatorExpr,
        max_k: u32,
    ) -> Result<bool, OracleError> {
        for k in 0..=max_k {
            let p = ZPoly::basis(k);
            if self.apply_expression(e1, &p)? != self.apply_expression(e2, &p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Compares two expressions as polynomial operators by probing the basis
/// `z^0 .. z^d`, where `d` bounds both expressions' total degrees. Such a
/// probe range is faithful for polynomial operators, so the verdict is exact.
pub fn equal_on_basis(e1: &OperatorExpr, e2: &OperatorExpr) -> Result<bool, OracleError> {
    let d = e1.degree_bound().max(e2.degree_bound());
    let oracle = Oracle::new(2 * d + 1);
    oracle.agree_on_probes(e1, e2, d)
}
