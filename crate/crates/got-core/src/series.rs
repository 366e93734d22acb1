//! Truncated formal power series in one formal parameter with operator
//! coefficients.
//!
//! A series carries a fixed truncation order `K` and a fixed working order
//! `t`; every coefficient is kept in canonical t-ordered form, so series
//! equality is a plain data comparison. This is the machinery behind all
//! exponential and generating-function identity checks: those identities are
//! verified coefficient-wise, never by numerical summation, which sidesteps
//! convergence questions entirely.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{OperatorExpr, OrderParam};
use crate::engine::order_expression;
use crate::rational::{factorial, rat, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("series truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series working orders differ: {0} vs {1}")]
    WorkingOrderMismatch(String, String),
    #[error("operation requires a zero constant term")]
    NonzeroConstantTerm,
    #[error("operation requires constant term 1")]
    NonUnitConstantTerm,
    #[error("operation requires scalar coefficients")]
    NonScalarCoefficient,
}

/// A formal power series truncated at order `K`, with coefficients stored in
/// canonical t-ordered form for the series' working order `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    order: OrderParam,
    coeffs: Vec<OperatorExpr>,
}

impl TruncatedSeries {
    /// Builds a series from raw coefficients (missing ones are zero), each
    /// canonicalized at the working order.
    pub fn new(order: OrderParam, trunc: usize, coeffs: Vec<OperatorExpr>) -> Self {
        let mut canon: Vec<OperatorExpr> = coeffs
            .into_iter()
            .take(trunc + 1)
            .map(|c| order_expression(&c, &order))
            .collect();
        canon.resize(trunc + 1, OperatorExpr::zero());
        TruncatedSeries {
            order,
            coeffs: canon,
        }
    }

    pub fn zero(order: OrderParam, trunc: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![OperatorExpr::zero(); trunc + 1],
        }
    }

    pub fn one(order: OrderParam, trunc: usize) -> Self {
        Self::from_scalars(order, trunc, vec![rat(1)])
    }

    /// A series with the given scalar coefficients.
    pub fn from_scalars(order: OrderParam, trunc: usize, scalars: Vec<Rational>) -> Self {
        let coeffs = scalars.into_iter().map(OperatorExpr::scalar).collect();
        Self::new(order, trunc, coeffs)
    }

    /// The monomial `c * lambda^k`.
    pub fn monomial(order: OrderParam, trunc: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order, trunc);
        if k <= trunc {
            s.coeffs[k] = OperatorExpr::scalar(c);
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn working_order(&self) -> &OrderParam {
        &self.order
    }

    pub fn coeff(&self, k: usize) -> &OperatorExpr {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[OperatorExpr] {
        &self.coeffs
    }

    /// Adds `c * lambda^k` (an operator coefficient) into the series.
    pub fn add_coeff(&mut self, k: usize, c: &OperatorExpr) {
        if k < self.coeffs.len() {
            self.coeffs[k] = order_expression(&self.coeffs[k].add(c), &self.order);
        }
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.truncation() != other.truncation() {
            return Err(SeriesError::TruncationMismatch(
                self.truncation(),
                other.truncation(),
            ));
        }
        if self.order != other.order {
            return Err(SeriesError::WorkingOrderMismatch(
                self.order.to_string(),
                other.order.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| order_expression(&x.add(y), &self.order))
            .collect();
        Ok(TruncatedSeries {
            order: self.order.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| order_expression(&x.scale(c), &self.order))
            .collect();
        TruncatedSeries {
            order: self.order.clone(),
            coeffs,
        }
    }

    /// Cauchy product truncated at `K`. Coefficient products preserve factor
    /// order (`self`'s coefficient stands left of `other`'s) and are
    /// canonicalized through the rewriting engine.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(other)?;
        let k_max = self.truncation();
        let mut coeffs = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut acc = OperatorExpr::zero();
            for i in 0..=k {
                if self.coeffs[i].is_zero() || other.coeffs[k - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]));
            }
            coeffs.push(order_expression(&acc, &self.order));
        }
        Ok(TruncatedSeries {
            order: self.order.clone(),
            coeffs,
        })
    }

    /// `sum_k self^k / k!` truncated at `K`; requires a zero constant term.
    pub fn exp(&self) -> Result<TruncatedSeries, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let k_max = self.truncation();
        let mut out = TruncatedSeries::one(self.order.clone(), k_max);
        let mut power = TruncatedSeries::one(self.order.clone(), k_max);
        for k in 1..=k_max {
            power = power.mul(self)?;
            let inv = Rational::one() / Rational::from(factorial(k as u32));
            out = out.add(&power.scale(&inv))?;
        }
        Ok(out)
    }

    /// Multiplicative inverse up to order `K`; requires constant term 1.
    pub fn geom_inverse(&self) -> Result<TruncatedSeries, SeriesError> {
        match self.coeffs[0].as_scalar() {
            Some(c) if c.is_one() => {}
            _ => return Err(SeriesError::NonUnitConstantTerm),
        }
        let k_max = self.truncation();
        let mut inv: Vec<OperatorExpr> = Vec::with_capacity(k_max + 1);
        inv.push(OperatorExpr::one());
        for n in 1..=k_max {
            let mut acc = OperatorExpr::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() || inv[n - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&inv[n - i]));
            }
            inv.push(order_expression(&acc.scale(&rat(-1)), &self.order));
        }
        Ok(TruncatedSeries {
            order: self.order.clone(),
            coeffs: inv,
        })
    }

    /// All coefficients as plain scalars, or an error if any is not scalar.
    pub fn scalar_coeffs(&self) -> Result<Vec<Rational>, SeriesError> {
        self.coeffs
            .iter()
            .map(|c| c.as_scalar().ok_or(SeriesError::NonScalarCoefficient))
            .collect()
    }

    /// Composition `self(g(lambda))` truncated at `K`. The inner series must
    /// have scalar coefficients and zero constant term.
    pub fn substitute(&self, g: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check_compatible(g)?;
        let inner = g.scalar_coeffs()?;
        if !inner[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let k_max = self.truncation();
        // scalar powers of the inner series
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(k_max + 1);
        powers.push({
            let mut one = vec![Rational::zero(); k_max + 1];
            one[0] = rat(1);
            one
        });
        for k in 1..=k_max {
            let prev = &powers[k - 1];
            let mut next = vec![Rational::zero(); k_max + 1];
            for (i, p) in prev.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for (j, q) in inner.iter().enumerate() {
                    if i + j > k_max || q.is_zero() {
                        continue;
                    }
                    next[i + j] += p * q;
                }
            }
            powers.push(next);
        }
        let mut coeffs = vec![OperatorExpr::zero(); k_max + 1];
        for (k, f_k) in self.coeffs.iter().enumerate() {
            if f_k.is_zero() {
                continue;
            }
            for (j, w) in powers[k].iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                coeffs[j] = coeffs[j].add(&f_k.scale(w));
            }
        }
        Ok(TruncatedSeries::new(self.order.clone(), k_max, coeffs))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) L^{k}")?;
        }
        Ok(())
    }
}
