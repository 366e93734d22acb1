//! Two-variable Hermite polynomials, their incomplete generalization, and
//! generalized Laguerre polynomials, all with exact rational coefficients.
//!
//! The bivariate polynomials are carried by [`SymbolPoly`] with the
//! convention that the first exponent slot is `x` and the second is `y`;
//! the ordering engine instantiates them at `x = ad`, `y = a`.
//!
//! Definitions used throughout:
//!
//! - `H_{m,n}(x,y)   = sum_i C(m,i) C(n,i) i! (-1)^i  x^(m-i) y^(n-i)`
//! - `h_{m,n}(x,y|t) = sum_i C(m,i) C(n,i) i!  t^i    x^(m-i) y^(n-i)`
//! - `L_n^alpha(x)   = sum_i (-1)^i C(n+alpha, n-i) x^i / i!`
//!
//! `h` carries an explicit contraction weight; `h_{m,n}(x,y|-1) = H_{m,n}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::SymbolPoly;
use crate::rational::{
    binomial, factorial, gen_binomial, pow_u, rat, Rational,
};

/// Two-variable Hermite polynomial `H_{m,n}(x, y)`.
pub fn hermite2(m: u32, n: u32) -> SymbolPoly {
    hermite2_incomplete(m, n, &rat(-1))
}

/// Incomplete two-variable Hermite polynomial `h_{m,n}(x, y | tau)`.
///
/// ```
/// use got_core::rational::ratio;
/// use got_core::special::hermite2_incomplete;
///
/// let h = hermite2_incomplete(1, 1, &ratio(1, 2));
/// assert_eq!(h.display_with("x", "y"), "x y + 1/2");
/// ```
pub fn hermite2_incomplete(m: u32, n: u32, tau: &Rational) -> SymbolPoly {
    let mut p = SymbolPoly::zero();
    for i in 0..=m.min(n) {
        let c = Rational::from(binomial(m, i) * binomial(n, i) * factorial(i)) * pow_u(tau, i);
        p.add_term(m - i, n - i, c);
    }
    p
}

/// A dense univariate polynomial with rational coefficients (trailing zeros
/// trimmed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UnivariatePoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    /// Substitutes the variable by `scale * x * y`, producing a bivariate
    /// polynomial: `u^i -> scale^i x^i y^i`.
    pub fn substitute_xy(&self, scale: &Rational) -> SymbolPoly {
        let mut out = SymbolPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_term(i as u32, i as u32, c * pow_u(scale, i as u32));
        }
        out
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = if c < &Rational::zero() { -c } else { c.clone() };
            if first {
                if c < &Rational::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Rational::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Generalized Laguerre polynomial `L_n^alpha(x)`.
///
/// The binomial `C(n+alpha, n-i)` is taken in the Pochhammer-consistent
/// sense ([`gen_binomial`]), which extends the standard formula to every
/// integer `alpha`, negative values included.
pub fn laguerre(n: u32, alpha: i64) -> UnivariatePoly {
    let upper = BigInt::from(n as i64 + alpha);
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for i in 0..=n {
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        coeffs[i as usize] =
            sign * Rational::from(gen_binomial(&upper, n - i)) / Rational::from(factorial(i));
    }
    UnivariatePoly::from_coeffs(coeffs)
}

/// `kappa^n n! x^(m-n) L_n^(m-n)(-xy/kappa)` — the closed Laguerre form of
/// `h_{m,n}(x,y|kappa)` for `m >= n`. Panics on `kappa = 0` or `m < n`.
pub fn h_laguerre_form(m: u32, n: u32, kappa: &Rational) -> SymbolPoly {
    assert!(m >= n, "h_laguerre_form requires m >= n");
    assert!(!kappa.is_zero(), "h_laguerre_form requires kappa != 0");
    let lag = laguerre(n, m as i64 - n as i64);
    let arg_scale = -Rational::one() / kappa;
    let prefactor = pow_u(kappa, n) * Rational::from(factorial(n));
    let mut out = SymbolPoly::zero();
    for (i, c) in lag.coeffs().iter().enumerate() {
        let i = i as u32;
        out.add_term(i + m - n, i, &prefactor * c * pow_u(&arg_scale, i));
    }
    out
}

/// The mirrored Laguerre form `kappa^m m! y^(n-m) L_sub^(n-m)(-xy/kappa)`
/// for `n >= m`, with a caller-chosen subscript so both typographical
/// readings of the relation can be compared. Panics on `kappa = 0` or
/// `n < m`.
pub fn h_laguerre_mirror_form(m: u32, n: u32, kappa: &Rational, subscript: u32) -> SymbolPoly {
    assert!(n >= m, "h_laguerre_mirror_form requires n >= m");
    assert!(!kappa.is_zero(), "h_laguerre_mirror_form requires kappa != 0");
    let lag = laguerre(subscript, n as i64 - m as i64);
    let arg_scale = -Rational::one() / kappa;
    let prefactor = pow_u(kappa, m) * Rational::from(factorial(m));
    let mut out = SymbolPoly::zero();
    for (i, c) in lag.coeffs().iter().enumerate() {
        let i = i as u32;
        out.add_term(i, i + n - m, &prefactor * c * pow_u(&arg_scale, i));
    }
    out
}

/// A truncated bivariate power series in two formal parameters with
/// [`SymbolPoly`] coefficients; entry `[i][j]` is the coefficient of
/// `lambda^i mu^j`. Just enough machinery for exponential generating
/// function checks.
struct BivarSeries {
    coeffs: Vec<Vec<SymbolPoly>>,
}

impl BivarSeries {
    fn zero(max_m: u32, max_n: u32) -> Self {
        BivarSeries {
            coeffs: vec![vec![SymbolPoly::zero(); max_n as usize + 1]; max_m as usize + 1],
        }
    }

    fn one(max_m: u32, max_n: u32) -> Self {
        let mut s = BivarSeries::zero(max_m, max_n);
        s.coeffs[0][0] = SymbolPoly::one();
        s
    }

    fn mul(&self, other: &BivarSeries) -> BivarSeries {
        let rows = self.coeffs.len();
        let cols = self.coeffs[0].len();
        let mut out = BivarSeries {
            coeffs: vec![vec![SymbolPoly::zero(); cols]; rows],
        };
        for i1 in 0..rows {
            for j1 in 0..cols {
                if self.coeffs[i1][j1].is_zero() {
                    continue;
                }
                for i2 in 0..rows - i1 {
                    for j2 in 0..cols - j1 {
                        if other.coeffs[i2][j2].is_zero() {
                            continue;
                        }
                        let prod = self.coeffs[i1][j1].mul(&other.coeffs[i2][j2]);
                        out.coeffs[i1 + i2][j1 + j2] = out.coeffs[i1 + i2][j1 + j2].add(&prod);
                    }
                }
            }
        }
        out
    }

    /// `exp` of a series with zero constant term.
    fn exp(&self) -> BivarSeries {
        let rows = self.coeffs.len();
        let cols = self.coeffs[0].len();
        debug_assert!(self.coeffs[0][0].is_zero());
        let mut out = BivarSeries::one(rows as u32 - 1, cols as u32 - 1);
        let mut term = BivarSeries::one(rows as u32 - 1, cols as u32 - 1);
        for k in 1..rows + cols {
            term = term.mul(self);
            let inv = Rational::one() / Rational::from(factorial(k as u32));
            for i in 0..rows {
                for j in 0..cols {
                    out.coeffs[i][j] = out.coeffs[i][j].add(&term.coeffs[i][j].scale(&inv));
                }
            }
        }
        out
    }
}

/// A single coefficient mismatch in a generating function check.
#[derive(Clone, Debug, PartialEq)]
pub struct GfMismatch {
    pub m: u32,
    pub n: u32,
    pub expected: SymbolPoly,
    pub actual: SymbolPoly,
}

/// Per-coefficient verdict of a generating function comparison.
#[derive(Clone, Debug)]
pub struct GfVerdict {
    pub checked: usize,
    pub mismatches: Vec<GfMismatch>,
}

impl GfVerdict {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Expands `exp(lambda x + mu y + tau lambda mu)` as a truncated series in
/// `(lambda, mu)` and compares each coefficient of `lambda^m mu^n / (m! n!)`
/// against [`hermite2_incomplete`].
pub fn generating_check_incomplete(max_m: u32, max_n: u32, tau: &Rational) -> GfVerdict {
    let mut arg = BivarSeries::zero(max_m, max_n);
    if max_m >= 1 {
        arg.coeffs[1][0] = SymbolPoly::monomial(1, 0, rat(1)); // lambda * x
    }
    if max_n >= 1 {
        arg.coeffs[0][1] = SymbolPoly::monomial(0, 1, rat(1)); // mu * y
    }
    if max_m >= 1 && max_n >= 1 {
        arg.coeffs[1][1] = SymbolPoly::constant(tau.clone()); // tau * lambda * mu
    }
    let series = arg.exp();

    let mut verdict = GfVerdict {
        checked: 0,
        mismatches: Vec::new(),
    };
    for m in 0..=max_m {
        for n in 0..=max_n {
            let weight = Rational::from(factorial(m) * factorial(n));
            let actual = series.coeffs[m as usize][n as usize].scale(&weight);
            let expected = hermite2_incomplete(m, n, tau);
            verdict.checked += 1;
            if actual != expected {
                verdict.mismatches.push(GfMismatch {
                    m,
                    n,
                    expected,
                    actual,
                });
            }
        }
    }
    verdict
}
