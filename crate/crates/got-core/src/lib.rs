//! Exact symbolic algebra for s-ordered products of bosonic ladder operators.
//!
//! A single bosonic mode is generated by the annihilation operator `a` and the
//! creation operator `ad` (a-dagger) with `[a, ad] = 1`. For a rational
//! parameter `s`, the s-ordered product `{ad^n a^m}_s` interpolates between
//! normal order (`s = 1`, all `ad` left), symmetric/Weyl order (`s = 0`) and
//! anti-normal order (`s = -1`, all `a` left). This crate rewrites arbitrary
//! products of s-ordered polynomial blocks into a single t-ordered canonical
//! form by contraction counting, entirely in exact rational arithmetic.
//!
//! ```
//! use got_core::{order_expression, Generator, OperatorExpr, OrderParam};
//!
//! // a * ad in normal order is {ad a}_1 + 1
//! let product = OperatorExpr::generator(Generator::A)
//!     .mul(&OperatorExpr::generator(Generator::AD));
//! let canon = order_expression(&product, &OrderParam::normal());
//! assert_eq!(
//!     canon.canonical_block().unwrap().canonical_display(),
//!     "{ad a}_1 + 1"
//! );
//! ```
//!
//! Module map:
//!
//! - [`rational`]: arbitrary-precision rational scalars plus binomial and
//!   factorial helpers.
//! - [`algebra`]: ordering parameters, commutative symbol polynomials,
//!   ordered blocks and operator expressions.
//! - [`engine`]: the rewriting engine proper (reordering, block merging,
//!   canonicalization, derivative lemmas).
//! - [`special`]: two-variable Hermite polynomials, their incomplete
//!   generalization and generalized Laguerre polynomials.
//! - [`series`]: truncated formal power series with operator coefficients.
//! - [`oracle`]: an independent exact oracle realizing `ad -> z`,
//!   `a -> d/dz` on polynomials in `z`.
//! - [`catalog`]: a registry of executable ordering identities with
//!   structured verdicts.

pub mod algebra;
pub mod catalog;
pub mod engine;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod special;

pub use algebra::{Factor, Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
pub use catalog::{CheckParams, IdentityInfo, Mode, VerdictReport};
pub use engine::{
    canonical_eq, left_multiply_power, merge_blocks, order_expression, reorder_block,
    right_multiply_power,
};
pub use oracle::{Oracle, ZPoly};
pub use rational::Rational;
pub use series::TruncatedSeries;
