//! Command-line front end for the s-ordering engine: expression parser,
//! pretty printer, and the `order` / `verify` / `equal` command family.

pub mod commands;
pub mod json;
pub mod parse;

pub use commands::{
    run_equal, run_hermite, run_laguerre, run_list, run_order, run_verify, CmdOutput, Format,
    UsageError, VerifyArgs,
};
pub use parse::{parse_expr, parse_order, ParseError};
