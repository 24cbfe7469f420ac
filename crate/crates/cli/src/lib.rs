//! Command-line front end for `cliffq`.
//!
//! * [`expr`]: the multivector expression grammar.
//! * [`document`]: the JSON `MultivectorDocument` codec.
//! * [`app`]: `verify`, `table`, `type`, `eval` and `discrepancies`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
//! 3 numerical non-convergence.

pub mod app;
pub mod document;
pub mod expr;

pub use app::{run, Output};
pub use document::{decode, encode, MultivectorDocument};
pub use expr::{parse_expression, parse_multivector, ParseError};
