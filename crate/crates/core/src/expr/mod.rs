//! Text front end: parsing rational expressions and rendering
//! decompositions.
//!
//! Grammar, loosest first: `+ -` (left), `* /` (left), unary `-`, `^`
//! (right, integer exponents only). Literals are integers; `p/q` between two
//! integer literals is read as one rational literal.

mod convert;
mod parser;
mod render;

use thiserror::Error;

use crate::error::PfdError;

pub use convert::{to_rational_function, written_denominator};
pub use parser::{parse_expr, Expr, ParseError};
pub use render::{render, Format, JSON_SCHEMA};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Pfd(#[from] PfdError),
    #[error("parameters need a parameter coefficient field")]
    ParameterNotSupported,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("0^0 is undefined")]
    ZeroToZero,
}
