//! A small expression language for holomorphic/meromorphic functions of
//! n complex variables, with forward-mode jet evaluation.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ('^' int)?
//! atom   := number | 'i' | 'z' digits | func '(' expr ')' | '(' expr ')'
//! func   := exp | sin | cos
//! ```
//!
//! Only entire transcendental atoms and integer exponents are admitted, so
//! every expression is single-valued holomorphic away from the zero sets of
//! its denominators. Division is allowed: classifiers treat values on the
//! Riemann sphere.

mod ast;
mod catalog;
mod eval;
mod parse;

pub use ast::{Expr, Func};
pub use catalog::{catalog, catalog_names, CatalogError};
pub use eval::{EvalError, FnHandle};
pub use parse::{parse, ParseError, ParseErrorKind};
