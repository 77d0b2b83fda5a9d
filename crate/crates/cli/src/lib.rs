//! Expression language and command implementations behind the `hopfweave`
//! binary.

pub mod commands;
pub mod expr;

pub use expr::{elaborate, parse_expr, render_expr, Atom, Expression, ParseError};
