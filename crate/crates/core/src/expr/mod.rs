//! Real-valued expressions in named variables.
//!
//! Text is parsed into an immutable [`Expr`] tree which can be evaluated at a
//! single point ([`Expr::eval`]) or elementwise over a vector of points
//! ([`Expr::eval_vec`]). Both paths apply the same floating-point operations in
//! the same order, so their results agree bit for bit.
//!
//! ```
//! use numcalc::expr::{Bindings, Expr};
//!
//! let f: Expr = "x^2 + 1".parse().unwrap();
//! assert_eq!(f.eval(&Bindings::one("x", 3.0)).unwrap(), 10.0);
//! assert_eq!(f.eval_vec("x", &[0.0, 1.0]).unwrap(), vec![1.0, 2.0]);
//! ```

mod ast;
mod eval;
mod format;
mod parse;

pub use ast::{BinaryOp, Expr, Func};
pub use eval::{Bindings, Univariate};
pub use format::format_number;
pub use parse::parse;

use thiserror::Error;

/// Identifiers that resolve to constants and can never name a variable.
pub const RESERVED_CONSTANTS: [&str; 2] = ["pi", "e"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at offset {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("`{0}` is a reserved constant and cannot be used as a variable")]
    ReservedName(String),
    #[error("expression must depend on `{expected}` only, found free variables {found:?}")]
    Arity {
        expected: String,
        found: Vec<String>,
    },
}

impl ExprError {
    /// Errors raised while turning text into a tree, as opposed to evaluating one.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            ExprError::Syntax { .. } | ExprError::UnknownFunction { .. }
        )
    }
}

/// Rejects `pi` and `e` when a caller wants to treat them as variables.
pub fn check_variable_name(name: &str) -> Result<(), ExprError> {
    if RESERVED_CONSTANTS.contains(&name) {
        Err(ExprError::ReservedName(name.to_string()))
    } else {
        Ok(())
    }
}
