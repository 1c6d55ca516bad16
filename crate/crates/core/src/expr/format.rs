use std::fmt;

use super::ast::{BinaryOp, Expr};

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const FACTOR: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn level(expr: &Expr) -> u8 {
    match expr {
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => SUM,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => PRODUCT,
        Expr::Neg(_) => FACTOR,
        Expr::Binary(BinaryOp::Pow, ..) => POWER,
        Expr::Const(v) if v.is_sign_negative() => FACTOR,
        Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => ATOM,
    }
}

/// Shortest decimal text that parses back to the same `f64`.
///
/// Uses exponent notation for very large or very small magnitudes.
pub fn format_number(value: f64) -> String {
    let magnitude = value.abs();
    if magnitude != 0.0 && magnitude.is_finite() && !(1e-4..1e16).contains(&magnitude) {
        format!("{value:e}")
    } else {
        format!("{value}")
    }
}

fn write_at(expr: &Expr, min_level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if level(expr) < min_level {
        f.write_str("(")?;
        write_node(expr, f)?;
        f.write_str(")")
    } else {
        write_node(expr, f)
    }
}

fn write_node(expr: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match expr {
        Expr::Const(v) => f.write_str(&format_number(*v)),
        Expr::Var(name) => f.write_str(name),
        Expr::Neg(child) => {
            f.write_str("-")?;
            write_at(child, FACTOR, f)
        }
        Expr::Call(func, arg) => {
            write!(f, "{}(", func.name())?;
            write_node(arg, f)?;
            f.write_str(")")
        }
        Expr::Binary(op, left, right) => {
            let (lhs, rhs, spaced) = match op {
                BinaryOp::Add | BinaryOp::Sub => (SUM, PRODUCT, true),
                BinaryOp::Mul | BinaryOp::Div => (PRODUCT, FACTOR, false),
                BinaryOp::Pow => (ATOM, FACTOR, false),
            };
            write_at(left, lhs, f)?;
            if spaced {
                write!(f, " {} ", op.symbol())?;
            } else {
                write!(f, "{}", op.symbol())?;
            }
            write_at(right, rhs, f)
        }
    }
}

/// Formats with the minimum parentheses needed to re-parse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_node(self, f)
    }
}
