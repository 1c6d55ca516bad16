use std::collections::BTreeMap;

use super::ast::{BinaryOp, Expr, Func};
use super::ExprError;

/// Values for the free variables of an expression.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings {
    values: BTreeMap<String, f64>,
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn one(name: impl Into<String>, value: f64) -> Bindings {
        Bindings::new().with(name, value)
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Bindings {
        self.values.insert(name.into(), value);
        self
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.values.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        Bindings {
            values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

/// Real power with an exact sign rule for negative bases.
///
/// A negative base is only defined for integral exponents, where the result
/// takes the magnitude from `|base|^exponent` and the sign from the exponent's
/// parity. Any other negative base yields NaN.
pub(crate) fn real_pow(base: f64, exponent: f64) -> f64 {
    if base < 0.0 && exponent.is_finite() {
        if exponent.fract() != 0.0 {
            return f64::NAN;
        }
        let magnitude = (-base).powf(exponent);
        if exponent % 2.0 != 0.0 {
            -magnitude
        } else {
            magnitude
        }
    } else {
        base.powf(exponent)
    }
}

#[inline]
pub(crate) fn apply_binary(op: BinaryOp, a: f64, b: f64) -> f64 {
    match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => a / b,
        BinaryOp::Pow => real_pow(a, b),
    }
}

#[inline]
pub(crate) fn apply_func(func: Func, x: f64) -> f64 {
    match func {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Exp => x.exp(),
        Func::Ln => x.ln(),
        Func::Log10 => x.log10(),
        Func::Sqrt => x.sqrt(),
        Func::Abs => x.abs(),
        Func::Atan => x.atan(),
    }
}

impl Expr {
    /// Evaluates at the point given by `bindings`.
    ///
    /// Domain violations follow IEEE semantics (`1/0` is `+inf`, `sqrt(-1)` is
    /// NaN); the only error is a variable with no binding.
    pub fn eval(&self, bindings: &Bindings) -> Result<f64, ExprError> {
        self.eval_with(&|name| bindings.get(name))
    }

    /// Evaluates with an arbitrary variable lookup.
    pub fn eval_with<L>(&self, lookup: &L) -> Result<f64, ExprError>
    where
        L: Fn(&str) -> Option<f64>,
    {
        Ok(match self {
            Expr::Const(v) => *v,
            Expr::Var(name) => {
                lookup(name).ok_or_else(|| ExprError::UnboundVariable(name.clone()))?
            }
            Expr::Neg(child) => -child.eval_with(lookup)?,
            Expr::Binary(op, left, right) => {
                apply_binary(*op, left.eval_with(lookup)?, right.eval_with(lookup)?)
            }
            Expr::Call(func, arg) => apply_func(*func, arg.eval_with(lookup)?),
        })
    }

    /// Evaluates at many values of the single variable `var`.
    ///
    /// Each tree node is computed over the whole vector before its parent, so
    /// the work is a sequence of elementwise vector operations. Element `i` is
    /// bit-identical to `eval` with `var = xs[i]`.
    pub fn eval_vec(&self, var: &str, xs: &[f64]) -> Result<Vec<f64>, ExprError> {
        self.ensure_univariate(var)?;
        Ok(self.eval_columns(xs))
    }

    fn eval_columns(&self, xs: &[f64]) -> Vec<f64> {
        match self {
            Expr::Const(v) => vec![*v; xs.len()],
            Expr::Var(_) => xs.to_vec(),
            Expr::Neg(child) => {
                let mut col = child.eval_columns(xs);
                col.iter_mut().for_each(|v| *v = -*v);
                col
            }
            Expr::Binary(op, left, right) => {
                let mut lhs = left.eval_columns(xs);
                let rhs = right.eval_columns(xs);
                lhs.iter_mut()
                    .zip(&rhs)
                    .for_each(|(a, &b)| *a = apply_binary(*op, *a, b));
                lhs
            }
            Expr::Call(func, arg) => {
                let mut col = arg.eval_columns(xs);
                col.iter_mut().for_each(|v| *v = apply_func(*func, *v));
                col
            }
        }
    }

    /// Pointwise evaluator for an expression in one variable.
    pub fn univariate<'a>(&'a self, var: &'a str) -> Result<Univariate<'a>, ExprError> {
        self.ensure_univariate(var)?;
        Ok(Univariate { expr: self, var })
    }
}

/// An expression checked to depend on one variable only.
#[derive(Debug, Clone, Copy)]
pub struct Univariate<'a> {
    expr: &'a Expr,
    var: &'a str,
}

impl Univariate<'_> {
    pub fn call(&self, x: f64) -> f64 {
        let var = self.var;
        self.expr
            .eval_with(&|name| (name == var).then_some(x))
            .expect("free variables checked at construction")
    }

    pub fn var(&self) -> &str {
        self.var
    }
}
