use std::collections::BTreeSet;
use std::str::FromStr;

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Built-in single-argument functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Log10,
    Sqrt,
    Abs,
    Atan,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Log10,
        Func::Sqrt,
        Func::Abs,
        Func::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Log10 => "log10",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Immutable expression tree.
///
/// `pi` and `e` are folded into [`Expr::Const`] at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(String),
    Neg(Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn constant(value: f64) -> Expr {
        Expr::Const(value)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(child: Expr) -> Expr {
        Expr::Neg(Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: Expr, right: Expr) -> Expr {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn call(func: Func, child: Expr) -> Expr {
        Expr::Call(func, Box::new(child))
    }

    /// Names of all variables referenced by the tree, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(child) | Expr::Call(_, child) => child.collect_vars(out),
            Expr::Binary(_, left, right) => {
                left.collect_vars(out);
                right.collect_vars(out);
            }
        }
    }

    /// Checks that the expression depends on no variable other than `var`.
    ///
    /// Constant expressions pass.
    pub fn ensure_univariate(&self, var: &str) -> Result<(), ExprError> {
        super::check_variable_name(var)?;
        let vars = self.free_vars();
        if vars.iter().all(|v| v == var) {
            Ok(())
        } else {
            Err(ExprError::Arity {
                expected: var.to_string(),
                found: vars.into_iter().collect(),
            })
        }
    }

    /// Structural equality where constants compare by bit pattern.
    pub fn same_structure(&self, other: &Expr) -> bool {
        match (self, other) {
            (Expr::Const(a), Expr::Const(b)) => a.to_bits() == b.to_bits(),
            (Expr::Var(a), Expr::Var(b)) => a == b,
            (Expr::Neg(a), Expr::Neg(b)) => a.same_structure(b),
            (Expr::Binary(op_a, la, ra), Expr::Binary(op_b, lb, rb)) => {
                op_a == op_b && la.same_structure(lb) && ra.same_structure(rb)
            }
            (Expr::Call(fa, a), Expr::Call(fb, b)) => fa == fb && a.same_structure(b),
            _ => false,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) => 1,
            Expr::Neg(child) | Expr::Call(_, child) => 1 + child.node_count(),
            Expr::Binary(_, left, right) => 1 + left.node_count() + right.node_count(),
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse(s)
    }
}
