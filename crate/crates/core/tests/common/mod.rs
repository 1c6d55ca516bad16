#![allow(dead_code)]

use numcalc::expr::{BinaryOp, Expr, Func};
use proptest::prelude::*;

pub const CORPUS: [&str; 50] = [
    "x",
    "42",
    "3.25",
    "1e-7",
    "6.02e23",
    "pi",
    "e",
    "-x",
    "--x",
    "x + y",
    "x - y - z",
    "x - (y - z)",
    "x*y/z",
    "x/(y*z)",
    "x/y/z",
    "2^3^2",
    "(2^3)^2",
    "-x^2",
    "(-x)^2",
    "2^-x",
    "x^-2^y",
    "x*-y",
    "x - -y",
    "x + (-y)",
    "(x + y)*(x - y)",
    "x^2 + 2*x*y + y^2",
    "(x^2 - 1)/(x - 1)",
    "sin(x)/x",
    "sin(x)^2 + cos(x)^2",
    "tan(pi*x/4)",
    "exp(-x^2/2)/sqrt(2*pi)",
    "ln(1 + x)/x",
    "log10(1000*x)",
    "abs(x)/x",
    "atan(1/x)",
    "sqrt(abs(x - 3))",
    "exp(sin(cos(x)))",
    "(2*x + 1)/x",
    "x^3 - 2*x^2 + x - 7",
    "1/(1 + exp(-x))",
    "(1 + 1/x)^x",
    "x*exp(-x)*cos(3*x)",
    "((((x))))",
    "-(x + y)^-(z)",
    "0.1 + 0.2",
    "1/3",
    "0.5^k",
    "(-1)^k/k",
    "x^(1/3)",
    "sin(x*y) - cos(y/z) + t^2",
];

fn arb_const() -> impl Strategy<Value = f64> {
    prop_oneof![
        (0u32..100).prop_map(f64::from),
        0.0f64..10.0,
        1e-12f64..1e-4,
        1e15f64..1e25,
        Just(std::f64::consts::PI),
    ]
}

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// Trees of the shape the parser produces: constants are non-negative and
/// negation is explicit.
pub fn arb_expr(vars: &'static [&'static str]) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        arb_const().prop_map(Expr::constant),
        prop::sample::select(vars).prop_map(Expr::var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            (
                prop::sample::select(
                    &[
                        BinaryOp::Add,
                        BinaryOp::Sub,
                        BinaryOp::Mul,
                        BinaryOp::Div,
                        BinaryOp::Pow,
                    ][..]
                ),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            (prop::sample::select(&Func::ALL[..]), inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}
