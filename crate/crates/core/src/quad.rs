//! Definite integrals over a uniform partition.
//!
//! All sums accumulate in ascending index order, one term at a time, and the
//! step `delta` is applied once at the end. The vectorized Riemann path
//! evaluates the whole probe vector with [`Expr::eval_vec`] and reduces it in
//! the same order, so it reproduces the loop result exactly.

use thiserror::Error;

use crate::expr::{Expr, ExprError, Univariate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("integrand is not finite at x = {x}")]
    NonFiniteSample { x: f64 },
}

/// `n` equal subintervals of `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partition {
    a: f64,
    b: f64,
    n: usize,
    delta: f64,
}

impl Partition {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Partition, QuadError> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(QuadError::InvalidSpec(format!(
                "interval endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if a >= b {
            return Err(QuadError::InvalidSpec(format!(
                "interval must satisfy a < b, got [{a}, {b}]"
            )));
        }
        if n == 0 {
            return Err(QuadError::InvalidSpec(
                "at least one subinterval is required".into(),
            ));
        }
        let partition = Partition {
            a,
            b,
            n,
            delta: (b - a) / n as f64,
        };
        let increasing = (0..n).all(|k| partition.point(k) < partition.point(k + 1));
        if !partition.delta.is_finite() || !increasing {
            return Err(QuadError::InvalidSpec(format!(
                "[{a}, {b}] cannot be split into {n} distinct subintervals"
            )));
        }
        Ok(partition)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Endpoint `x_k = a + k*delta`, with `x_n` pinned to `b`.
    pub fn point(&self, k: usize) -> f64 {
        if k >= self.n {
            self.b
        } else {
            self.a + k as f64 * self.delta
        }
    }

    pub fn endpoints(&self) -> Vec<f64> {
        (0..=self.n).map(|k| self.point(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    RiemannLeft,
    RiemannRight,
    RiemannMidpoint,
    Trapezoid,
    Simpson,
}

impl Rule {
    pub fn is_riemann(self) -> bool {
        matches!(
            self,
            Rule::RiemannLeft | Rule::RiemannRight | Rule::RiemannMidpoint
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::RiemannLeft => "left",
            Rule::RiemannRight => "right",
            Rule::RiemannMidpoint => "midpoint",
            Rule::Trapezoid => "trapezoid",
            Rule::Simpson => "simpson",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub expr: Expr,
    pub var: String,
    pub partition: Partition,
    pub rule: Rule,
}

impl QuadratureSpec {
    pub fn new(
        expr: Expr,
        var: impl Into<String>,
        partition: Partition,
        rule: Rule,
    ) -> Result<QuadratureSpec, QuadError> {
        let spec = QuadratureSpec {
            expr,
            var: var.into(),
            partition,
            rule,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), QuadError> {
        self.expr.ensure_univariate(&self.var)?;
        if self.rule == Rule::Simpson && !self.partition.n.is_multiple_of(2) {
            return Err(QuadError::InvalidSpec(format!(
                "Simpson's rule needs an even number of subintervals, got {}",
                self.partition.n
            )));
        }
        Ok(())
    }

    fn integrand(&self) -> Result<Univariate<'_>, QuadError> {
        self.validate()?;
        Ok(self.expr.univariate(&self.var)?)
    }
}

fn finite(x: f64, fx: f64) -> Result<f64, QuadError> {
    if fx.is_finite() {
        Ok(fx)
    } else {
        Err(QuadError::NonFiniteSample { x })
    }
}

fn riemann_rule(spec: &QuadratureSpec) -> Result<Rule, QuadError> {
    if spec.rule.is_riemann() {
        Ok(spec.rule)
    } else {
        Err(QuadError::InvalidSpec(format!(
            "`{}` is not a Riemann rule",
            spec.rule.name()
        )))
    }
}

/// Sample location of the `i`-th Riemann term, `i = 0..n`.
fn riemann_probe(p: &Partition, rule: Rule, i: usize) -> f64 {
    match rule {
        Rule::RiemannLeft => p.point(i),
        Rule::RiemannRight => p.point(i + 1),
        _ => (p.point(i) + p.point(i + 1)) / 2.0,
    }
}

/// Left, right or midpoint Riemann sum, accumulated term by term.
pub fn riemann(spec: &QuadratureSpec) -> Result<f64, QuadError> {
    let rule = riemann_rule(spec)?;
    let f = spec.integrand()?;
    let p = &spec.partition;
    let mut sum = 0.0;
    for i in 0..p.n {
        let x = riemann_probe(p, rule, i);
        sum += finite(x, f.call(x))?;
    }
    Ok(p.delta * sum)
}

/// Riemann sum as `delta * S(f(xs))`: one vectorized evaluation, then a sum.
pub fn riemann_vectorized(spec: &QuadratureSpec) -> Result<f64, QuadError> {
    let rule = riemann_rule(spec)?;
    spec.validate()?;
    let p = &spec.partition;
    let xs: Vec<f64> = (0..p.n).map(|i| riemann_probe(p, rule, i)).collect();
    let ys = spec.expr.eval_vec(&spec.var, &xs)?;
    if let Some(i) = ys.iter().position(|y| !y.is_finite()) {
        return Err(QuadError::NonFiniteSample { x: xs[i] });
    }
    Ok(p.delta * sum_in_order(&ys))
}

fn sum_in_order(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, &v| acc + v)
}

/// Composite trapezoid rule.
pub fn trapezoid(spec: &QuadratureSpec) -> Result<f64, QuadError> {
    let f = spec.integrand()?;
    let p = &spec.partition;
    let at = |k: usize| {
        let x = p.point(k);
        finite(x, f.call(x))
    };
    let mut sum = at(0)? / 2.0;
    for k in 1..p.n {
        sum += at(k)?;
    }
    sum += at(p.n)? / 2.0;
    Ok(p.delta * sum)
}

/// Composite Simpson's rule; `n` must be even.
pub fn simpson(spec: &QuadratureSpec) -> Result<f64, QuadError> {
    let f = spec.integrand()?;
    let p = &spec.partition;
    let at = |k: usize| {
        let x = p.point(k);
        finite(x, f.call(x))
    };
    let (mut odd, mut even) = (0.0, 0.0);
    for k in 1..p.n {
        if k % 2 == 1 {
            odd += at(k)?;
        } else {
            even += at(k)?;
        }
    }
    let total = at(0)? + 4.0 * odd + 2.0 * even + at(p.n)?;
    Ok(p.delta / 3.0 * total)
}

/// Dispatches on `spec.rule`, using the loop path for Riemann rules.
pub fn integrate(spec: &QuadratureSpec) -> Result<f64, QuadError> {
    match spec.rule {
        Rule::Trapezoid => trapezoid(spec),
        Rule::Simpson => simpson(spec),
        _ => riemann(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn spec(text: &str, a: f64, b: f64, n: usize, rule: Rule) -> QuadratureSpec {
        QuadratureSpec::new(
            parse(text).unwrap(),
            "x",
            Partition::new(a, b, n).unwrap(),
            rule,
        )
        .unwrap()
    }

    #[test]
    fn partition_endpoints() {
        let p = Partition::new(0.0, 1.0, 3).unwrap();
        let pts = p.endpoints();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[3], 1.0);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(Partition::new(1.0, 0.0, 4).is_err());
        assert!(Partition::new(1.0, 1.0, 4).is_err());
        assert!(Partition::new(0.0, 1.0, 0).is_err());
        assert!(Partition::new(0.0, f64::INFINITY, 4).is_err());
        assert!(Partition::new(1e16, 1e16 + 2.0, 10).is_err());
    }

    #[test]
    fn constant_integrand_all_riemann_rules() {
        for rule in [Rule::RiemannLeft, Rule::RiemannRight, Rule::RiemannMidpoint] {
            assert_eq!(riemann(&spec("3", 0.0, 1.0, 10, rule)).unwrap(), 3.0);
        }
    }

    #[test]
    fn hand_sums_for_identity() {
        assert_eq!(
            riemann(&spec("x", 0.0, 1.0, 4, Rule::RiemannRight)).unwrap(),
            0.625
        );
        assert_eq!(
            riemann(&spec("x", 0.0, 1.0, 4, Rule::RiemannLeft)).unwrap(),
            0.375
        );
        assert_eq!(
            riemann(&spec("x", 0.0, 1.0, 4, Rule::RiemannMidpoint)).unwrap(),
            0.5
        );
    }

    #[test]
    fn trapezoid_examples() {
        assert_eq!(
            trapezoid(&spec("x", 0.0, 1.0, 4, Rule::Trapezoid)).unwrap(),
            0.5
        );
        assert_eq!(
            trapezoid(&spec("x^2", 0.0, 1.0, 2, Rule::Trapezoid)).unwrap(),
            0.375
        );
        assert_eq!(
            trapezoid(&spec("5", 2.0, 4.0, 7, Rule::Trapezoid)).unwrap(),
            10.0
        );
    }

    #[test]
    fn simpson_examples() {
        let v = simpson(&spec("x^3", 0.0, 1.0, 2, Rule::Simpson)).unwrap();
        assert!((v - 0.25).abs() <= 1e-12);
        let v = simpson(&spec("x", 0.0, 1.0, 2, Rule::Simpson)).unwrap();
        assert!((v - 0.5).abs() <= 1e-15);
        let odd = QuadratureSpec::new(
            parse("x").unwrap(),
            "x",
            Partition::new(0.0, 1.0, 3).unwrap(),
            Rule::Simpson,
        );
        assert!(matches!(odd, Err(QuadError::InvalidSpec(_))));
    }

    #[test]
    fn vectorized_single_term() {
        let s = spec("x^2 + 1", 0.0, 2.0, 1, Rule::RiemannRight);
        assert_eq!(riemann_vectorized(&s).unwrap(), 2.0 * 5.0);
        let s = spec("x^2", 0.0, 1.0, 1000, Rule::RiemannRight);
        assert_eq!(
            riemann_vectorized(&s).unwrap().to_bits(),
            riemann(&s).unwrap().to_bits()
        );
    }

    #[test]
    fn non_finite_samples_are_errors() {
        let s = spec("1/x", 0.0, 1.0, 4, Rule::RiemannLeft);
        assert_eq!(riemann(&s), Err(QuadError::NonFiniteSample { x: 0.0 }));
        assert_eq!(
            riemann_vectorized(&s),
            Err(QuadError::NonFiniteSample { x: 0.0 })
        );
        let s = spec("ln(x - 0.5)", 0.0, 1.0, 4, Rule::Trapezoid);
        assert_eq!(trapezoid(&s), Err(QuadError::NonFiniteSample { x: 0.0 }));
        // The right sum never touches x = 0.
        assert!(riemann(&spec("1/x", 0.0, 1.0, 4, Rule::RiemannRight)).is_ok());
    }

    #[test]
    fn rule_mismatch() {
        let s = spec("x", 0.0, 1.0, 4, Rule::Trapezoid);
        assert!(matches!(riemann(&s), Err(QuadError::InvalidSpec(_))));
        assert!(matches!(
            riemann_vectorized(&s),
            Err(QuadError::InvalidSpec(_))
        ));
        let bivariate = QuadratureSpec::new(
            parse("x*y").unwrap(),
            "x",
            Partition::new(0.0, 1.0, 2).unwrap(),
            Rule::Trapezoid,
        );
        assert!(matches!(
            bivariate,
            Err(QuadError::Expr(ExprError::Arity { .. }))
        ));
    }
}
