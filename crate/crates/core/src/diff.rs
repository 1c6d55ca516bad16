//! Forward-difference derivatives.
//!
//! The quotient `D_k = (f(a + h) - f(a)) / h` with `h = 10^-k` is sampled for
//! `k = 0..=min(n, 8)` and the sequence is handed to [`limits::classify`].
//! Steps below `1e-8` are never used: past that point cancellation in
//! `f(a + h) - f(a)` swamps the truncation error the shrinking step removes.
//!
//! [`limits::classify`]: crate::limits::classify

use thiserror::Error;

use crate::expr::{Bindings, Expr, ExprError};
use crate::limits::{self, decimal_power, LimitVerdict, SampleTrace, VerdictKind};

/// Largest `k` in `h = 10^-k`.
pub const STEP_EXPONENT_CAP: usize = 8;

/// Consecutive-agreement window used when classifying quotient sequences.
pub const DERIVATIVE_WINDOW: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiffError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid derivative request: {0}")]
    InvalidRequest(String),
    #[error("partial derivative along `{var}` did not converge ({})", .kind.name())]
    NotConverged { var: String, kind: VerdictKind },
}

/// Sampling controls shared by every derivative entry point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffOptions {
    pub n: usize,
    pub tol: f64,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { n: 8, tol: 1e-4 }
    }
}

impl DiffOptions {
    fn validate(&self) -> Result<(), DiffError> {
        if self.n < 2 {
            return Err(DiffError::InvalidRequest(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(DiffError::InvalidRequest(format!(
                "tol must be positive and finite, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffRequest {
    pub expr: Expr,
    /// Variable being perturbed.
    pub var: String,
    /// Evaluation point; binds every free variable of `expr`.
    pub point: Bindings,
    pub options: DiffOptions,
}

impl DiffRequest {
    pub fn new(expr: Expr, var: impl Into<String>, point: Bindings) -> DiffRequest {
        DiffRequest {
            expr,
            var: var.into(),
            point,
            options: DiffOptions::default(),
        }
    }

    /// Request for `f'(a)` of a function of `var` alone.
    pub fn at(expr: Expr, var: impl Into<String>, a: f64) -> DiffRequest {
        let var = var.into();
        let point = Bindings::one(var.clone(), a);
        DiffRequest::new(expr, var, point)
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.options.n = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.options.tol = tol;
        self
    }

    fn validate(&self) -> Result<f64, DiffError> {
        self.options.validate()?;
        crate::expr::check_variable_name(&self.var)?;
        if let Some(missing) = self
            .expr
            .free_vars()
            .into_iter()
            .find(|v| !self.point.contains(v))
        {
            return Err(ExprError::UnboundVariable(missing).into());
        }
        let a = self
            .point
            .get(&self.var)
            .ok_or_else(|| ExprError::UnboundVariable(self.var.clone()))?;
        if !a.is_finite() {
            return Err(DiffError::InvalidRequest(format!(
                "`{}` must be bound to a finite value, got {a}",
                self.var
            )));
        }
        Ok(a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeResult {
    /// Classification of the quotient sequence.
    pub verdict: LimitVerdict,
    /// The converged value, when there is one.
    pub estimate: Option<f64>,
    /// `x` holds the step `h`, `fx` the quotient.
    pub trace: SampleTrace,
}

/// Forward-difference quotients for `h = 1, 0.1, ..., 10^-min(n, 8)`.
pub fn diff_quotient_trace(req: &DiffRequest) -> Result<SampleTrace, DiffError> {
    let a = req.validate()?;
    let var = req.var.as_str();
    let at = |x: f64| {
        req.expr.eval_with(&|name| {
            if name == var {
                Some(x)
            } else {
                req.point.get(name)
            }
        })
    };
    let base = at(a)?;
    let mut trace = SampleTrace::new();
    for k in 0..=req.options.n.min(STEP_EXPONENT_CAP) {
        let h = decimal_power(-(k as i32));
        trace.push(h, (at(a + h)? - base) / h);
    }
    Ok(trace)
}

/// Partial derivative along `req.var`, other variables held at `req.point`.
pub fn partial(req: &DiffRequest) -> Result<DerivativeResult, DiffError> {
    let trace = diff_quotient_trace(req)?;
    let verdict = limits::classify(&trace, req.options.tol, DERIVATIVE_WINDOW);
    Ok(DerivativeResult {
        estimate: verdict.value(),
        verdict,
        trace,
    })
}

/// Derivative of a function of `req.var` alone.
pub fn derivative(req: &DiffRequest) -> Result<DerivativeResult, DiffError> {
    req.expr.ensure_univariate(&req.var)?;
    partial(req)
}

/// Gradient along `vars`, in that order.
///
/// Fails on the first variable whose quotient sequence does not converge.
pub fn gradient<S: AsRef<str>>(
    f: &Expr,
    vars: &[S],
    point: &Bindings,
    options: &DiffOptions,
) -> Result<Vec<f64>, DiffError> {
    vars.iter()
        .map(|var| {
            let var = var.as_ref();
            let req = DiffRequest {
                expr: f.clone(),
                var: var.to_string(),
                point: point.clone(),
                options: *options,
            };
            let result = partial(&req)?;
            result.estimate.ok_or(DiffError::NotConverged {
                var: var.to_string(),
                kind: result.verdict.kind,
            })
        })
        .collect()
}
