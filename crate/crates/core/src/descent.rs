//! Gradient descent with numerically estimated gradients.
//!
//! Plain descent takes `x_{k+1} = x_k - alpha * grad f(x_k)`. The momentum
//! variant is the heavy-ball method:
//!
//! ```text
//! v_{k+1} = beta * v_k + grad f(x_k),   v_0 = 0
//! x_{k+1} = x_k - alpha * v_{k+1}
//! ```
//!
//! Gradients come from [`diff::gradient`](crate::diff::gradient). In
//! backtracking mode each step starts at `alpha` and is halved, at most
//! [`MAX_HALVINGS`] times, until the objective strictly improves.

use thiserror::Error;

use crate::diff::{self, DiffError, DiffOptions};
use crate::expr::{Bindings, Expr, ExprError};

pub const MAX_HALVINGS: usize = 30;

/// Objective magnitude treated as runaway.
pub const OBJECTIVE_BOUND: f64 = 1e300;

/// Consecutive worsening steps that, followed by a gradient breakdown,
/// count as divergence rather than an error.
const RUNAWAY_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid descent configuration: {0}")]
    InvalidConfig(String),
    #[error("gradient estimate failed at iterate {iterate}: {source}")]
    Gradient { iterate: usize, source: DiffError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepMode {
    Fixed,
    Backtracking,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentConfig {
    pub x0: Vec<f64>,
    pub alpha: f64,
    pub step_mode: StepMode,
    /// Momentum coefficient; only read by [`gradient_descent_momentum`].
    pub beta: f64,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub maximize: bool,
    /// Controls for the forward-difference gradient at each iterate.
    ///
    /// The estimate is always the smallest-step quotient; `tol` only decides
    /// whether the quotient sequence is accepted as converged. The default is
    /// looser than [`DiffOptions::default`] so that strongly curved objectives
    /// near a stationary point are still accepted.
    pub gradient: DiffOptions,
}

impl DescentConfig {
    pub fn new(x0: Vec<f64>) -> DescentConfig {
        DescentConfig {
            x0,
            alpha: 0.1,
            step_mode: StepMode::Fixed,
            beta: 0.9,
            max_iters: 1000,
            grad_tol: 1e-6,
            maximize: false,
            gradient: DiffOptions { n: 8, tol: 1e-3 },
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_step_mode(mut self, mode: StepMode) -> Self {
        self.step_mode = mode;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_grad_tol(mut self, grad_tol: f64) -> Self {
        self.grad_tol = grad_tol;
        self
    }

    pub fn maximizing(mut self) -> Self {
        self.maximize = true;
        self
    }

    fn validate<S: AsRef<str>>(&self, f: &Expr, vars: &[S]) -> Result<(), DescentError> {
        let invalid = |msg: String| Err(DescentError::InvalidConfig(msg));
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return invalid(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(0.0..1.0).contains(&self.beta) {
            return invalid(format!("beta must be in [0, 1), got {}", self.beta));
        }
        if self.max_iters < 1 {
            return invalid("max_iters must be at least 1".into());
        }
        if !(self.grad_tol > 0.0 && self.grad_tol.is_finite()) {
            return invalid(format!("grad_tol must be positive, got {}", self.grad_tol));
        }
        if self.x0.len() != vars.len() {
            return invalid(format!(
                "x0 has {} coordinates but {} variables were given",
                self.x0.len(),
                vars.len()
            ));
        }
        if vars.is_empty() {
            return invalid("at least one variable is required".into());
        }
        if self.x0.iter().any(|v| !v.is_finite()) {
            return invalid("x0 must be finite".into());
        }
        for (i, var) in vars.iter().enumerate() {
            crate::expr::check_variable_name(var.as_ref())?;
            if vars[..i].iter().any(|v| v.as_ref() == var.as_ref()) {
                return invalid(format!("variable `{}` listed twice", var.as_ref()));
            }
        }
        if let Some(extra) = f
            .free_vars()
            .into_iter()
            .find(|v| !vars.iter().any(|w| w.as_ref() == v))
        {
            return Err(ExprError::UnboundVariable(extra).into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Iterate {
    pub x: Vec<f64>,
    pub fx: f64,
    /// Euclidean norm of the gradient at `x`; NaN for a divergent final
    /// iterate, where no gradient is taken.
    pub grad_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    GradientToleranceMet,
    MaxItersReached,
    Diverged,
    /// Backtracking found no improving step after [`MAX_HALVINGS`] halvings.
    LineSearchFailed,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::GradientToleranceMet => "gradient_tolerance_met",
            Termination::MaxItersReached => "max_iters_reached",
            Termination::Diverged => "diverged",
            Termination::LineSearchFailed => "line_search_failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentTrace {
    pub iterates: Vec<Iterate>,
    pub termination: Termination,
}

impl DescentTrace {
    pub fn last(&self) -> &Iterate {
        self.iterates.last().expect("a trace holds at least x0")
    }

    /// Number of steps taken.
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

fn is_runaway(x: &[f64], fx: f64) -> bool {
    x.iter().any(|c| !c.is_finite()) || !fx.is_finite() || fx.abs() > OBJECTIVE_BOUND
}

struct Problem<'a, S> {
    f: &'a Expr,
    vars: &'a [S],
    cfg: &'a DescentConfig,
}

impl<S: AsRef<str>> Problem<'_, S> {
    fn bindings(&self, x: &[f64]) -> Bindings {
        self.vars
            .iter()
            .zip(x)
            .map(|(v, &c)| (v.as_ref(), c))
            .collect()
    }

    fn objective(&self, x: &[f64]) -> Result<f64, DescentError> {
        Ok(self.f.eval(&self.bindings(x))?)
    }

    /// True when `candidate` is strictly better than `current`.
    fn improves(&self, candidate: f64, current: f64) -> bool {
        if self.cfg.maximize {
            candidate > current
        } else {
            candidate < current
        }
    }

    fn step(&self, x: &[f64], direction: &[f64], alpha: f64) -> Vec<f64> {
        x.iter()
            .zip(direction)
            .map(|(&xi, &di)| {
                if self.cfg.maximize {
                    xi + alpha * di
                } else {
                    xi - alpha * di
                }
            })
            .collect()
    }

    /// Objective worsened on each of the last few steps, ending at `fx`.
    fn worsening(&self, history: &[Iterate], fx: f64) -> bool {
        if history.len() < RUNAWAY_STEPS {
            return false;
        }
        let recent = history[history.len() - RUNAWAY_STEPS..]
            .iter()
            .map(|it| it.fx)
            .chain(std::iter::once(fx))
            .collect::<Vec<_>>();
        recent.windows(2).all(|w| self.improves(w[0], w[1]))
    }

    fn run(&self, momentum: Option<f64>) -> Result<DescentTrace, DescentError> {
        let cfg = self.cfg;
        let mut x = cfg.x0.clone();
        let mut fx = self.objective(&x)?;
        let mut velocity = vec![0.0; x.len()];
        let mut iterates: Vec<Iterate> = Vec::new();

        let termination = loop {
            if is_runaway(&x, fx) {
                iterates.push(Iterate {
                    x,
                    fx,
                    grad_norm: f64::NAN,
                });
                break Termination::Diverged;
            }
            let grad = match diff::gradient(self.f, self.vars, &self.bindings(&x), &cfg.gradient) {
                Ok(g) => g,
                Err(DiffError::NotConverged { .. }) if self.worsening(&iterates, fx) => {
                    iterates.push(Iterate {
                        x,
                        fx,
                        grad_norm: f64::NAN,
                    });
                    break Termination::Diverged;
                }
                Err(source) => {
                    return Err(DescentError::Gradient {
                        iterate: iterates.len(),
                        source,
                    })
                }
            };
            let grad_norm = norm(&grad);
            iterates.push(Iterate {
                x: x.clone(),
                fx,
                grad_norm,
            });
            if grad_norm <= cfg.grad_tol {
                break Termination::GradientToleranceMet;
            }
            if iterates.len() > cfg.max_iters {
                break Termination::MaxItersReached;
            }

            let direction: &[f64] = match momentum {
                Some(beta) => {
                    velocity
                        .iter_mut()
                        .zip(&grad)
                        .for_each(|(v, &g)| *v = beta * *v + g);
                    &velocity
                }
                None => &grad,
            };

            match cfg.step_mode {
                StepMode::Fixed => {
                    x = self.step(&x, direction, cfg.alpha);
                    fx = self.objective(&x)?;
                }
                StepMode::Backtracking => {
                    let mut alpha = cfg.alpha;
                    let mut accepted = None;
                    for _ in 0..=MAX_HALVINGS {
                        let candidate = self.step(&x, direction, alpha);
                        let f_candidate = self.objective(&candidate)?;
                        if self.improves(f_candidate, fx) {
                            accepted = Some((candidate, f_candidate));
                            break;
                        }
                        alpha /= 2.0;
                    }
                    match accepted {
                        Some((next, f_next)) => {
                            x = next;
                            fx = f_next;
                        }
                        None => break Termination::LineSearchFailed,
                    }
                }
            }
        };

        Ok(DescentTrace {
            iterates,
            termination,
        })
    }
}

/// Plain gradient descent (or ascent when `cfg.maximize`).
///
/// Stops when the gradient norm reaches `cfg.grad_tol`, after
/// `cfg.max_iters` steps, or on divergence: a non-finite coordinate, an
/// objective beyond [`OBJECTIVE_BOUND`], or a gradient that can no longer be
/// estimated after the objective worsened three steps running.
pub fn gradient_descent<S: AsRef<str>>(
    f: &Expr,
    vars: &[S],
    cfg: &DescentConfig,
) -> Result<DescentTrace, DescentError> {
    cfg.validate(f, vars)?;
    Problem { f, vars, cfg }.run(None)
}

/// Heavy-ball momentum descent with coefficient `cfg.beta`.
pub fn gradient_descent_momentum<S: AsRef<str>>(
    f: &Expr,
    vars: &[S],
    cfg: &DescentConfig,
) -> Result<DescentTrace, DescentError> {
    cfg.validate(f, vars)?;
    Problem { f, vars, cfg }.run(Some(cfg.beta))
}
