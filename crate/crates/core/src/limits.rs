//! Limits by geometric sampling.
//!
//! A finite target `a` is probed at `a ± 10^-k`, an infinite one at
//! `±(10^k + ε_k)`, for `k = 0..=n`. The resulting sequence is classified from
//! its tail alone:
//!
//! * **converged** when the last `window` consecutive differences are all
//!   within `tol` (relative to the last sample once it exceeds 1 in magnitude);
//! * **diverges** when the tail keeps one sign with magnitudes that either pass
//!   [`DIVERGENCE_BOUND`] or grow by non-shrinking steps;
//! * **no limit** when the tail alternates without shrinking, or keeps
//!   wandering over a range that is not contracting;
//! * **inconclusive** otherwise, including any NaN in the tail.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::expr::{Expr, ExprError, Univariate};

/// Magnitude past which a one-signed, growing tail counts as divergent.
pub const DIVERGENCE_BOUND: f64 = 1e12;

/// Relative slack when comparing consecutive growth steps, so that steps equal
/// up to rounding (such as `ln(10^-k)`) still count as non-shrinking.
const GROWTH_SLACK: f64 = 1e-9;

/// Largest accepted sample index; `10^k` must stay finite.
pub const MAX_INDEX: usize = 300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid limit query: {0}")]
    InvalidQuery(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub k: usize,
    pub x: f64,
    pub fx: f64,
}

/// Probes of an iterative sampler, indexed consecutively from 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleTrace {
    samples: Vec<Sample>,
}

impl SampleTrace {
    pub fn new() -> SampleTrace {
        SampleTrace::default()
    }

    /// Appends a sample with the next index.
    pub fn push(&mut self, x: f64, fx: f64) {
        let k = self.samples.len();
        self.samples.push(Sample { k, x, fx });
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.fx).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// The first `len` samples.
    pub fn truncated(&self, len: usize) -> SampleTrace {
        SampleTrace {
            samples: self.samples[..len.min(self.samples.len())].to_vec(),
        }
    }
}

impl FromIterator<(f64, f64)> for SampleTrace {
    fn from_iter<I: IntoIterator<Item = (f64, f64)>>(iter: I) -> Self {
        let mut trace = SampleTrace::new();
        for (x, fx) in iter {
            trace.push(x, fx);
        }
        trace
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Approach {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Finite { point: f64, approach: Approach },
    PlusInfinity,
    MinusInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerdictKind {
    Converged(f64),
    DivergesPlusInf,
    DivergesMinusInf,
    NoLimitOscillation,
    Inconclusive,
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::Converged(_) => "Converged",
            VerdictKind::DivergesPlusInf => "DivergesPlusInf",
            VerdictKind::DivergesMinusInf => "DivergesMinusInf",
            VerdictKind::NoLimitOscillation => "NoLimitOscillation",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            VerdictKind::Converged(v) => Some(*v),
            _ => None,
        }
    }

    /// Same variant, ignoring the converged value.
    pub fn same_kind(&self, other: &VerdictKind) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitVerdict {
    pub kind: VerdictKind,
    pub iterations_used: usize,
    /// One trace, or two (left then right) for two-sided queries.
    pub traces: Vec<SampleTrace>,
}

impl LimitVerdict {
    pub fn value(&self) -> Option<f64> {
        self.kind.value()
    }

    pub fn is_converged(&self) -> bool {
        matches!(self.kind, VerdictKind::Converged(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitQuery {
    pub expr: Expr,
    pub var: String,
    pub target: Target,
    pub n: usize,
    pub tol: f64,
    pub window: usize,
    pub perturb: bool,
    pub seed: u64,
}

impl LimitQuery {
    pub const DEFAULT_N: usize = 12;
    pub const DEFAULT_TOL: f64 = 1e-8;
    pub const DEFAULT_WINDOW: usize = 3;

    pub fn new(expr: Expr, var: impl Into<String>, target: Target) -> LimitQuery {
        LimitQuery {
            expr,
            var: var.into(),
            target,
            n: Self::DEFAULT_N,
            tol: Self::DEFAULT_TOL,
            window: Self::DEFAULT_WINDOW,
            perturb: false,
            seed: 0,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn with_perturbation(mut self, seed: u64) -> Self {
        self.perturb = true;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), LimitError> {
        validate_sampling(self.n, self.tol, self.window)?;
        if let Target::Finite { point, .. } = self.target {
            if !point.is_finite() {
                return Err(LimitError::InvalidQuery(format!(
                    "finite target must be a finite number, got {point}"
                )));
            }
        }
        Ok(())
    }
}

fn validate_sampling(n: usize, tol: f64, window: usize) -> Result<(), LimitError> {
    if !(2..=MAX_INDEX).contains(&n) {
        return Err(LimitError::InvalidQuery(format!(
            "n must be in 2..={MAX_INDEX}, got {n}"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LimitError::InvalidQuery(format!(
            "tol must be positive and finite, got {tol}"
        )));
    }
    if window < 2 || window > n {
        return Err(LimitError::InvalidQuery(format!(
            "window must be in 2..=n ({n}), got {window}"
        )));
    }
    Ok(())
}

/// `10^exponent`, correctly rounded.
pub(crate) fn decimal_power(exponent: i32) -> f64 {
    format!("1e{exponent}")
        .parse()
        .expect("decimal power literal is well formed")
}

/// Tolerance applied to differences near `reference`: relative above 1.
pub fn effective_tolerance(tol: f64, reference: f64) -> f64 {
    if reference.abs() > 1.0 {
        tol * reference.abs()
    } else {
        tol
    }
}

fn sample_until<P, S>(f: Univariate<'_>, n: usize, mut probe: P, mut stop: S) -> SampleTrace
where
    P: FnMut(usize) -> f64,
    S: FnMut(&SampleTrace) -> bool,
{
    let mut trace = SampleTrace::new();
    for k in 0..=n {
        let x = probe(k);
        trace.push(x, f.call(x));
        if stop(&trace) {
            break;
        }
    }
    trace
}

fn one_sided_probe(a: f64, side: Side) -> impl FnMut(usize) -> f64 {
    move |k| {
        let h = decimal_power(-(k as i32));
        match side {
            Side::Right => a + h,
            Side::Left => a - h,
        }
    }
}

fn infinity_probe(sign: Sign, perturb: bool, seed: u64) -> impl FnMut(usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    move |k| {
        let epsilon = if perturb { rng.random::<f64>() } else { 0.0 };
        sign.factor() * (decimal_power(k as i32) + epsilon)
    }
}

/// Samples `f` at `a + 10^-k` (right) or `a - 10^-k` (left) for `k = 0..=n`.
pub fn sample_one_sided(
    f: &Expr,
    var: &str,
    a: f64,
    side: Side,
    n: usize,
) -> Result<SampleTrace, LimitError> {
    let f = f.univariate(var)?;
    Ok(sample_until(f, n, one_sided_probe(a, side), |_| false))
}

/// Samples `f` at `sign * (10^k + ε_k)` for `k = 0..=n`.
///
/// With `perturb`, `ε_k` is drawn uniformly from `[0, 1)` by a ChaCha8
/// generator seeded with `seed`, one draw per index in order; otherwise it is 0.
pub fn sample_at_infinity(
    f: &Expr,
    var: &str,
    sign: Sign,
    n: usize,
    perturb: bool,
    seed: u64,
) -> Result<SampleTrace, LimitError> {
    let f = f.univariate(var)?;
    Ok(sample_until(
        f,
        n,
        infinity_probe(sign, perturb, seed),
        |_| false,
    ))
}

/// Returns the last value when the final `window` differences are within tolerance.
fn cauchy_tail(tail: &[f64], tol: f64) -> Option<f64> {
    let last = *tail.last()?;
    if !tail.iter().all(|v| v.is_finite()) {
        return None;
    }
    let eps = effective_tolerance(tol, last);
    tail.windows(2)
        .all(|w| (w[1] - w[0]).abs() <= eps)
        .then_some(last)
}

fn tail(values: &[f64], window: usize) -> Option<&[f64]> {
    values
        .len()
        .checked_sub(window + 1)
        .map(|start| &values[start..])
}

fn divergence(tail: &[f64]) -> Option<VerdictKind> {
    let kind = if tail.iter().all(|&v| v > 0.0) {
        VerdictKind::DivergesPlusInf
    } else if tail.iter().all(|&v| v < 0.0) {
        VerdictKind::DivergesMinusInf
    } else {
        return None;
    };
    let mags: Vec<f64> = tail.iter().map(|v| v.abs()).collect();
    let non_decreasing = mags.windows(2).all(|w| w[1] >= w[0]);
    if non_decreasing && mags[mags.len() - 1] > DIVERGENCE_BOUND {
        return Some(kind);
    }
    if mags.iter().any(|m| !m.is_finite()) {
        return None;
    }
    let steps: Vec<f64> = mags.windows(2).map(|w| w[1] - w[0]).collect();
    let growing = steps.iter().all(|&s| s > 0.0)
        && steps
            .windows(2)
            .all(|s| s[1] >= s[0] * (1.0 - GROWTH_SLACK));
    growing.then_some(kind)
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

fn oscillates(values: &[f64], tail: &[f64], tol: f64) -> bool {
    if !tail.iter().all(|v| v.is_finite()) {
        return false;
    }
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let alternating = diffs
        .windows(2)
        .all(|d| d[0] * d[1] < 0.0 && d[1].abs() >= 0.5 * d[0].abs());
    if alternating {
        return true;
    }

    // Bounded wandering: direction changes and the range is not contracting
    // compared with the block of samples just before the tail.
    let turns = diffs.windows(2).any(|d| d[0] * d[1] < 0.0);
    let width = tail.len();
    if !turns || values.len() < 2 * width {
        return false;
    }
    let previous = &values[values.len() - 2 * width..values.len() - width];
    if !previous.iter().all(|v| v.is_finite()) {
        return false;
    }
    let current = spread(tail);
    current > effective_tolerance(tol, tail[tail.len() - 1]) && current >= 0.5 * spread(previous)
}

fn classify_values(values: &[f64], tol: f64, window: usize) -> VerdictKind {
    let recent = &values[values.len().saturating_sub(window)..];
    if recent.len() == window && recent.iter().all(|v| v.is_nan()) {
        return VerdictKind::NoLimitOscillation;
    }
    let Some(tail) = tail(values, window) else {
        return VerdictKind::Inconclusive;
    };
    if tail.iter().any(|v| v.is_nan()) {
        return VerdictKind::Inconclusive;
    }
    if let Some(value) = cauchy_tail(tail, tol) {
        return VerdictKind::Converged(value);
    }
    if let Some(kind) = divergence(tail) {
        return kind;
    }
    if oscillates(values, tail, tol) {
        return VerdictKind::NoLimitOscillation;
    }
    VerdictKind::Inconclusive
}

/// Classifies a sampled sequence by the rules in the module docs.
///
/// An empty trace is inconclusive.
pub fn classify(trace: &SampleTrace, tol: f64, window: usize) -> LimitVerdict {
    let kind = if trace.is_empty() {
        VerdictKind::Inconclusive
    } else {
        classify_values(&trace.values(), tol, window)
    };
    LimitVerdict {
        kind,
        iterations_used: trace.len(),
        traces: vec![trace.clone()],
    }
}

/// Samples with early stopping, then classifies what was sampled.
fn sample_and_classify<P>(f: Univariate<'_>, q: &LimitQuery, probe: P) -> LimitVerdict
where
    P: FnMut(usize) -> f64,
{
    let (tol, window) = (q.tol, q.window);
    let trace = sample_until(f, q.n, probe, |trace| {
        trace.len() > window
            && tail(&trace.values(), window)
                .and_then(|t| cauchy_tail(t, tol))
                .is_some()
    });
    classify(&trace, tol, window)
}

fn combine_sides(left: LimitVerdict, right: LimitVerdict, tol: f64) -> LimitVerdict {
    use VerdictKind::*;
    let kind = match (left.kind, right.kind) {
        (Converged(l), Converged(r)) => {
            let agree = (l - r).abs() <= 10.0 * effective_tolerance(tol, l.abs().max(r.abs()));
            if agree {
                Converged((l + r) / 2.0)
            } else {
                NoLimitOscillation
            }
        }
        (Converged(_), other) | (other, Converged(_)) => other,
        (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
        (l, r) if l.same_kind(&r) => l,
        _ => NoLimitOscillation,
    };
    LimitVerdict {
        kind,
        iterations_used: left.iterations_used.max(right.iterations_used),
        traces: left.traces.into_iter().chain(right.traces).collect(),
    }
}

/// Estimates the limit described by `q`.
///
/// Sampling stops at the first index `k >= window` where the convergence rule
/// already holds. A two-sided query runs both sides; it converges only when
/// both sides converge to values within ten times the tolerance, reporting
/// their mean. Two converged sides that disagree give
/// [`VerdictKind::NoLimitOscillation`]; otherwise the non-converged side's
/// verdict is reported.
pub fn limit(q: &LimitQuery) -> Result<LimitVerdict, LimitError> {
    q.validate()?;
    let f = q.expr.univariate(&q.var)?;
    let verdict = match q.target {
        Target::Finite { point, approach } => match approach {
            Approach::Left => sample_and_classify(f, q, one_sided_probe(point, Side::Left)),
            Approach::Right => sample_and_classify(f, q, one_sided_probe(point, Side::Right)),
            Approach::Both => combine_sides(
                sample_and_classify(f, q, one_sided_probe(point, Side::Left)),
                sample_and_classify(f, q, one_sided_probe(point, Side::Right)),
                q.tol,
            ),
        },
        Target::PlusInfinity => {
            sample_and_classify(f, q, infinity_probe(Sign::Plus, q.perturb, q.seed))
        }
        Target::MinusInfinity => {
            sample_and_classify(f, q, infinity_probe(Sign::Minus, q.perturb, q.seed))
        }
    };
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn probes(trace: &SampleTrace) -> Vec<f64> {
        trace.samples().iter().map(|s| s.x).collect()
    }

    fn trace_of(values: &[f64]) -> SampleTrace {
        values.iter().map(|&v| (0.0, v)).collect()
    }

    fn kind(values: &[f64]) -> VerdictKind {
        classify(&trace_of(values), 1e-8, 3).kind
    }

    #[test]
    fn one_sided_probe_points() {
        let x = parse("x").unwrap();
        let right = sample_one_sided(&x, "x", 2.0, Side::Right, 2).unwrap();
        assert_eq!(probes(&right), vec![3.0, 2.1, 2.01]);
        let left = sample_one_sided(&x, "x", 0.0, Side::Left, 2).unwrap();
        assert_eq!(probes(&left), vec![-1.0, -0.1, -0.01]);
        let recip = sample_one_sided(&parse("1/x").unwrap(), "x", 0.0, Side::Right, 3).unwrap();
        assert_eq!(recip.values(), vec![1.0, 10.0, 100.0, 1000.0]);
        assert_eq!(
            recip.samples().iter().map(|s| s.k).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn infinity_probe_points() {
        let recip = parse("1/x").unwrap();
        let t = sample_at_infinity(&recip, "x", Sign::Plus, 3, false, 0).unwrap();
        assert_eq!(t.values(), vec![1.0, 0.1, 0.01, 0.001]);
        let t = sample_at_infinity(&parse("x").unwrap(), "x", Sign::Minus, 2, false, 0).unwrap();
        assert_eq!(t.values(), vec![-1.0, -10.0, -100.0]);
    }

    #[test]
    fn perturbation_is_seeded() {
        let f = parse("sin(x)").unwrap();
        let a = sample_at_infinity(&f, "x", Sign::Plus, 12, true, 7).unwrap();
        let b = sample_at_infinity(&f, "x", Sign::Plus, 12, true, 7).unwrap();
        let c = sample_at_infinity(&f, "x", Sign::Plus, 12, true, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for (k, s) in a.samples().iter().enumerate() {
            let base = decimal_power(k as i32);
            assert!(s.x >= base && s.x < base + 1.0);
        }
    }

    #[test]
    fn decimal_powers_are_correctly_rounded() {
        assert_eq!(decimal_power(-1), 0.1);
        assert_eq!(decimal_power(-12), 1e-12);
        assert_eq!(decimal_power(22), 1e22);
        assert_eq!(decimal_power(300), 1e300);
    }

    #[test]
    fn classify_rules() {
        assert_eq!(
            kind(&[1.5, 1.1, 1.0, 1.0, 1.0, 1.0]),
            VerdictKind::Converged(1.0)
        );
        assert_eq!(kind(&[1.0, 10.0, 100.0, 1e3]), VerdictKind::DivergesPlusInf);
        assert_eq!(kind(&[-1e11, -1e12, -1e13]), VerdictKind::Inconclusive);
        assert_eq!(
            kind(&[-1e10, -1e11, -1e12, -1e13]),
            VerdictKind::DivergesMinusInf
        );
        assert_eq!(
            kind(&[1.0, f64::INFINITY, f64::INFINITY, f64::INFINITY]),
            VerdictKind::DivergesPlusInf
        );
        // Constant-step growth counts as divergence.
        assert_eq!(
            kind(&[-2.0, -4.0, -6.0, -8.0]),
            VerdictKind::DivergesMinusInf
        );
        // Shrinking steps toward a value that has not settled: no verdict.
        assert_eq!(kind(&[1.0, 1.5, 1.75, 1.875]), VerdictKind::Inconclusive);
        assert_eq!(
            kind(&[1.0, -1.0, 1.0, -1.0]),
            VerdictKind::NoLimitOscillation
        );
        assert_eq!(kind(&[0.0, 1.0, 2.0]), VerdictKind::Inconclusive);
    }

    #[test]
    fn nan_handling() {
        let nan = f64::NAN;
        assert_eq!(kind(&[1.0, 1.0, nan, 1.0]), VerdictKind::Inconclusive);
        assert_eq!(kind(&[1.0, nan, nan, nan]), VerdictKind::NoLimitOscillation);
        assert_eq!(kind(&[nan, 1.0, 1.0, 1.0]), VerdictKind::Inconclusive);
        assert_eq!(
            kind(&[nan, 1.0, 1.0, 1.0, 1.0]),
            VerdictKind::Converged(1.0)
        );
    }

    #[test]
    fn bounded_wandering_is_no_limit() {
        let values = [0.3, -0.8, 0.9, 0.1, 0.5, -0.6, -0.7, 0.2];
        assert_eq!(kind(&values), VerdictKind::NoLimitOscillation);
        // The same shape shrinking tenfold per block is not flagged.
        let shrinking = [0.3, -0.8, 0.9, 0.1, 0.05, -0.06, -0.07, 0.02];
        assert_eq!(kind(&shrinking), VerdictKind::Inconclusive);
    }

    #[test]
    fn relative_tolerance_above_one() {
        let big = [1e9, 1e9 + 1.0, 1e9 + 2.0, 1e9 + 3.0];
        assert_eq!(
            classify(&trace_of(&big), 1e-8, 3).kind,
            VerdictKind::Converged(1e9 + 3.0)
        );
        let small = [0.5, 0.5 + 2e-8, 0.5 + 4e-8, 0.5 + 6e-8];
        assert!(!classify(&trace_of(&small), 1e-8, 3).is_converged());
    }

    #[test]
    fn spec_classify_examples() {
        let x = parse("x").unwrap();
        let t = sample_one_sided(&x, "x", 2.0, Side::Right, 12).unwrap();
        let v = classify(&t, 1e-8, 3);
        assert!((v.value().unwrap() - 2.0).abs() <= 1e-8);
        let t = sample_one_sided(&parse("1/x").unwrap(), "x", 0.0, Side::Right, 12).unwrap();
        assert_eq!(classify(&t, 1e-8, 3).kind, VerdictKind::DivergesPlusInf);
    }

    #[test]
    fn sin_at_infinity_has_no_limit() {
        let f = parse("sin(x)").unwrap();
        let t = sample_at_infinity(&f, "x", Sign::Plus, 12, true, 0).unwrap();
        assert_eq!(classify(&t, 1e-8, 3).kind, VerdictKind::NoLimitOscillation);
    }

    #[test]
    fn two_sided_queries() {
        let q = |text: &str| {
            LimitQuery::new(
                parse(text).unwrap(),
                "x",
                Target::Finite {
                    point: 0.0,
                    approach: Approach::Both,
                },
            )
        };
        let v = limit(&q("sin(x)/x")).unwrap();
        assert!((v.value().unwrap() - 1.0).abs() <= 1e-6);
        assert_eq!(v.traces.len(), 2);
        assert_eq!(
            limit(&q("abs(x)/x")).unwrap().kind,
            VerdictKind::NoLimitOscillation
        );
        assert_eq!(
            limit(&q("1/x^2")).unwrap().kind,
            VerdictKind::DivergesPlusInf
        );
        assert_eq!(
            limit(&q("1/x")).unwrap().kind,
            VerdictKind::NoLimitOscillation
        );
    }

    #[test]
    fn early_stop_matches_classify_on_prefix() {
        let q = LimitQuery::new(parse("(2*x+1)/x").unwrap(), "x", Target::PlusInfinity);
        let v = limit(&q).unwrap();
        assert!((v.value().unwrap() - 2.0).abs() <= 1e-6);
        assert!(v.iterations_used < q.n + 1);
        let full = sample_at_infinity(&q.expr, "x", Sign::Plus, q.n, false, 0).unwrap();
        let prefix = full.truncated(v.iterations_used);
        assert_eq!(prefix, v.traces[0]);
        assert_eq!(classify(&prefix, q.tol, q.window).kind, v.kind);
    }

    #[test]
    fn query_validation() {
        let base = LimitQuery::new(parse("x").unwrap(), "x", Target::PlusInfinity);
        assert!(base.clone().with_n(1).validate().is_err());
        assert!(base.clone().with_tol(0.0).validate().is_err());
        assert!(base.clone().with_tol(f64::NAN).validate().is_err());
        assert!(base.clone().with_window(1).validate().is_err());
        assert!(base.clone().with_n(4).with_window(5).validate().is_err());
        assert!(base.clone().validate().is_ok());
        let nan_point = LimitQuery::new(
            parse("x").unwrap(),
            "x",
            Target::Finite {
                point: f64::NAN,
                approach: Approach::Right,
            },
        );
        assert!(matches!(
            limit(&nan_point),
            Err(LimitError::InvalidQuery(_))
        ));
        let multi = LimitQuery::new(parse("x*y").unwrap(), "x", Target::PlusInfinity);
        assert!(matches!(
            limit(&multi),
            Err(LimitError::Expr(ExprError::Arity { .. }))
        ));
    }
}
