//! Series convergence from partial sums.
//!
//! Partial sums are recorded at geometrically spaced term counts between 1 and
//! `max_terms`, so the gaps between checkpoints widen as the sum proceeds. A
//! slowly drifting sum (the harmonic series, say) then moves by a visible
//! amount between checkpoints instead of creeping by `1/N` per term. The
//! checkpoint sequence is classified by [`limits::classify`] unchanged.
//!
//! Very slowly diverging series can still come out inconclusive: a heuristic
//! that only sees finitely many partial sums cannot separate `ln N` growth
//! from slow convergence in general.

use thiserror::Error;

use crate::expr::{Expr, ExprError};
use crate::limits::{self, LimitVerdict, SampleTrace};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("invalid series query: {0}")]
    InvalidQuery(String),
    #[error("term is not finite at index {k}")]
    NonFiniteTerm { k: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesQuery {
    pub term: Expr,
    pub index_var: String,
    /// First index of the sum.
    pub start: u64,
    /// Number of terms summed; the last checkpoint covers all of them.
    pub max_terms: u64,
    /// Number of geometrically spaced term counts to record, before
    /// duplicates from rounding are removed.
    pub checkpoints: usize,
    pub tol: f64,
    pub window: usize,
}

impl SeriesQuery {
    pub const DEFAULT_START: u64 = 1;
    pub const DEFAULT_MAX_TERMS: u64 = 10_000;
    pub const DEFAULT_CHECKPOINTS: usize = 30;

    pub fn new(term: Expr, index_var: impl Into<String>) -> SeriesQuery {
        SeriesQuery {
            term,
            index_var: index_var.into(),
            start: Self::DEFAULT_START,
            max_terms: Self::DEFAULT_MAX_TERMS,
            checkpoints: Self::DEFAULT_CHECKPOINTS,
            tol: limits::LimitQuery::DEFAULT_TOL,
            window: limits::LimitQuery::DEFAULT_WINDOW,
        }
    }

    pub fn with_start(mut self, start: u64) -> Self {
        self.start = start;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_checkpoints(mut self, checkpoints: usize) -> Self {
        self.checkpoints = checkpoints;
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

    pub fn validate(&self) -> Result<(), SeriesError> {
        let invalid = |msg: String| Err(SeriesError::InvalidQuery(msg));
        if self.window < 2 {
            return invalid(format!("window must be at least 2, got {}", self.window));
        }
        if self.max_terms < self.window as u64 {
            return invalid(format!(
                "max_terms ({}) must be at least the window ({})",
                self.max_terms, self.window
            ));
        }
        if self.checkpoints < 2 {
            return invalid(format!(
                "at least 2 checkpoints are required, got {}",
                self.checkpoints
            ));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return invalid(format!("tol must be positive and finite, got {}", self.tol));
        }
        // Indices are evaluated as f64 and must stay exact.
        let last = self.start.checked_add(self.max_terms - 1);
        if last.is_none_or(|last| last > (1u64 << 53)) {
            return invalid("index range exceeds 2^53".into());
        }
        self.term.ensure_univariate(&self.index_var)?;
        Ok(())
    }
}

/// Term counts near `max_terms^(j / (checkpoints - 1))`, ending at exactly
/// `max_terms`.
///
/// Consecutive counts are an odd number of terms apart. Otherwise the counts
/// can share a parity over the whole tail, and a sum such as `(-1)^k`, whose
/// partial sums depend only on the parity of `N`, would look constant.
pub fn checkpoint_counts(max_terms: u64, checkpoints: usize) -> Vec<u64> {
    let last = checkpoints.saturating_sub(1).max(1) as f64;
    let log_max = (max_terms as f64).ln();
    let mut counts = vec![max_terms];
    for j in (0..checkpoints.max(2) - 1).rev() {
        let next = *counts.last().expect("starts non-empty");
        let target = (log_max * j as f64 / last).exp().round() as u64;
        let mut count = target.clamp(1, max_terms).min(next.saturating_sub(1));
        if (next - count) % 2 == 0 {
            count = count.saturating_sub(1);
        }
        if count == 0 {
            break;
        }
        counts.push(count);
    }
    counts.reverse();
    counts
}

/// Partial sums `S_N = term(start) + ... + term(N)` at the checkpoints.
///
/// Entry `j` holds `x = N_j` (last index included) and `fx = S_{N_j}`. Terms
/// are accumulated one at a time in index order.
pub fn partial_sums(q: &SeriesQuery) -> Result<SampleTrace, SeriesError> {
    q.validate()?;
    let term = q.term.univariate(&q.index_var)?;
    let counts = checkpoint_counts(q.max_terms, q.checkpoints);
    let mut trace = SampleTrace::new();
    let mut sum = 0.0;
    let mut summed = 0u64;
    for count in counts {
        while summed < count {
            let k = q.start + summed;
            let value = term.call(k as f64);
            if !value.is_finite() {
                return Err(SeriesError::NonFiniteTerm { k });
            }
            sum += value;
            summed += 1;
        }
        trace.push((q.start + count - 1) as f64, sum);
    }
    Ok(trace)
}

/// Classifies the partial-sum checkpoints with [`limits::classify`].
pub fn classify_series(q: &SeriesQuery) -> Result<LimitVerdict, SeriesError> {
    let trace = partial_sums(q)?;
    Ok(limits::classify(&trace, q.tol, q.window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::limits::VerdictKind;

    fn query(text: &str) -> SeriesQuery {
        SeriesQuery::new(parse(text).unwrap(), "k")
    }

    #[test]
    fn checkpoints_are_geometric_and_end_at_max() {
        let counts = checkpoint_counts(10_000, 30);
        assert!(counts[0] <= 2);
        assert_eq!(*counts.last().unwrap(), 10_000);
        assert!(counts
            .windows(2)
            .all(|w| w[0] < w[1] && (w[1] - w[0]) % 2 == 1));
        assert!(counts.len() <= 30 && counts.len() > 20);
        // Late gaps grow by the common ratio 10000^(1/29) ~ 1.374.
        let n = counts.len();
        let ratio = counts[n - 1] as f64 / counts[n - 2] as f64;
        assert!((ratio - 1.374).abs() < 0.01, "{ratio}");
        assert_eq!(checkpoint_counts(1, 30), vec![1]);
        assert_eq!(checkpoint_counts(5, 2), vec![5]);
        assert_eq!(checkpoint_counts(6, 2), vec![1, 6]);
    }

    #[test]
    fn geometric_series() {
        let trace = partial_sums(&query("1/2^k").with_max_terms(64)).unwrap();
        let last = trace.last().unwrap();
        assert_eq!(last.x, 64.0);
        assert!((last.fx - 1.0).abs() <= 1e-12);
        let v = classify_series(&query("1/2^k")).unwrap();
        assert!((v.value().unwrap() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn zero_and_counting_series() {
        let zero = partial_sums(&query("0")).unwrap();
        assert!(zero.values().iter().all(|&s| s == 0.0));
        let count = partial_sums(&query("1")).unwrap();
        assert!(count.samples().iter().all(|s| s.fx == s.x));
    }

    #[test]
    fn start_offsets_the_index() {
        let q = query("k")
            .with_start(3)
            .with_max_terms(4)
            .with_checkpoints(2);
        let trace = partial_sums(&q).unwrap();
        // counts 1 and 4: S_3 = 3, S_6 = 3 + 4 + 5 + 6
        assert_eq!(trace.samples()[0].x, 3.0);
        assert_eq!(trace.samples()[0].fx, 3.0);
        assert_eq!(trace.samples()[1].x, 6.0);
        assert_eq!(trace.samples()[1].fx, 18.0);
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            classify_series(&query("k")).unwrap().kind,
            VerdictKind::DivergesPlusInf
        );
        let alternating = classify_series(&query("(-1)^k")).unwrap().kind;
        assert!(matches!(
            alternating,
            VerdictKind::NoLimitOscillation | VerdictKind::Inconclusive
        ));
    }

    #[test]
    fn errors() {
        assert_eq!(
            partial_sums(&query("1/k").with_start(0)),
            Err(SeriesError::NonFiniteTerm { k: 0 })
        );
        assert!(matches!(
            partial_sums(&query("k").with_max_terms(2)),
            Err(SeriesError::InvalidQuery(_))
        ));
        assert!(matches!(
            partial_sums(&query("k").with_tol(0.0)),
            Err(SeriesError::InvalidQuery(_))
        ));
        assert!(matches!(
            partial_sums(&query("k*n")),
            Err(SeriesError::Expr(ExprError::Arity { .. }))
        ));
    }
}
