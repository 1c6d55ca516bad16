use numcalc::descent::{
    gradient_descent, gradient_descent_momentum, DescentConfig, StepMode, Termination,
};
use numcalc::expr::parse;
use proptest::prelude::*;

fn check_termination(run: &numcalc::descent::DescentTrace, cfg: &DescentConfig) {
    let last = run.last();
    match run.termination {
        Termination::GradientToleranceMet => assert!(last.grad_norm <= cfg.grad_tol),
        Termination::MaxItersReached => {
            assert_eq!(run.steps(), cfg.max_iters);
            assert!(last.grad_norm > cfg.grad_tol);
        }
        Termination::Diverged => assert!(last.grad_norm.is_nan()),
        Termination::LineSearchFailed => assert!(last.grad_norm > cfg.grad_tol),
    }
    assert!(run.steps() <= cfg.max_iters);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn small_steps_contract_monotonically(
        alpha in 0.01f64..0.45,
        x0 in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
    ) {
        let f = parse("x^2").unwrap();
        let cfg = DescentConfig::new(vec![x0]).with_alpha(alpha);
        let run = gradient_descent(&f, &["x"], &cfg).unwrap();
        prop_assert_eq!(run.termination, Termination::GradientToleranceMet);
        for w in run.iterates.windows(2) {
            prop_assert!(w[1].x[0].abs() < w[0].x[0].abs());
        }
        check_termination(&run, &cfg);
    }

    #[test]
    fn backtracking_never_increases_the_objective(
        a in 0.5f64..20.0,
        b in 0.5f64..20.0,
        alpha in 0.1f64..5.0,
        x0 in -5.0f64..5.0,
        y0 in -5.0f64..5.0,
    ) {
        let f = parse(&format!("{a}*x^2 + {b}*y^2")).unwrap();
        let cfg = DescentConfig::new(vec![x0, y0])
            .with_alpha(alpha)
            .with_step_mode(StepMode::Backtracking)
            .with_max_iters(300);
        let run = gradient_descent(&f, &["x", "y"], &cfg).unwrap();
        for w in run.iterates.windows(2) {
            prop_assert!(w[1].fx < w[0].fx);
        }
        check_termination(&run, &cfg);
    }

    #[test]
    fn maximizing_mirrors_minimizing_the_negation(
        c in -3.0f64..3.0,
        x0 in -3.0f64..3.0,
        beta in prop::option::of(0.0f64..0.9),
    ) {
        let hill = parse(&format!("-(x - {c})^2 + 1")).unwrap();
        let valley = parse(&format!("-(-(x - {c})^2 + 1)")).unwrap();
        let up = DescentConfig::new(vec![x0]).maximizing().with_max_iters(200);
        let down = DescentConfig::new(vec![x0]).with_max_iters(200);
        let (a, b) = match beta {
            Some(beta) => (
                gradient_descent_momentum(&hill, &["x"], &up.with_beta(beta)).unwrap(),
                gradient_descent_momentum(&valley, &["x"], &down.with_beta(beta)).unwrap(),
            ),
            None => (
                gradient_descent(&hill, &["x"], &up).unwrap(),
                gradient_descent(&valley, &["x"], &down).unwrap(),
            ),
        };
        prop_assert_eq!(a.termination, b.termination);
        prop_assert_eq!(a.iterates.len(), b.iterates.len());
        for (p, q) in a.iterates.iter().zip(&b.iterates) {
            prop_assert!((p.x[0] - q.x[0]).abs() <= 1e-10);
            prop_assert!((p.fx + q.fx).abs() <= 1e-10);
        }
    }

    #[test]
    fn termination_matches_final_state(
        alpha in 0.01f64..2.0,
        max_iters in 1usize..60,
        x0 in -3.0f64..3.0,
    ) {
        let f = parse("x^4 - x^2").unwrap();
        let cfg = DescentConfig::new(vec![x0]).with_alpha(alpha).with_max_iters(max_iters);
        if let Ok(run) = gradient_descent(&f, &["x"], &cfg) {
            check_termination(&run, &cfg);
        }
    }
}
