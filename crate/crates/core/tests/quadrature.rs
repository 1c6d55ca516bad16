use numcalc::expr::parse;
use numcalc::quad::{integrate, riemann, riemann_vectorized, Partition, QuadratureSpec, Rule};
use proptest::prelude::*;

fn integral(text: &str, a: f64, b: f64, n: usize, rule: Rule) -> f64 {
    let spec = QuadratureSpec::new(
        parse(text).unwrap(),
        "x",
        Partition::new(a, b, n).unwrap(),
        rule,
    )
    .unwrap();
    integrate(&spec).unwrap()
}

const RULES: [Rule; 5] = [
    Rule::RiemannLeft,
    Rule::RiemannRight,
    Rule::RiemannMidpoint,
    Rule::Trapezoid,
    Rule::Simpson,
];

#[test]
fn convergence_orders() {
    let exact = 1.0 / 3.0;
    for n in [8, 16, 32, 64] {
        let trap = (integral("x^2", 0.0, 1.0, n, Rule::Trapezoid) - exact)
            / (integral("x^2", 0.0, 1.0, 2 * n, Rule::Trapezoid) - exact);
        assert!((3.6..=4.4).contains(&trap), "trapezoid n={n}: {trap}");
        let right = (integral("x^2", 0.0, 1.0, n, Rule::RiemannRight) - exact)
            / (integral("x^2", 0.0, 1.0, 2 * n, Rule::RiemannRight) - exact);
        assert!((1.8..=2.2).contains(&right), "right n={n}: {right}");
        let mid = (integral("x^2", 0.0, 1.0, n, Rule::RiemannMidpoint) - exact)
            / (integral("x^2", 0.0, 1.0, 2 * n, Rule::RiemannMidpoint) - exact);
        assert!((3.6..=4.4).contains(&mid), "midpoint n={n}: {mid}");
    }
    let e = 1f64.exp() - 1.0;
    let simpson = (integral("exp(x)", 0.0, 1.0, 8, Rule::Simpson) - e)
        / (integral("exp(x)", 0.0, 1.0, 16, Rule::Simpson) - e);
    assert!((14.0..=18.0).contains(&simpson), "simpson: {simpson}");
}

#[test]
fn monotone_integrands_are_bracketed() {
    for (text, a, b, exact) in [
        ("x^3", 0.0, 2.0, 4.0),
        ("exp(x)", 0.0, 1.0, 1f64.exp() - 1.0),
        ("sqrt(x)", 1.0, 4.0, 14.0 / 3.0),
    ] {
        for n in [1, 3, 10, 100] {
            let left = integral(text, a, b, n, Rule::RiemannLeft);
            let right = integral(text, a, b, n, Rule::RiemannRight);
            assert!(
                left <= exact && exact <= right,
                "{text} n={n}: {left} {right}"
            );
        }
    }
}

proptest! {
    #[test]
    fn additivity_over_adjacent_intervals(
        m in 1usize..200,
        rule in prop::sample::select(&RULES[..]),
        c in -3.0f64..3.0,
    ) {
        let n = 2 * m;
        let text = format!("sin(x) + {c}*x^2");
        let whole = integral(&text, 0.0, 2.0, 2 * n, rule);
        let parts = integral(&text, 0.0, 1.0, n, rule) + integral(&text, 1.0, 2.0, n, rule);
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.abs().max(1.0), "{} vs {}", whole, parts);
    }

    #[test]
    fn vectorized_riemann_matches_loop(
        a in -10.0f64..10.0,
        width in 0.01f64..20.0,
        n in 1usize..500,
        rule in prop::sample::select(&[Rule::RiemannLeft, Rule::RiemannRight, Rule::RiemannMidpoint][..]),
        text in prop::sample::select(&["x^2", "sin(3*x)*exp(-x/4)", "1/(1 + x^2)", "abs(x) - x^3"][..]),
    ) {
        let spec = QuadratureSpec::new(parse(text).unwrap(), "x", Partition::new(a, a + width, n).unwrap(), rule).unwrap();
        prop_assert_eq!(riemann(&spec).unwrap().to_bits(), riemann_vectorized(&spec).unwrap().to_bits());
    }
}
