// Plain, momentum and backtracking gradient descent.

use numcalc::descent::{gradient_descent, gradient_descent_momentum, DescentConfig, StepMode};
use numcalc::expr::parse;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let bowl = parse("x^2")?;
    let run = gradient_descent(&bowl, &["x"], &DescentConfig::new(vec![1.0]))?;
    println!(
        "x^2, alpha 0.1:  {} after {} steps, x = {:e}",
        run.termination.name(),
        run.steps(),
        run.last().x[0]
    );
    for it in run.iterates.iter().take(4) {
        println!("    x = {:<22} f = {}", it.x[0], it.fx);
    }

    // Too large a step overshoots further every time.
    let cfg = DescentConfig::new(vec![1.0]).with_alpha(1.5);
    let run = gradient_descent(&bowl, &["x"], &cfg)?;
    println!(
        "x^2, alpha 1.5:  {} after {} steps",
        run.termination.name(),
        run.steps()
    );

    // Halving the step until the objective drops rescues it.
    let cfg = cfg.with_step_mode(StepMode::Backtracking);
    let run = gradient_descent(&bowl, &["x"], &cfg)?;
    println!(
        "  backtracking:  {} after {} steps",
        run.termination.name(),
        run.steps()
    );

    let valley = parse("x^2 + 10*y^2")?;
    let cfg = DescentConfig::new(vec![1.0, 1.0]).with_alpha(0.02);
    let plain = gradient_descent(&valley, &["x", "y"], &cfg)?;
    let heavy = gradient_descent_momentum(&valley, &["x", "y"], &cfg.clone().with_beta(0.9))?;
    println!(
        "x^2 + 10y^2:     plain {} steps, momentum {} steps",
        plain.steps(),
        heavy.steps()
    );

    let hill = parse("-(x - 2)^2 + 3")?;
    let run = gradient_descent(&hill, &["x"], &DescentConfig::new(vec![0.0]).maximizing())?;
    println!(
        "maximize:        x = {:.6} f = {:.6}",
        run.last().x[0],
        run.last().fx
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
