// Forward-difference derivatives and gradients.

use numcalc::diff::{derivative, diff_quotient_trace, gradient, DiffOptions, DiffRequest};
use numcalc::expr::{parse, Bindings};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let req = DiffRequest::at(parse("x^2")?, "x", 3.0);
    println!("quotients of x^2 at 3:");
    for s in diff_quotient_trace(&req)?.samples() {
        println!("  h = {:<8e} q = {}", s.x, s.fx);
    }
    let d = derivative(&req)?;
    println!(
        "verdict {} estimate {:?}",
        d.verdict.kind.name(),
        d.estimate
    );

    for (text, a) in [
        ("sin(x)", 0.0),
        ("exp(x)", 1.0),
        ("x^3 - x", 2.0),
        ("sqrt(x)", 0.0),
    ] {
        let d = derivative(&DiffRequest::at(parse(text)?, "x", a))?;
        println!(
            "d/dx {text:<8} at {a}: {} {:?}",
            d.verdict.kind.name(),
            d.estimate
        );
    }

    let f = parse("x^2*y + sin(y)")?;
    let point = Bindings::new().with("x", 1.0).with("y", 0.5);
    let g = gradient(&f, &["x", "y"], &point, &DiffOptions::default())?;
    println!("grad {f} at (1, 0.5) = {g:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
