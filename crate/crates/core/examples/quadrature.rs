// Riemann sums, trapezoid and Simpson's rule.

use numcalc::expr::parse;
use numcalc::quad::{integrate, riemann, riemann_vectorized, Partition, QuadratureSpec, Rule};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("x^2")?;
    let exact = 1.0 / 3.0;
    let rules = [
        Rule::RiemannLeft,
        Rule::RiemannRight,
        Rule::RiemannMidpoint,
        Rule::Trapezoid,
        Rule::Simpson,
    ];
    println!("integral of x^2 over [0, 1], exact 1/3");
    for n in [4, 8, 16] {
        let mut row = format!("n = {n:<3}");
        for rule in rules {
            let spec = QuadratureSpec::new(f.clone(), "x", Partition::new(0.0, 1.0, n)?, rule)?;
            row += &format!("  {}: {:+.2e}", rule.name(), integrate(&spec)? - exact);
        }
        println!("{row}");
    }

    let spec = QuadratureSpec::new(
        parse("exp(-x^2)")?,
        "x",
        Partition::new(-2.0, 2.0, 1000)?,
        Rule::RiemannMidpoint,
    )?;
    let looped = riemann(&spec)?;
    let columns = riemann_vectorized(&spec)?;
    assert_eq!(looped.to_bits(), columns.to_bits());
    println!("exp(-x^2) on [-2, 2], midpoint n=1000: {looped}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
