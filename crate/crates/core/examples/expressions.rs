// Parse, print and evaluate expressions.

use numcalc::expr::{parse, Bindings};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse("-x^2 + 3*sin(pi*x)/(1 + y)")?;
    println!("parsed:     {f}");
    println!("free vars:  {:?}", f.free_vars());

    let at = Bindings::new().with("x", 0.5).with("y", 2.0);
    println!("f(0.5, 2) = {}", f.eval(&at)?);

    // Printing reparses to the same tree.
    assert!(parse(&f.to_string())?.same_structure(&f));

    // Whole columns at once, bit-identical to the scalar path.
    let g = parse("x^3 - 2*x")?;
    let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let ys = g.eval_vec("x", &xs)?;
    for (x, y) in xs.iter().zip(&ys) {
        assert_eq!(y.to_bits(), g.eval(&Bindings::one("x", *x))?.to_bits());
    }
    println!("{g} over {xs:?} = {ys:?}");

    for bad in ["2 +", "2x", "log(x)", "sin x"] {
        match parse(bad) {
            Ok(e) => println!("{bad:>8} -> {e}"),
            Err(err) => println!("{bad:>8} -> {err}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
