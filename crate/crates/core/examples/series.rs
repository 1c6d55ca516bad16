// Classifying infinite series from checkpointed partial sums.

use numcalc::expr::parse;
use numcalc::series::{classify_series, partial_sums, SeriesQuery};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for term in ["0.5^k", "(-0.5)^k", "1/2^k + 1/3^k", "k", "(-1)^k", "1/k"] {
        let q = SeriesQuery::new(parse(term)?, "k");
        let v = classify_series(&q)?;
        match v.value() {
            Some(sum) => println!("{term:>14}  {} {sum}", v.kind.name()),
            None => println!("{term:>14}  {}", v.kind.name()),
        }
    }

    // The harmonic series drifts like ln N, too slowly to call.
    let q = SeriesQuery::new(parse("1/k")?, "k")
        .with_max_terms(1000)
        .with_checkpoints(6);
    for s in partial_sums(&q)?.samples() {
        println!(
            "    S({:<4}) = {:.6}   ln N + 0.5772 = {:.6}",
            s.x,
            s.fx,
            s.x.ln() + 0.5772
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
