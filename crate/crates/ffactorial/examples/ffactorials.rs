//! Exact f-factorials for the built-in maps: sequences, factorizations,
//! and log enclosures.

use ffactorial::legendre::{factorial, generalized_binomial, log_factorial};
use ffactorial::FMap;

fn main() -> ffactorial::Result<()> {
    for dsl in ["x", "x-1", "ceil((x-1)/2)", "log(x)"] {
        let f: FMap = dsl.parse()?;
        let terms: Vec<String> = (0..=5)
            .map(|n| Ok(factorial(&f, n)?.to_integer().to_string()))
            .collect::<ffactorial::Result<_>>()?;
        println!("n!_({dsl}) for n = 0..5: {}", terms.join(", "));
    }

    let f: FMap = "x-1".parse()?;
    let v = factorial(&f, 10)?;
    let parts: Vec<String> = v.entries().map(|(p, e)| format!("{p}^{e}")).collect();
    println!("\n10!_(x-1) = {} = {}", v.to_integer(), parts.join(" * "));
    println!("log 10!_(x-1) = {}", log_factorial(&f, 10, 96)?);

    println!(
        "\ngeneralized binomial (x-1, n=4, k=2): {}",
        generalized_binomial(&f, 4, 2)?
    );

    // a map that does not tend to infinity has no factorial
    let bad: FMap = "abs(sin(x))".parse()?;
    match factorial(&bad, 1) {
        Err(e) => println!("abs(sin(x)): {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
