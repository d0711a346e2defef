//! OEIS A202367 via the half-ceiling Legendre formula: terms, and the
//! ratio structure between consecutive terms.

use ffactorial::asymptotics::a202367_sequence;
use ffactorial::bhargava::IntegerSet;

fn main() -> ffactorial::Result<()> {
    let terms = a202367_sequence(10)?;
    for (i, t) in terms.iter().enumerate() {
        println!("a({}) = {t}", i + 1);
    }

    println!("\nconsecutive ratios (each term divides the next):");
    for w in terms.windows(2) {
        let (num, den) = (&w[1], &w[0]);
        assert!(num.is_divisible(den));
        println!("  {}", rug::Integer::from(num / den));
    }

    let prefix = IntegerSet::a202367_prefix();
    println!("\nassociated set prefix S' = {:?}", prefix.elements());
    Ok(())
}
