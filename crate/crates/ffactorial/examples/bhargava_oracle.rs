//! The greedy p-ordering factorial as an independent oracle: build
//! orderings, inspect v_n, and confirm (n+1)!_P = n!_(x-1) exactly.

use ffactorial::bhargava::{factorial_s, p_ordering, v_n, IntegerSet, TieBreak};
use ffactorial::legendre::factorial;
use ffactorial::FMap;

fn main() -> ffactorial::Result<()> {
    let primes = IntegerSet::primes(10_000)?;

    let ord = p_ordering(&primes, 2, 6, TieBreak::Smallest)?;
    println!("2-ordering of the primes: {:?}", ord.sequence);
    println!("step valuations:          {:?}", ord.step_valuations);

    for p in [2u64, 3, 5] {
        println!("v_4(primes, {p}) = {}", v_n(&primes, p, 4)?);
    }

    let seq: Vec<String> = (0..=6)
        .map(|n| Ok(factorial_s(&primes, n)?.to_string()))
        .collect::<ffactorial::Result<_>>()?;
    println!("\nn!_P for n = 0..6: {}", seq.join(", "));

    let xm1: FMap = "x-1".parse()?;
    println!("\ncross-check against the Legendre closed form:");
    for n in 0..=8u64 {
        let legendre = factorial(&xm1, n)?.to_integer();
        let ordering = factorial_s(&primes, (n + 1) as usize)?;
        assert_eq!(legendre, ordering);
        println!("  (n+1)!_P = n!_(x-1) = {legendre}  (n = {n})");
    }

    let zprefix = IntegerSet::explicit((0..=10).collect())?;
    println!("\n5!_Z = {} (ordinary factorial)", factorial_s(&zprefix, 5)?);
    Ok(())
}
