//! The asymptotic constants as enclosures: rigorous prime sums with
//! certified tail bounds, versus the fast extrapolated estimate.

use ffactorial::constants::{beta_f, constant_beta, constant_c, Mode};
use ffactorial::fmap::LinearCertificate;
use ffactorial::FMap;

fn main() -> ffactorial::Result<()> {
    let c = constant_c(1e-4, Mode::Rigorous)?;
    println!(
        "C    in [{:.10}, {:.10}]  ({} primes, tail <= {:.2e})",
        c.value.lo().to_f64(),
        c.value.hi().to_f64(),
        c.primes_used,
        c.tail_bound.hi().to_f64()
    );

    let b = constant_beta(1e-4, Mode::Rigorous)?;
    println!(
        "beta in [{:.10}, {:.10}]  ({} primes, tail <= {:.2e})",
        b.value.lo().to_f64(),
        b.value.hi().to_f64(),
        b.primes_used,
        b.tail_bound.hi().to_f64()
    );

    let fast = constant_c(1e-7, Mode::Accelerated)?;
    println!(
        "C accelerated: {:.10} (non-rigorous, step gap {:.2e})",
        fast.value.midpoint_f64(),
        fast.tail_bound.hi().to_f64()
    );

    // C is beta_f for f = x - 1 with certificate (1, 2)
    let via_f = beta_f(
        &"x-1".parse::<FMap>()?,
        &LinearCertificate::new(1, 2),
        1e-4,
        Mode::Rigorous,
    )?;
    println!(
        "beta_f(x-1) in [{:.10}, {:.10}] (identical sum, different route)",
        via_f.value.lo().to_f64(),
        via_f.value.hi().to_f64()
    );

    // beta = 2 (C - log 2): the summands agree term by term at odd primes
    let fast_beta = constant_beta(1e-7, Mode::Accelerated)?;
    let identity = 2.0 * (fast.value.midpoint_f64() - std::f64::consts::LN_2);
    println!(
        "2(C - log 2) = {identity:.10} vs beta = {:.10} (accelerated estimates)",
        fast_beta.value.midpoint_f64()
    );
    Ok(())
}
