//! The two comparison tables: log n!_f against log(alpha n)! + beta_f n,
//! with the residual-over-n trend tracking the o(n) error term.

use ffactorial::asymptotics::{render_text, residual_trend, table_rows};
use ffactorial::fmap::LinearCertificate;
use ffactorial::FMap;

fn main() -> ffactorial::Result<()> {
    let rows: Vec<u64> = (1..=10).chain([100, 1000]).collect();

    let xm1: FMap = "x-1".parse()?;
    let cert1 = LinearCertificate::new(1, 2);
    println!("f = x-1 (lhs = log (n+1)-th Bhargava factorial over the primes):");
    print!("{}", render_text(&table_rows(&xm1, &cert1, &rows, 96)?));

    let cert2 = LinearCertificate::new(2, 4);
    println!("\nf = ceil((x-1)/2):");
    print!("{}", render_text(&table_rows(&FMap::HalfCeiling, &cert2, &rows, 96)?));

    println!("\n|residual|/n trend for f = ceil((x-1)/2):");
    for (n, v) in residual_trend(&FMap::HalfCeiling, &cert2, &[100, 1000, 10000])? {
        println!("  n = {n:<6} |r(n)|/n = {v:.6}");
    }
    Ok(())
}
