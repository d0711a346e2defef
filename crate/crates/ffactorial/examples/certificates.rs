//! Linear certificates (alpha, M) with 0 <= 1/f(p) - alpha/p <= M/p^2:
//! exhaustive verification for the built-in maps and a violation witness.

use ffactorial::fmap::{certificate_gap, verify_certificate, LinearCertificate};
use ffactorial::primes::primes_up_to;
use ffactorial::FMap;

fn main() -> ffactorial::Result<()> {
    let table = primes_up_to(1_000_000)?;
    let pairs: [(FMap, LinearCertificate); 3] = [
        (FMap::Identity, LinearCertificate::new(1, 0)),
        ("x-1".parse()?, LinearCertificate::new(1, 2)),
        (FMap::HalfCeiling, LinearCertificate::new(2, 4)),
    ];
    for (f, cert) in pairs {
        let report = verify_certificate(&f, &cert, &table, 1_000_000)?;
        println!(
            "f = {f}: (alpha, M) = ({}, {}) holds for all {} primes <= 10^6",
            report.alpha, report.m, report.primes_checked
        );
        if let Some(reason) = report.closed_form {
            println!("  closed form: {reason}");
        }
        println!("  gap at p = 2: {}", certificate_gap(&f, cert.alpha, 2)?);
    }

    // a certificate that is too tight fails with a witness
    let xm1: FMap = "x-1".parse()?;
    match verify_certificate(&xm1, &LinearCertificate::new(1, 0), &table, 1_000) {
        Err(e) => println!("\n(1, 0) for x-1 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
