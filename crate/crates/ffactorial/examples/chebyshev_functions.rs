//! The f-Chebyshev functions theta_f and psi_f, the change-of-variables
//! identity theta_f = theta o f^{-1}, and the certificate-map residual
//! whose decay tracks the o(n) error term.

use ffactorial::chebyshev::{
    corollary16_check, lemma14_residual, psi_f, theta_f, CertKind, Invertible,
};
use ffactorial::fmap::LinearCertificate;
use ffactorial::FMap;
use rug::Rational;

fn main() -> ffactorial::Result<()> {
    let xm1: FMap = "x-1".parse()?;
    println!("x     theta_(x-1)(x)  psi_(x-1)(x)");
    for x in [1i64, 2, 5, 10, 20, 50] {
        let q = Rational::from(x);
        println!(
            "{x:<5} {:<15.6} {:<15.6}",
            theta_f(&xm1, &q, 64)?.midpoint_f64(),
            psi_f(&xm1, &q, 64)?.midpoint_f64()
        );
    }

    let x = Rational::from(10);
    println!(
        "\ntheta_(x-1)(10) = theta(11): {}",
        corollary16_check(&Invertible::Map(xm1), &x, 64)?
    );
    let cert = LinearCertificate::new(1, 2);
    println!(
        "theta_F(5) = theta(F^-1(5)) for F(x) = x^2/(x+2): {}",
        corollary16_check(&Invertible::Cert(CertKind::F, cert.clone()), &Rational::from(5), 64)?
    );

    println!("\nresidual decay (alpha = 1, M = 2):");
    for n in [10u64, 100, 1000] {
        let r = lemma14_residual(&cert, n, 64)?;
        println!("  n = {n:<5} residual = {:+.6}", r.midpoint_f64());
    }
    Ok(())
}
