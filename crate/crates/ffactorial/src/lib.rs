//! Generalized factorials from Legendre-type prime-power formulas.
//!
//! For a map `f` on the primes, the f-factorial is
//! `n!_f = prod_p p^{sum_k floor(n / (f(p) p^k))}`, which recovers the
//! ordinary factorial at `f(x) = x` and the Bhargava factorial over the
//! primes at `f(x) = x - 1`. The crate computes these factorials exactly
//! as exponent vectors, cross-validates them against an independent
//! greedy p-ordering implementation, and evaluates the constants in the
//! expansion `log n!_f = log(alpha n)! + beta_f n + o(n)` as guaranteed
//! interval enclosures.
//!
//! Start with the `examples/` directory: each example exercises one
//! capability end to end. The `ffactorial` binary exposes the same
//! surface on the command line.

pub mod asymptotics;
pub mod bhargava;
pub mod chebyshev;
pub mod constants;
pub mod error;
pub mod fmap;
pub mod interval;
pub mod legendre;
pub mod primes;
pub mod verify;

pub use error::{Error, Result};
pub use fmap::{FMap, LinearCertificate};
pub use interval::BoundedValue;
pub use legendre::{factorial, log_factorial, ExponentVector};
