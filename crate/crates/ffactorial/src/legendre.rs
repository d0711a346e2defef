//! The f-factorial as an exact exponent vector: for each prime,
//! `sum_k floor(n / (f(p) p^k))`, assembled over the finite support
//! `{p : f(p) <= n}`.

use crate::error::{Error, Result};
use crate::fmap::{Divergence, FMap};
use crate::interval::BoundedValue;
use crate::primes::{primes_up_to, PrimeTable};
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Sparse prime-to-exponent form of a generalized factorial.
///
/// Zero exponents are never stored; for divergent-free maps the support
/// is exactly `{p : f(p) <= n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    /// DSL descriptor of the map this factorial came from.
    pub f_descriptor: String,
    /// The argument `n`.
    pub n: u64,
    entries: BTreeMap<u64, u64>,
}

impl ExponentVector {
    pub fn exponent_of(&self, p: u64) -> u64 {
        self.entries.get(&p).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&p, &e)| (p, e))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands to the big-integer value `prod p^e`.
    pub fn to_integer(&self) -> Integer {
        let mut acc = Integer::from(1);
        for (&p, &e) in &self.entries {
            acc *= Integer::from(p).pow(u32::try_from(e).expect("exponent fits u32"));
        }
        acc
    }

    /// True iff `self` divides `other`: every exponent of `self` is
    /// at most the matching exponent of `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.entries
            .iter()
            .all(|(p, e)| other.exponent_of(*p) >= *e)
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            f: &'a str,
            n: u64,
            factors: Factors<'a>,
        }
        struct Factors<'a>(&'a BTreeMap<u64, u64>);
        impl Serialize for Factors<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (p, e) in self.0 {
                    seq.serialize_element(&[*p, *e])?;
                }
                seq.end()
            }
        }
        Wire {
            f: &self.f_descriptor,
            n: self.n,
            factors: Factors(&self.entries),
        }
        .serialize(s)
    }
}

/// `sum_{k >= 0} floor(n / (f(p) p^k))`, summed until the first zero term
/// (valid since terms are nonincreasing in `k`).
pub fn exponent(f: &FMap, p: u64, n: u64) -> Result<u64> {
    let mut total = 0u64;
    let mut k = 0u32;
    loop {
        let term = f.floor_quotient(n, p, k)?;
        if term == 0 {
            return Ok(total);
        }
        total += term;
        k += 1;
    }
}

fn require_divergent(f: &FMap) -> Result<()> {
    if f.divergence() != Divergence::TendsToInfinity {
        return Err(Error::DivergentFactorial { f: f.to_string() });
    }
    Ok(())
}

/// The exact support of `n!_f`: all primes with `f(p) <= n`.
pub fn contributing_primes(f: &FMap, n: u64) -> Result<Vec<u64>> {
    require_divergent(f)?;
    let bound = f.support_bound(n)?;
    let table = primes_up_to(bound)?;
    let x = Rational::from(n);
    let mut out = Vec::new();
    for &p in table.primes() {
        if f.le_rational(p, &x)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Same, but reusing a caller-provided table covering the support bound.
pub fn contributing_primes_in(f: &FMap, n: u64, table: &PrimeTable) -> Result<Vec<u64>> {
    require_divergent(f)?;
    let bound = f.support_bound(n)?;
    assert!(table.limit() >= bound, "prime table too small for support");
    let x = Rational::from(n);
    let mut out = Vec::new();
    for &p in table.up_to(bound) {
        if f.le_rational(p, &x)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// The f-factorial `n!_f` as an exponent vector.
pub fn factorial(f: &FMap, n: u64) -> Result<ExponentVector> {
    let mut entries = BTreeMap::new();
    for p in contributing_primes(f, n)? {
        let e = exponent(f, p, n)?;
        if e > 0 {
            entries.insert(p, e);
        }
    }
    Ok(ExponentVector {
        f_descriptor: f.to_string(),
        n,
        entries,
    })
}

/// Enclosure of `log n!_f = sum_p e_p ln p`, merged in ascending-prime
/// order; width at most `2^(-precision+4)`.
pub fn log_factorial(f: &FMap, n: u64, precision: u32) -> Result<BoundedValue> {
    let vec = factorial(f, n)?;
    Ok(log_of_vector(&vec, precision))
}

/// Log enclosure of an already-computed exponent vector.
pub fn log_of_vector(vec: &ExponentVector, precision: u32) -> BoundedValue {
    let work = precision + 32;
    let mut acc = BoundedValue::zero(work);
    for (p, e) in vec.entries() {
        acc.add_assign(&BoundedValue::ln_u64(work, p).mul_u64(e));
    }
    acc.with_prec(precision)
}

/// `n!_f / (k!_f (n-k)!_f)`, computed on exponent vectors. A negative
/// exponent after subtraction would contradict the binomial-integrality
/// guarantee and is reported as [`Error::ViolatedDivisibility`].
pub fn generalized_binomial(f: &FMap, n: u64, k: u64) -> Result<Integer> {
    assert!(k <= n, "k must satisfy 0 <= k <= n");
    let top = factorial(f, n)?;
    let left = factorial(f, k)?;
    let right = factorial(f, n - k)?;
    let mut acc = Integer::from(1);
    for (p, e) in top.entries() {
        let sub = left.exponent_of(p) + right.exponent_of(p);
        if sub > e {
            return Err(Error::ViolatedDivisibility { p });
        }
        acc *= Integer::from(p).pow(u32::try_from(e - sub).unwrap());
    }
    // any prime present only in the denominator would also violate
    for (p, _) in left.entries().chain(right.entries()) {
        if left.exponent_of(p) + right.exponent_of(p) > top.exponent_of(p) {
            return Err(Error::ViolatedDivisibility { p });
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm1() -> FMap {
        "x-1".parse().unwrap()
    }

    #[test]
    fn identity_exponent_is_legendre() {
        // 4! = 2^3 * 3
        assert_eq!(exponent(&FMap::Identity, 2, 4).unwrap(), 3);
        assert_eq!(exponent(&FMap::Identity, 3, 4).unwrap(), 1);
    }

    #[test]
    fn log_map_exponent_example() {
        // 3!_{log x} = 1862340480 = 2^7 * 3^4 * 5 * 7^2 * 11 * 13
        assert_eq!(exponent(&FMap::LogMap, 2, 3).unwrap(), 7);
    }

    #[test]
    fn shifted_exponent_example() {
        assert_eq!(exponent(&xm1(), 3, 4).unwrap(), 2);
    }

    #[test]
    fn contributing_primes_examples() {
        assert_eq!(
            contributing_primes(&xm1(), 10).unwrap(),
            vec![2, 3, 5, 7, 11]
        );
        // log p <= 3  <=>  p <= e^3 = 20.08...
        assert_eq!(
            contributing_primes(&FMap::LogMap, 3).unwrap(),
            vec![2, 3, 5, 7, 11, 13, 17, 19]
        );
        assert!(matches!(
            contributing_primes(&FMap::SineAbs, 1),
            Err(Error::DivergentFactorial { .. })
        ));
    }

    #[test]
    fn identity_factorials_are_ordinary() {
        let expect = [1u64, 1, 2, 6, 24, 120];
        for (n, &want) in expect.iter().enumerate() {
            let v = factorial(&FMap::Identity, n as u64).unwrap();
            assert_eq!(v.to_integer(), want);
        }
    }

    #[test]
    fn log_map_factorial_sequence() {
        let expect = [1u64, 2, 840, 1862340480];
        for (n, &want) in expect.iter().enumerate() {
            let v = factorial(&FMap::LogMap, n as u64).unwrap();
            assert_eq!(v.to_integer(), want, "n = {n}");
        }
    }

    #[test]
    fn shifted_factorial_is_bhargava_over_primes() {
        // n!_{x-1} = (n+1)-th Bhargava factorial over the primes
        assert_eq!(factorial(&xm1(), 4).unwrap().to_integer(), 5760);
        assert_eq!(factorial(&xm1(), 5).unwrap().to_integer(), 11520);
    }

    #[test]
    fn log_factorial_encloses_exact_log() {
        for n in [1u64, 10, 50, 100] {
            let vec = factorial(&xm1(), n).unwrap();
            let enclosure = log_of_vector(&vec, 64);
            let exact = BoundedValue::ln_rational(128, &Rational::from(vec.to_integer()));
            assert!(enclosure.overlaps(&exact), "n = {n}");
        }
        let v = log_factorial(&xm1(), 1, 64).unwrap();
        assert!(v.contains_f64(2f64.ln()));
    }

    #[test]
    fn table_log_values() {
        let v = log_factorial(&xm1(), 10, 96).unwrap();
        assert!(v.contains_f64(26.631004228809558));
        let v = log_factorial(&FMap::HalfCeiling, 10, 96).unwrap();
        assert!(v.contains_f64(56.489971439484028));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(generalized_binomial(&FMap::Identity, 5, 2).unwrap(), 10);
        // 4!_{x-1} / (2!_{x-1})^2 = 5760 / 576 = 10
        assert_eq!(generalized_binomial(&xm1(), 4, 2).unwrap(), 10);
        for f in [FMap::Identity, xm1(), FMap::HalfCeiling, FMap::LogMap] {
            assert_eq!(generalized_binomial(&f, 7, 0).unwrap(), 1, "f = {f}");
        }
    }

    #[test]
    fn divides_examples() {
        for n in [0u64, 1, 5, 17, 40] {
            let ordinary = factorial(&FMap::Identity, n).unwrap();
            let shifted = factorial(&xm1(), n).unwrap();
            assert!(ordinary.divides(&shifted), "n = {n}");
        }
        let v = factorial(&xm1(), 7).unwrap();
        assert!(v.divides(&v));
        let two = factorial(&FMap::Identity, 2).unwrap();
        let one = factorial(&FMap::Identity, 1).unwrap();
        assert!(!two.divides(&one));
    }

    #[test]
    fn exponent_vector_json_shape() {
        let v = factorial(&xm1(), 5).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["f"], "x-1");
        assert_eq!(json["n"], 5);
        assert_eq!(
            json["factors"],
            serde_json::json!([[2, 8], [3, 2], [5, 1]])
        );
    }

    #[test]
    fn support_invariant_no_zero_exponents() {
        for n in [0u64, 1, 7, 30] {
            let v = factorial(&FMap::HalfCeiling, n).unwrap();
            let support: Vec<u64> = v.support().collect();
            assert_eq!(support, contributing_primes(&FMap::HalfCeiling, n).unwrap());
            assert!(v.entries().all(|(_, e)| e >= 1));
        }
    }
}
