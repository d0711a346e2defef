//! The asymptotic constants as guaranteed enclosures: `beta_f` for a
//! certified map, and the two named specializations
//! `C = sum log p / (p-1)^2` and `beta = sum (log p/(p-1)) (p/ceil((p-1)/2) - 2)`.
//!
//! Rigorous mode sums over primes up to a cutoff `N` chosen so the
//! certificate tail bound `sum_{p > N} 2M log p / p^2 <= 2M (log N + 1)/N`
//! fits inside the tolerance. Accelerated mode extrapolates two floating
//! partial sums (`2 S(2N) - S(N)`) and is flagged as non-rigorous.

use crate::error::{Error, Result};
use crate::fmap::{FMap, LinearCertificate};
use crate::interval::BoundedValue;
use crate::primes::primes_up_to_cached;
use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

const WORK_PREC: u32 = 96;
const MIN_CUTOFF: u64 = 1 << 12;
const MAX_CUTOFF: u64 = 1 << 27;
const BLOCK: usize = 1 << 15;
const ACCEL_CUTOFF: u64 = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rigorous,
    Accelerated,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Rigorous => "rigorous",
            Mode::Accelerated => "accelerated",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rigorous" => Ok(Mode::Rigorous),
            "accelerated" => Ok(Mode::Accelerated),
            _ => Err(Error::Parse(format!("unknown mode: {s}"))),
        }
    }
}

/// A computed constant: the enclosure, how many primes went in, and the
/// bound used for everything omitted.
#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub value: BoundedValue,
    pub primes_used: u64,
    pub tail_bound: BoundedValue,
    pub target_tolerance: f64,
    pub mode: Mode,
}

impl Serialize for ConstantResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ConstantResult", 5)?;
        st.serialize_field("value_lo", &self.value.lo().to_f64())?;
        st.serialize_field("value_hi", &self.value.hi().to_f64())?;
        st.serialize_field("primes_used", &self.primes_used)?;
        st.serialize_field("tail_bound", &self.tail_bound.hi().to_f64())?;
        st.serialize_field("mode", self.mode.as_str())?;
        st.end()
    }
}

/// `2M (log N + 1) / N`, an upper bound for the omitted prime sum: each
/// term past `N` is at most `2M log p / p^2`, and
/// `sum_{p > N} log p / p^2 <= sum_{m > N} log m / m^2 <= (log N + 1)/N`.
fn tail_bound_at(two_m: &Rational, n: u64, prec: u32) -> BoundedValue {
    BoundedValue::ln_u64(prec, n)
        .add(&BoundedValue::from_u64(prec, 1))
        .mul_rational(&(Rational::from(two_m) / Rational::from(n)))
}

fn pick_cutoff(two_m: &Rational, tol: f64) -> u64 {
    let mut n = MIN_CUTOFF;
    while n < MAX_CUTOFF {
        if tail_bound_at(two_m, n, 64).hi().to_f64() <= 0.8 * tol {
            return n;
        }
        n *= 2;
    }
    MAX_CUTOFF
}

/// Sums `coeff(p) * ln p` over primes `p <= cutoff`, in ascending block
/// order (blocks evaluated concurrently, merged deterministically).
fn rigorous_sum<C>(coeff: C, two_m: &Rational, tol: f64) -> Result<ConstantResult>
where
    C: Fn(u64) -> Rational + Sync,
{
    assert!(tol > 0.0, "tolerance must be positive");
    if *two_m == 0 {
        // the certificate pins every term to exactly zero
        return Ok(ConstantResult {
            value: BoundedValue::zero(WORK_PREC),
            primes_used: 0,
            tail_bound: BoundedValue::zero(WORK_PREC),
            target_tolerance: tol,
            mode: Mode::Rigorous,
        });
    }
    let cutoff = pick_cutoff(two_m, tol);
    let table = primes_up_to_cached(cutoff, None)?;
    let partials: Vec<BoundedValue> = table
        .primes()
        .par_chunks(BLOCK)
        .map(|block| {
            let mut acc = BoundedValue::zero(WORK_PREC);
            for &p in block {
                let c = coeff(p);
                if c != 0 {
                    acc.add_assign(&BoundedValue::ln_u64(WORK_PREC, p).mul_rational(&c));
                }
            }
            acc
        })
        .collect();
    let mut sum = BoundedValue::zero(WORK_PREC);
    for part in &partials {
        sum.add_assign(part);
    }
    let tail = tail_bound_at(two_m, cutoff, WORK_PREC);
    // true value lies in [sum_lo, sum_hi + tail]: the omitted terms are
    // nonnegative under the certificate and bounded above by the tail
    let value = BoundedValue::from_endpoints(sum.lo().clone(), sum.add(&tail).hi().clone());
    let result = ConstantResult {
        value,
        primes_used: table.len() as u64,
        tail_bound: tail,
        target_tolerance: tol,
        mode: Mode::Rigorous,
    };
    if result.value.width_f64() > tol {
        return Err(Error::BudgetExceeded {
            tol,
            best_width: result.value.width_f64(),
        });
    }
    Ok(result)
}

/// Richardson-style extrapolation `2 S(2N) - S(N)` of floating partial
/// sums; fast, non-rigorous, reported with the step gap as an error
/// estimate.
fn accelerated_sum<C>(coeff: C, tol: f64) -> Result<ConstantResult>
where
    C: Fn(u64) -> f64 + Sync,
{
    let n = ACCEL_CUTOFF;
    let table = primes_up_to_cached(2 * n, None)?;
    let (s_half, s_full) = table
        .primes()
        .par_chunks(BLOCK)
        .map(|block| {
            let mut half = 0.0f64;
            let mut full = 0.0f64;
            for &p in block {
                let term = coeff(p) * (p as f64).ln();
                full += term;
                if p <= n {
                    half += term;
                }
            }
            (half, full)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let value = 2.0 * s_full - s_half;
    let step = (s_full - s_half).abs();
    Ok(ConstantResult {
        value: BoundedValue::from_f64(WORK_PREC, value),
        primes_used: table.len() as u64,
        tail_bound: BoundedValue::from_f64(WORK_PREC, step),
        target_tolerance: tol,
        mode: Mode::Accelerated,
    })
}

/// The exact per-prime coefficient of `ln p` in `beta_f`:
/// `(p/(p-1)) * (1/f(p) - alpha/p)`.
fn beta_f_coeff(f: &FMap, alpha: u64, p: u64) -> Result<Rational> {
    let fp = f
        .eval_exact(p)
        .ok_or_else(|| Error::Unsupported { f: f.to_string() })??;
    let gap = fp.recip() - Rational::from((alpha, p));
    Ok(gap * Rational::from((p, p - 1)))
}

/// `beta_f = sum_p (p log p/(p-1)) (1/f(p) - alpha/p)` for a map with a
/// verified linear certificate.
pub fn beta_f(f: &FMap, cert: &LinearCertificate, tol: f64, mode: Mode) -> Result<ConstantResult> {
    if f.eval_exact(2).is_none() {
        return Err(Error::Unsupported { f: f.to_string() });
    }
    let two_m = Rational::from(&cert.m) * Rational::from(2);
    match mode {
        Mode::Rigorous => rigorous_sum(|p| beta_f_coeff(f, cert.alpha, p).unwrap(), &two_m, tol),
        Mode::Accelerated => {
            if two_m == 0 {
                return rigorous_sum(|_| Rational::new(), &two_m, tol);
            }
            let f = f.clone();
            let alpha = cert.alpha;
            accelerated_sum(move |p| beta_f_coeff(&f, alpha, p).unwrap().to_f64(), tol)
        }
    }
}

/// `C = sum_p log p / (p-1)^2`.
pub fn constant_c(tol: f64, mode: Mode) -> Result<ConstantResult> {
    let two_m = Rational::from(4); // from the (alpha, M) = (1, 2) certificate
    match mode {
        Mode::Rigorous => rigorous_sum(
            |p| Rational::from((Integer::from(1), Integer::from(p - 1).square())),
            &two_m,
            tol,
        ),
        Mode::Accelerated => accelerated_sum(
            |p| {
                let q = (p - 1) as f64;
                1.0 / (q * q)
            },
            tol,
        ),
    }
}

fn beta_term_coeff(p: u64) -> Rational {
    // (1/(p-1)) * (p / ceil((p-1)/2) - 2)
    let half = (p - 1).div_ceil(2);
    let inner = Rational::from((p, half)) - Rational::from(2);
    inner / Rational::from(p - 1)
}

/// `beta = sum_p (log p/(p-1)) (p/ceil((p-1)/2) - 2)`.
pub fn constant_beta(tol: f64, mode: Mode) -> Result<ConstantResult> {
    let two_m = Rational::from(8); // from the (alpha, M) = (2, 4) certificate
    match mode {
        Mode::Rigorous => rigorous_sum(beta_term_coeff, &two_m, tol),
        Mode::Accelerated => accelerated_sum(|p| beta_term_coeff(p).to_f64(), tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm1() -> FMap {
        "x-1".parse().unwrap()
    }

    #[test]
    fn tail_bound_dominates_sampled_tail() {
        // spot-check the integral bound: sum_{N < m <= 50 N} log m / m^2
        // stays below (log N + 1)/N for a few N
        for n in [100u64, 1_000, 10_000] {
            let mut partial = 0.0;
            for m in (n + 1)..=(50 * n) {
                let x = m as f64;
                partial += x.ln() / (x * x);
            }
            let bound = ((n as f64).ln() + 1.0) / n as f64;
            assert!(partial < bound, "N = {n}: {partial} vs {bound}");
        }
    }

    #[test]
    fn three_term_partial_sum_below_c() {
        let partial = 2f64.ln() + 3f64.ln() / 4.0 + 5f64.ln() / 16.0;
        assert!((partial - 1.0684).abs() < 1e-3);
        let c = constant_c(1e-2, Mode::Rigorous).unwrap();
        assert!(partial < c.value.lo().to_f64());
    }

    #[test]
    fn c_loose_tolerance_contains_reference() {
        let c = constant_c(1e-2, Mode::Rigorous).unwrap();
        assert!(c.value.contains_f64(1.2269688));
        assert!(c.value.width_f64() <= 1e-2);
        let tighter = constant_c(1e-4, Mode::Rigorous).unwrap();
        assert!(tighter.primes_used > c.primes_used);
        assert!(tighter.value.contains_f64(1.2269688));
    }

    #[test]
    fn beta_loose_tolerance_contains_reference() {
        let b = constant_beta(1e-3, Mode::Rigorous).unwrap();
        assert!(b.value.contains_f64(1.0676432));
        assert!(b.value.width_f64() <= 1e-3);
    }

    #[test]
    fn beta_term_values() {
        assert_eq!(beta_term_coeff(2), 0);
        // p = 3: (1/2)(3/1 - 2) = 1/2, so term = (log 3)/2
        assert_eq!(beta_term_coeff(3), Rational::from((1, 2)));
    }

    #[test]
    fn identity_beta_f_is_exactly_zero() {
        let cert = LinearCertificate::new(1, 0);
        let r = beta_f(&FMap::Identity, &cert, 1e-9, Mode::Rigorous).unwrap();
        assert_eq!(r.value.width_f64(), 0.0);
        assert!(r.value.contains_f64(0.0));
        assert_eq!(r.primes_used, 0);
    }

    #[test]
    fn beta_f_matches_named_constants() {
        let c = constant_c(1e-3, Mode::Rigorous).unwrap();
        let via_f = beta_f(&xm1(), &LinearCertificate::new(1, 2), 1e-3, Mode::Rigorous).unwrap();
        assert!(
            (c.value.midpoint_f64() - via_f.value.midpoint_f64()).abs()
                <= c.value.width_f64() + via_f.value.width_f64()
        );

        let b = constant_beta(1e-3, Mode::Rigorous).unwrap();
        let via_f = beta_f(
            &FMap::HalfCeiling,
            &LinearCertificate::new(2, 4),
            1e-3,
            Mode::Rigorous,
        )
        .unwrap();
        assert!(
            (b.value.midpoint_f64() - via_f.value.midpoint_f64()).abs()
                <= b.value.width_f64() + via_f.value.width_f64()
        );
    }

    #[test]
    fn beta_f_bounded_by_zeta_prime_bound()  {
        // 0 <= beta_f <= -2M zeta'(2), with -zeta'(2) ~ 0.937548
        let r = beta_f(&xm1(), &LinearCertificate::new(1, 2), 1e-3, Mode::Rigorous).unwrap();
        assert!(r.value.lo().to_f64() >= 0.0);
        assert!(r.value.hi().to_f64() <= 2.0 * 2.0 * 0.937548);
    }

    #[test]
    fn budget_exceeded_for_unreachable_tolerance() {
        match constant_c(1e-12, Mode::Rigorous) {
            Err(Error::BudgetExceeded { tol, best_width }) => {
                assert_eq!(tol, 1e-12);
                assert!(best_width > 1e-12);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn accelerated_c_close_to_reference() {
        let c = constant_c(1e-7, Mode::Accelerated).unwrap();
        assert_eq!(c.mode, Mode::Accelerated);
        assert!((c.value.midpoint_f64() - 1.2269688).abs() < 5e-7);
    }

    #[test]
    fn json_shape() {
        let c = constant_c(1e-2, Mode::Rigorous).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert!(json["value_lo"].as_f64().unwrap() <= json["value_hi"].as_f64().unwrap());
        assert_eq!(json["mode"], "rigorous");
        assert!(json["primes_used"].as_u64().unwrap() > 0);
        assert!(json["tail_bound"].as_f64().unwrap() >= 0.0);
    }
}
