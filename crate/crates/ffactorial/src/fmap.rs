//! The map `f` behind an f-factorial, evaluated exactly where possible
//! and as a shrinking enclosure otherwise, plus the linear certificates
//! `(alpha, M)` that unlock the asymptotic expansion.

use crate::error::{Error, Result};
use crate::interval::BoundedValue;
use crate::primes::PrimeTable;
use rug::ops::{DivRounding, Pow};
use rug::{Integer, Rational};
use std::fmt;
use std::str::FromStr;

/// Starting precision for enclosure refinement, in bits.
pub const PREC_START: u32 = 64;
/// Hard ceiling for precision escalation, in bits.
pub const PREC_CEILING: u32 = 4096;

/// Whether `f(p)` grows without bound along the primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    TendsToInfinity,
    NotDivergent,
}

/// The closed enumeration of supported maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FMap {
    /// `f(x) = x`
    Identity,
    /// `f(x) = (x + b) / a`, evaluated exactly.
    ShiftedLinear { a: u64, b: i64 },
    /// `f(x) = ceil((x - 1) / 2)`
    HalfCeiling,
    /// `f(x) = log x`
    LogMap,
    /// `f(x) = |sin x|`; constructible for the divergence demonstration
    /// only, never accepted by factorial assembly.
    SineAbs,
}

/// Result of evaluating `f(p)`.
#[derive(Debug, Clone)]
pub enum Value {
    Exact(Rational),
    Interval(BoundedValue),
}

impl FMap {
    pub fn divergence(&self) -> Divergence {
        match self {
            FMap::SineAbs => Divergence::NotDivergent,
            _ => Divergence::TendsToInfinity,
        }
    }

    /// Exact rational value of `f(p)`, when the kind admits one.
    pub fn eval_exact(&self, p: u64) -> Option<Result<Rational>> {
        match self {
            FMap::Identity => Some(Ok(Rational::from(p))),
            FMap::ShiftedLinear { a, b } => {
                let num = Integer::from(p) + *b;
                if num <= 0 {
                    return Some(Err(Error::NonPositive {
                        p,
                        value: format!("({p} + {b})/{a}"),
                    }));
                }
                Some(Ok(Rational::from((num, Integer::from(*a)))))
            }
            FMap::HalfCeiling => Some(Ok(Rational::from(half_ceiling(p)))),
            FMap::LogMap | FMap::SineAbs => None,
        }
    }

    /// Evaluates `f(p)`: exact for rational kinds, an enclosure of width
    /// at most `2^(-precision+2)` otherwise.
    pub fn eval(&self, p: u64, precision: u32) -> Result<Value> {
        assert!(precision >= 32, "precision below 32 bits");
        if let Some(exact) = self.eval_exact(p) {
            return Ok(Value::Exact(exact?));
        }
        let target = 0.5f64.powi(precision as i32 - 2);
        let mut prec = precision;
        loop {
            let iv = self.eval_interval(p, prec);
            if iv.width_f64() <= target || prec >= PREC_CEILING {
                return Ok(Value::Interval(iv));
            }
            prec = (prec * 2).min(PREC_CEILING);
        }
    }

    /// Raw enclosure at a working precision, transcendental kinds only.
    fn eval_interval(&self, p: u64, prec: u32) -> BoundedValue {
        match self {
            FMap::LogMap => BoundedValue::ln_u64(prec, p),
            FMap::SineAbs => {
                use rug::float::Round;
                let mut lo = rug::Float::with_val(prec, p);
                let mut hi = lo.clone();
                lo.sin_round(Round::Down);
                hi.sin_round(Round::Up);
                BoundedValue::from_endpoints(lo, hi).abs()
            }
            _ => unreachable!("rational kinds are evaluated exactly"),
        }
    }

    /// Exact `floor(n / (f(p) p^k))`.
    ///
    /// For enclosure-valued `f(p)` the precision is doubled from
    /// [`PREC_START`] until the floor is unambiguous; hitting
    /// [`PREC_CEILING`] raises [`Error::AmbiguousFloor`] with both
    /// candidates.
    pub fn floor_quotient(&self, n: u64, p: u64, k: u32) -> Result<u64> {
        if let Some(exact) = self.eval_exact(p) {
            let fp = exact?;
            // floor(n * den / (num * p^k))
            let divisor = fp.numer().clone() * Integer::from(p).pow(k);
            let q = (Integer::from(n) * fp.denom()).div_floor(divisor);
            return Ok(q.to_u64().expect("floor quotient fits u64"));
        }
        let mut prec = PREC_START;
        loop {
            let fp = self.eval_interval(p, prec);
            if fp.lo() <= &0 {
                if prec >= PREC_CEILING {
                    return Err(Error::NonPositive {
                        p,
                        value: format!("{fp}"),
                    });
                }
                prec = (prec * 2).min(PREC_CEILING);
                continue;
            }
            let n_iv = BoundedValue::from_u64(prec, n);
            let pk = BoundedValue::from_integer(prec, &Integer::from(p).pow(k));
            let q = n_iv.div(&fp.mul(&pk));
            if let Some(fl) = q.unambiguous_floor() {
                return Ok(fl.to_u64().expect("floor quotient fits u64"));
            }
            if prec >= PREC_CEILING {
                let lo = q.lo().clone().floor().to_integer().unwrap();
                return Err(Error::AmbiguousFloor {
                    lo: lo.to_u64().unwrap_or(u64::MAX),
                    hi: lo.to_u64().unwrap_or(u64::MAX).saturating_add(1),
                    ceiling: PREC_CEILING,
                });
            }
            prec = (prec * 2).min(PREC_CEILING);
        }
    }

    /// Decides `f(p) <= x` for rational `x`, refining enclosures as needed.
    pub fn le_rational(&self, p: u64, x: &Rational) -> Result<bool> {
        if let Some(exact) = self.eval_exact(p) {
            return Ok(exact? <= *x);
        }
        let mut prec = PREC_START;
        loop {
            let fp = self.eval_interval(p, prec);
            if let Some(ans) = fp.definitely_le_rational(x) {
                return Ok(ans);
            }
            if prec >= PREC_CEILING {
                return Err(Error::AmbiguousComparison {
                    p,
                    x: x.to_string(),
                    ceiling: PREC_CEILING,
                });
            }
            prec = (prec * 2).min(PREC_CEILING);
        }
    }

    /// An upper bound on primes with `f(p) <= n`; the exact support is
    /// obtained by filtering with [`FMap::le_rational`].
    pub fn support_bound(&self, n: u64) -> Result<u64> {
        match self {
            FMap::Identity => Ok(n),
            FMap::ShiftedLinear { a, b } => {
                // (p + b)/a <= n  <=>  p <= a n - b
                let bound = Integer::from(*a) * n - *b;
                bound.to_u64().ok_or(Error::Capacity(u64::MAX))
            }
            FMap::HalfCeiling => Ok(2 * n + 1),
            FMap::LogMap => {
                // log p <= n  <=>  p <= e^n
                if n > 42 {
                    return Err(Error::Capacity(n));
                }
                let e_n = rug::Float::with_val(96, n).exp();
                Ok(e_n.to_f64().ceil() as u64 + 1)
            }
            FMap::SineAbs => Err(Error::DivergentFactorial {
                f: self.to_string(),
            }),
        }
    }
}

impl fmt::Display for FMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FMap::Identity => write!(f, "x"),
            FMap::ShiftedLinear { a: 1, b } => {
                if *b >= 0 {
                    write!(f, "x+{b}")
                } else {
                    write!(f, "x{b}")
                }
            }
            FMap::ShiftedLinear { a, b } => {
                if *b >= 0 {
                    write!(f, "(x+{b})/{a}")
                } else {
                    write!(f, "(x{b})/{a}")
                }
            }
            FMap::HalfCeiling => write!(f, "ceil((x-1)/2)"),
            FMap::LogMap => write!(f, "log(x)"),
            FMap::SineAbs => write!(f, "abs(sin(x))"),
        }
    }
}

impl FromStr for FMap {
    type Err = Error;

    /// Parses the CLI DSL, case- and whitespace-insensitively:
    /// `x`, `x-1` (and general `x+b`, `(x+b)/a`), `ceil((x-1)/2)`,
    /// `log(x)`, `abs(sin(x))`.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        let err = || Error::Parse(s.to_string());
        match norm.as_str() {
            "x" => return Ok(FMap::Identity),
            "ceil((x-1)/2)" => return Ok(FMap::HalfCeiling),
            "log(x)" | "ln(x)" => return Ok(FMap::LogMap),
            "abs(sin(x))" | "|sin(x)|" => return Ok(FMap::SineAbs),
            _ => {}
        }
        // x+b / x-b
        if let Some(rest) = norm.strip_prefix('x') {
            let b: i64 = rest.parse().map_err(|_| err())?;
            return Ok(FMap::ShiftedLinear { a: 1, b });
        }
        // (x+b)/a
        if let Some(rest) = norm.strip_prefix("(x") {
            let (inner, denom) = rest.split_once(")/").ok_or_else(err)?;
            let b: i64 = inner.parse().map_err(|_| err())?;
            let a: u64 = denom.parse().map_err(|_| err())?;
            if a == 0 {
                return Err(err());
            }
            return Ok(FMap::ShiftedLinear { a, b });
        }
        Err(err())
    }
}

fn half_ceiling(p: u64) -> u64 {
    p / 2 // ceil((p-1)/2) = floor(p/2) for p >= 1
}

/// The pair `(alpha, M)` witnessing `0 <= 1/f(p) - alpha/p <= M/p^2`
/// for every prime `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCertificate {
    pub alpha: u64,
    pub m: Rational,
}

impl LinearCertificate {
    pub fn new(alpha: u64, m: impl Into<Rational>) -> Self {
        let m = m.into();
        assert!(alpha >= 1, "alpha must be a positive integer");
        assert!(m >= 0, "M must be nonnegative");
        LinearCertificate { alpha, m }
    }
}

/// Outcome of an exhaustive certificate check up to a prime bound.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub f: String,
    pub alpha: u64,
    pub m: Rational,
    pub bound: u64,
    pub primes_checked: usize,
    /// Closed-form justification for built-in (map, certificate) pairs.
    pub closed_form: Option<&'static str>,
    /// True when the lower bound held with equality at every prime.
    pub equality_throughout: bool,
}

/// Confirms `0 <= 1/f(p) - alpha/p <= M/p^2` for all primes `p <= bound`.
pub fn verify_certificate(
    f: &FMap,
    cert: &LinearCertificate,
    table: &PrimeTable,
    bound: u64,
) -> Result<CertReport> {
    assert!(bound >= 2, "bound must be at least 2");
    let mut equality = true;
    let primes = table.up_to(bound.min(table.limit()));
    for &p in primes {
        let gap = certificate_gap(f, cert.alpha, p)?;
        let cap = Rational::from((cert.m.numer().clone(), cert.m.denom() * Integer::from(p).square()));
        if gap < 0 {
            return Err(Error::CertificateViolation {
                alpha: cert.alpha,
                m: cert.m.to_string(),
                p,
                side: "lower",
            });
        }
        if gap > cap {
            return Err(Error::CertificateViolation {
                alpha: cert.alpha,
                m: cert.m.to_string(),
                p,
                side: "upper",
            });
        }
        if gap != 0 {
            equality = false;
        }
    }
    Ok(CertReport {
        f: f.to_string(),
        alpha: cert.alpha,
        m: cert.m.clone(),
        bound,
        primes_checked: primes.len(),
        closed_form: closed_form_tag(f, cert),
        equality_throughout: equality,
    })
}

/// Exact `1/f(p) - alpha/p` for rational kinds.
pub fn certificate_gap(f: &FMap, alpha: u64, p: u64) -> Result<Rational> {
    let fp = f
        .eval_exact(p)
        .ok_or_else(|| Error::Unsupported {
            f: format!("{f} has no exact rational values"),
        })??;
    Ok(fp.recip() - Rational::from((alpha, p)))
}

fn closed_form_tag(f: &FMap, cert: &LinearCertificate) -> Option<&'static str> {
    match (f, cert.alpha) {
        (FMap::Identity, 1) if cert.m >= 0 => {
            Some("1/p - 1/p = 0 for every prime")
        }
        (FMap::ShiftedLinear { a: 1, b: -1 }, 1) if cert.m >= 2 => {
            Some("1/(p-1) - 1/p = 1/(p(p-1)) <= 2/p^2 since p <= 2(p-1)")
        }
        (FMap::HalfCeiling, 2) if cert.m >= 4 => Some(
            "p = 2 gives 1/1 - 2/2 = 0; odd p gives 2/(p-1) - 2/p = 2/(p(p-1)) <= 4/p^2",
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primes_up_to;

    #[test]
    fn dsl_round_trip() {
        for s in ["x", "x-1", "ceil((x-1)/2)", "log(x)", "abs(sin(x))"] {
            let f: FMap = s.parse().unwrap();
            let again: FMap = f.to_string().parse().unwrap();
            assert_eq!(f, again);
        }
        assert_eq!(" X - 1 ".parse::<FMap>().unwrap(), FMap::ShiftedLinear { a: 1, b: -1 });
        assert_eq!(
            "Ceil( (x-1) / 2 )".parse::<FMap>().unwrap(),
            FMap::HalfCeiling
        );
        assert_eq!(
            "(x+1)/3".parse::<FMap>().unwrap(),
            FMap::ShiftedLinear { a: 3, b: 1 }
        );
        assert!("x^2".parse::<FMap>().is_err());
        assert!("(x+1)/0".parse::<FMap>().is_err());
    }

    #[test]
    fn eval_exact_kinds() {
        let xm1: FMap = "x-1".parse().unwrap();
        match xm1.eval(7, 64).unwrap() {
            Value::Exact(q) => assert_eq!(q, 6),
            _ => panic!("expected exact"),
        }
        match FMap::HalfCeiling.eval(7, 64).unwrap() {
            Value::Exact(q) => assert_eq!(q, 3),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn eval_log_interval() {
        match FMap::LogMap.eval(2, 64).unwrap() {
            Value::Interval(iv) => {
                assert!(iv.contains_f64(0.6931471805599453));
                assert!(iv.width_f64() <= 0.5f64.powi(62));
            }
            _ => panic!("expected interval"),
        }
    }

    #[test]
    fn eval_rejects_nonpositive() {
        let f = FMap::ShiftedLinear { a: 1, b: -5 };
        assert!(matches!(f.eval(3, 64), Err(Error::NonPositive { .. })));
        assert!(f.eval(7, 64).is_ok());
    }

    #[test]
    fn floor_quotient_examples() {
        assert_eq!(FMap::Identity.floor_quotient(4, 2, 0).unwrap(), 2);
        assert_eq!(FMap::Identity.floor_quotient(4, 2, 1).unwrap(), 1);
        // 3 / log 2 = 4.328...
        assert_eq!(FMap::LogMap.floor_quotient(3, 2, 0).unwrap(), 4);
        let xm1: FMap = "x-1".parse().unwrap();
        assert_eq!(xm1.floor_quotient(10, 11, 0).unwrap(), 1);
    }

    #[test]
    fn floor_quotient_cutoff_and_monotonicity() {
        let f = FMap::LogMap;
        // f(p) p^k > n  =>  quotient 0
        assert_eq!(f.floor_quotient(1, 5, 3).unwrap(), 0);
        let mut prev = u64::MAX;
        for k in 0..8 {
            let q = f.floor_quotient(50, 3, k).unwrap();
            assert!(q <= prev);
            prev = q;
        }
        let mut prev_n = 0;
        for n in 0..40 {
            let q = f.floor_quotient(n, 2, 1).unwrap();
            assert!(q >= prev_n);
            prev_n = q;
        }
    }

    #[test]
    fn certificates_for_builtin_maps() {
        let table = primes_up_to(100_000).unwrap();
        let xm1: FMap = "x-1".parse().unwrap();
        let r = verify_certificate(&xm1, &LinearCertificate::new(1, 2), &table, 100_000).unwrap();
        assert!(r.closed_form.is_some());
        assert!(!r.equality_throughout);

        let half = FMap::HalfCeiling;
        let r = verify_certificate(&half, &LinearCertificate::new(2, 4), &table, 100_000).unwrap();
        assert!(r.closed_form.is_some());

        let id = FMap::Identity;
        let r = verify_certificate(&id, &LinearCertificate::new(1, 0), &table, 100_000).unwrap();
        assert!(r.equality_throughout);
    }

    #[test]
    fn certificate_violation_carries_witness() {
        let table = primes_up_to(1_000).unwrap();
        // (1, 0) fails for f = x-1: 1/(p-1) - 1/p > 0
        let xm1: FMap = "x-1".parse().unwrap();
        match verify_certificate(&xm1, &LinearCertificate::new(1, 0), &table, 1_000) {
            Err(Error::CertificateViolation { p, side, .. }) => {
                assert_eq!(p, 2);
                assert_eq!(side, "upper");
            }
            other => panic!("expected violation, got {other:?}"),
        }
        // alpha = 2 fails the lower side for f = x
        match verify_certificate(&FMap::Identity, &LinearCertificate::new(2, 10), &table, 1_000) {
            Err(Error::CertificateViolation { side, .. }) => assert_eq!(side, "lower"),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn divergence_attributes() {
        assert_eq!(FMap::SineAbs.divergence(), Divergence::NotDivergent);
        for f in [FMap::Identity, FMap::HalfCeiling, FMap::LogMap] {
            assert_eq!(f.divergence(), Divergence::TendsToInfinity);
        }
    }
}
