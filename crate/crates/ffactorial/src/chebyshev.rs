//! Generalized Chebyshev functions: `theta_f(x) = sum_{f(p) <= x} ln p`,
//! its prime-power companion `psi_f`, the change-of-variables identity
//! `theta_f = theta o f^{-1}`, and the residual diagnostic comparing the
//! two floor-sum recasts behind the asymptotic expansion.

use crate::error::{Error, Result};
use crate::fmap::{Divergence, FMap, LinearCertificate};
use crate::interval::BoundedValue;
use crate::primes::{primes_up_to, PrimeTable};
use rug::ops::{DivRounding, Pow};
use rug::{Integer, Rational};

fn ceil_u64(x: &Rational) -> u64 {
    if *x <= 0 {
        return 0;
    }
    let q = DivRounding::div_ceil(x.numer().clone(), x.denom());
    q.to_u64().unwrap_or(u64::MAX)
}

fn require_divergent(f: &FMap) -> Result<()> {
    if f.divergence() != Divergence::TendsToInfinity {
        return Err(Error::DivergentFactorial { f: f.to_string() });
    }
    Ok(())
}

/// First f-Chebyshev function: enclosure of `sum_{f(p) <= x} ln p`.
pub fn theta_f(f: &FMap, x: &Rational, prec: u32) -> Result<BoundedValue> {
    require_divergent(f)?;
    if *x <= 0 {
        return Ok(BoundedValue::zero(prec));
    }
    let bound = f.support_bound(ceil_u64(x))?;
    let table = primes_up_to(bound)?;
    theta_f_in(f, x, &table, prec)
}

fn theta_f_in(f: &FMap, x: &Rational, table: &PrimeTable, prec: u32) -> Result<BoundedValue> {
    let mut acc = BoundedValue::zero(prec);
    for &p in table.primes() {
        if f.le_rational(p, x)? {
            acc.add_assign(&BoundedValue::ln_u64(prec, p));
        }
    }
    Ok(acc)
}

/// Second f-Chebyshev function: `sum_{k >= 0} theta_{g_k}(x)` with
/// `g_k(p) = f(p) p^k`; the sum is finite because every supported map is
/// nondecreasing, so terms vanish once `f(2) 2^k > x`.
pub fn psi_f(f: &FMap, x: &Rational, prec: u32) -> Result<BoundedValue> {
    require_divergent(f)?;
    if *x <= 0 {
        return Ok(BoundedValue::zero(prec));
    }
    let bound = f.support_bound(ceil_u64(x))?;
    let table = primes_up_to(bound)?;
    let mut acc = BoundedValue::zero(prec);
    let mut k = 0u32;
    loop {
        // scaled membership: f(p) p^k <= x  <=>  f(p) <= x / p^k
        let x2 = Rational::from((x.numer().clone(), x.denom() * Integer::from(2u64).pow(k)));
        if !f.le_rational(2, &x2)? {
            break;
        }
        for &p in table.primes() {
            let xk = Rational::from((x.numer().clone(), x.denom() * Integer::from(p).pow(k)));
            if f.le_rational(p, &xk)? {
                acc.add_assign(&BoundedValue::ln_u64(prec, p));
            } else {
                // supported maps are nondecreasing in p
                break;
            }
        }
        k += 1;
    }
    Ok(acc)
}

/// The rational maps arising from a linear certificate `(alpha, M)`:
/// `F(x) = a x^2 / (a x + M)` and `H(x) = a x (x - 1) / (a x + M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertKind {
    F,
    H,
}

/// Exact value of a certificate map at an integer argument.
pub fn cert_map_value(kind: CertKind, cert: &LinearCertificate, p: u64) -> Rational {
    let a = Integer::from(cert.alpha);
    let num = match kind {
        CertKind::F => a.clone() * Integer::from(p).square(),
        CertKind::H => a.clone() * Integer::from(p) * (Integer::from(p) - 1u32),
    };
    let den = Rational::from(a * p) + &cert.m;
    Rational::from(num) / den
}

/// Enclosure of the closed-form inverse of a certificate map:
/// `F^{-1}(x) = x/2 + sqrt(x^2/4 + xM/a)` and
/// `H^{-1}(x) = (x+1)/2 + sqrt((x+1)^2/4 + xM/a)`.
pub fn cert_map_inverse(
    kind: CertKind,
    cert: &LinearCertificate,
    x: &Rational,
    prec: u32,
) -> BoundedValue {
    let shifted = match kind {
        CertKind::F => x.clone(),
        CertKind::H => x.clone() + Rational::from(1),
    };
    let half = BoundedValue::from_rational(prec, &(shifted.clone() / Rational::from(2)));
    let m_over_a = Rational::from(&cert.m) / Rational::from(cert.alpha);
    let inner = half.mul(&half).add(&BoundedValue::from_rational(
        prec,
        &(x.clone() * m_over_a),
    ));
    half.add(&inner.sqrt())
}

/// Targets for the inverse-identity check.
pub enum Invertible {
    Map(FMap),
    Cert(CertKind, LinearCertificate),
}

/// Classical theta at an exact rational argument.
fn theta_rational(x: &Rational, prec: u32) -> Result<BoundedValue> {
    if *x < 2 {
        return Ok(BoundedValue::zero(prec));
    }
    let table = primes_up_to(ceil_u64(x))?;
    let mut acc = BoundedValue::zero(prec);
    for &p in table.primes() {
        if Rational::from(p) <= *x {
            acc.add_assign(&BoundedValue::ln_u64(prec, p));
        }
    }
    Ok(acc)
}

/// Classical theta over an interval argument (for enclosure inverses).
fn theta_interval(x: &BoundedValue, prec: u32) -> Result<BoundedValue> {
    let hi = x.hi().to_f64().ceil().max(2.0) as u64;
    let table = primes_up_to(hi + 1)?;
    let mut lo_acc = BoundedValue::zero(prec);
    let mut hi_acc = BoundedValue::zero(prec);
    for &p in table.primes() {
        let lp = BoundedValue::ln_u64(prec, p);
        if x.lo() >= &rug::Float::with_val(64, p) {
            lo_acc.add_assign(&lp);
        }
        if x.hi() >= &rug::Float::with_val(64, p) {
            hi_acc.add_assign(&lp);
        }
    }
    Ok(BoundedValue::from_endpoints(
        lo_acc.lo().clone(),
        hi_acc.hi().clone(),
    ))
}

/// Checks `theta_f(x) = theta(f^{-1}(x))` for a strictly increasing,
/// bijective map with a shipped closed-form inverse.
pub fn corollary16_check(target: &Invertible, x: &Rational, prec: u32) -> Result<bool> {
    match target {
        Invertible::Map(f) => {
            let inverse = match f {
                FMap::Identity => x.clone(),
                FMap::ShiftedLinear { a, b } => {
                    // y = (p+b)/a  <=>  p = a y - b
                    Rational::from((x.numer() * Integer::from(*a), x.denom().clone()))
                        - Rational::from(*b)
                }
                other => {
                    return Err(Error::Unsupported {
                        f: other.to_string(),
                    })
                }
            };
            let lhs = theta_f(f, x, prec)?;
            let rhs = theta_rational(&inverse, prec)?;
            Ok(lhs.overlaps(&rhs))
        }
        Invertible::Cert(kind, cert) => {
            if *x <= 0 {
                return Ok(true);
            }
            let lhs = cert_theta(*kind, cert, x, prec)?;
            let inverse = cert_map_inverse(*kind, cert, x, prec);
            let rhs = theta_interval(&inverse, prec)?;
            Ok(lhs.overlaps(&rhs))
        }
    }
}

/// `theta` for a certificate map, via exact rational membership.
pub fn cert_theta(
    kind: CertKind,
    cert: &LinearCertificate,
    x: &Rational,
    prec: u32,
) -> Result<BoundedValue> {
    if *x <= 0 {
        return Ok(BoundedValue::zero(prec));
    }
    // F(p) <= x and H(p) <= x both imply p <= x + M/alpha + 2
    let bound = ceil_u64(&(x.clone() + Rational::from(&cert.m) / Rational::from(cert.alpha))) + 2;
    let table = primes_up_to(bound)?;
    let mut acc = BoundedValue::zero(prec);
    for &p in table.primes() {
        if cert_map_value(kind, cert, p) <= *x {
            acc.add_assign(&BoundedValue::ln_u64(prec, p));
        } else {
            break; // both maps are increasing in p
        }
    }
    Ok(acc)
}

/// Precomputed prime logs with prefix sums, for the residual's many
/// theta evaluations.
struct PrefixTheta {
    primes: Vec<u64>,
    prefix: Vec<BoundedValue>,
}

impl PrefixTheta {
    fn new(limit: u64, prec: u32) -> Result<Self> {
        let table = primes_up_to(limit)?;
        let primes = table.primes().to_vec();
        let mut prefix = Vec::with_capacity(primes.len() + 1);
        let mut acc = BoundedValue::zero(prec);
        prefix.push(acc.clone());
        for &p in &primes {
            acc.add_assign(&BoundedValue::ln_u64(prec, p));
            prefix.push(acc.clone());
        }
        Ok(PrefixTheta { primes, prefix })
    }

    /// Sum of `ln p` over primes where the increasing map stays `<= x`.
    fn theta_by<P: Fn(u64) -> Rational>(&self, map: P, x: &Rational) -> &BoundedValue {
        let idx = self.primes.partition_point(|&p| map(p) <= *x);
        &self.prefix[idx]
    }
}

/// The normalized residual
/// `(1/n) sum_{m >= 1} [psi_F(alpha n / m) - theta_H(alpha n / m)]`,
/// with both sums finite since the summands vanish for
/// `m > (alpha + M/2) n`. Exposed as a numeric diagnostic; the limit
/// statement itself is not reproven here.
pub fn lemma14_residual(cert: &LinearCertificate, n: u64, prec: u32) -> Result<BoundedValue> {
    assert!(n >= 1);
    let alpha = cert.alpha;
    let a = Integer::from(alpha);
    let m_rat = Rational::from(&cert.m);

    let x_max = Rational::from((a.clone() * n, Integer::from(1)));
    let bound = ceil_u64(&(x_max.clone() + m_rat.clone() / Rational::from(alpha))) + 4;
    let pre = PrefixTheta::new(bound, prec)?;

    let f_of = |p: u64| cert_map_value(CertKind::F, cert, p);
    let h_of = |p: u64| cert_map_value(CertKind::H, cert, p);

    let m_max = ceil_u64(&((Rational::from(alpha) + m_rat.clone() / Rational::from(2)) * Rational::from(n)));
    let mut total = BoundedValue::zero(prec);
    for m in 1..=m_max {
        let x = Rational::from((a.clone() * n, Integer::from(m)));
        // psi_F(x) = sum_k theta over {p : F(p) p^k <= x}
        let mut k = 0u32;
        loop {
            let pk2 = Integer::from(2u64).pow(k);
            if f_of(2) * Rational::from(pk2) > x {
                break;
            }
            let g_k = |p: u64| f_of(p) * Rational::from(Integer::from(p).pow(k));
            total.add_assign(pre.theta_by(g_k, &x));
            k += 1;
        }
        total = total.sub(pre.theta_by(h_of, &x));
    }
    Ok(total.div(&BoundedValue::from_u64(prec, n)))
}
