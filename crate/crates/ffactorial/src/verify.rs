//! Seeded cross-validation suites driven by `verify`: each suite runs a
//! batch of structural checks (oracle agreement, divisibility laws,
//! invariance under randomized tie-breaks, identity consistency of the
//! constants) and reports one pass/fail line per check.

use crate::asymptotics::a202367_sequence;
use crate::bhargava::{factorial_s, v_n_randomized, IntegerSet};
use crate::chebyshev::{
    corollary16_check, lemma14_residual, psi_f, theta_f, CertKind, Invertible,
};
use crate::constants::{beta_f, constant_beta, constant_c, Mode};
use crate::error::Result;
use crate::fmap::{FMap, LinearCertificate};
use crate::legendre::{exponent, factorial, generalized_binomial};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Legendre,
    Bhargava,
    Chebyshev,
    Constants,
    All,
}

impl std::str::FromStr for Suite {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "legendre" => Ok(Suite::Legendre),
            "bhargava" => Ok(Suite::Bhargava),
            "chebyshev" => Ok(Suite::Chebyshev),
            "constants" => Ok(Suite::Constants),
            "all" => Ok(Suite::All),
            _ => Err(crate::error::Error::Parse(format!("unknown suite: {s}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = format!("seed: {}\n", self.seed);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {name}: {detail}", name = c.name, detail = c.detail);
        }
        let _ = writeln!(
            out,
            "{}/{} checks passed",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
        out
    }
}

fn check(
    out: &mut Vec<CheckResult>,
    name: &'static str,
    run: impl FnOnce() -> Result<(bool, String)>,
) {
    let (passed, detail) = match run() {
        Ok(pair) => pair,
        Err(e) => (false, format!("error: {e}")),
    };
    out.push(CheckResult {
        name,
        passed,
        detail,
    });
}

fn builtin_maps() -> Vec<(FMap, u64)> {
    // (map, max n for randomized draws); log_map's support grows like
    // e^n, so its arguments stay small
    vec![
        (FMap::Identity, 60),
        ("x-1".parse().unwrap(), 60),
        (FMap::HalfCeiling, 60),
        (FMap::LogMap, 12),
    ]
}

fn legendre_checks(rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    check(out, "legendre-valuation-consistency", || {
        let mut tested = 0;
        for _ in 0..30 {
            let n = rng.random_range(1..=300u64);
            let nf = Integer::from(Integer::factorial(n as u32));
            for &p in crate::primes::primes_up_to(n)?.primes() {
                let mut e = 0u64;
                let mut rest = nf.clone();
                while rest.is_divisible_u(p as u32) {
                    rest /= p as u32;
                    e += 1;
                }
                if exponent(&FMap::Identity, p, n)? != e {
                    return Ok((false, format!("mismatch at p={p}, n={n}")));
                }
                tested += 1;
            }
        }
        Ok((true, format!("{tested} (p, n) pairs against direct factorization")))
    });

    check(out, "binomial-integrality", || {
        let mut done = 0;
        for (f, max_n) in builtin_maps() {
            for _ in 0..50 {
                let n = rng.random_range(0..=max_n);
                let k = rng.random_range(0..=n);
                generalized_binomial(&f, n, k)?;
                done += 1;
            }
        }
        Ok((true, format!("{done} random (n, k) draws, four maps, all integral")))
    });

    check(out, "factorial-divisibility", || {
        let xm1: FMap = "x-1".parse().unwrap();
        for _ in 0..40 {
            let n = rng.random_range(0..=200u64);
            let ordinary = factorial(&FMap::Identity, n)?;
            let shifted = factorial(&xm1, n)?;
            if !ordinary.divides(&shifted) {
                return Ok((false, format!("n!_x does not divide n!_(x-1) at n={n}")));
            }
        }
        Ok((true, "n!_x | n!_(x-1) for 40 random n <= 200".into()))
    });
}

fn bhargava_checks(rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    check(out, "ordering-invariance", || {
        let set = IntegerSet::primes(10_000)?;
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for n in 0..=8usize {
                let reference = v_n_randomized(&set, p, n, rng)?;
                for run in 0..50 {
                    let got = v_n_randomized(&set, p, n, rng)?;
                    if got != reference {
                        return Ok((
                            false,
                            format!("v_{n} at p={p} changed on run {run}: {got} vs {reference}"),
                        ));
                    }
                }
            }
        }
        Ok((true, "v_n stable across 50 random tie-break runs per (p, n)".into()))
    });

    check(out, "property1-binomial-divisibility", || {
        let set = IntegerSet::primes(10_000)?;
        let facts: Vec<Integer> = (0..=10usize)
            .map(|n| factorial_s(&set, n))
            .collect::<Result<_>>()?;
        for k in 0..=10usize {
            for l in 0..=(10 - k) {
                let whole = &facts[k + l];
                let parts = Integer::from(&facts[k] * &facts[l]);
                if !Integer::from(whole % &parts).is_zero() {
                    return Ok((false, format!("(k+l)! not multiple at k={k}, l={l}")));
                }
            }
        }
        Ok((true, "k!.l! divides (k+l)! over primes for all k+l <= 10".into()))
    });

    check(out, "property3-difference-products", || {
        let set = IntegerSet::primes(10_000)?;
        let pool: Vec<i64> = crate::primes::primes_up_to(200)?
            .primes()
            .iter()
            .map(|&p| p as i64)
            .collect();
        for _ in 0..20 {
            let count = rng.random_range(2..=7usize);
            let mut sample: Vec<i64> = pool
                .choose_multiple(rng, count)
                .copied()
                .collect();
            sample.sort_unstable();
            let mut prod = Integer::from(1);
            for i in 0..sample.len() {
                for j in (i + 1)..sample.len() {
                    prod *= Integer::from(sample[j] - sample[i]);
                }
            }
            let mut divisor = Integer::from(1);
            for n in 0..count {
                divisor *= factorial_s(&set, n)?;
            }
            if !Integer::from(&prod % &divisor).is_zero() {
                return Ok((false, format!("sample {sample:?} fails")));
            }
        }
        Ok((true, "20 random difference products divisible by 0!..n! over primes".into()))
    });

    check(out, "oracle-equivalence", || {
        let set = IntegerSet::primes(10_000)?;
        let xm1: FMap = "x-1".parse().unwrap();
        for n in 0..=12u64 {
            let legendre = factorial(&xm1, n)?.to_integer();
            let ordering = factorial_s(&set, (n + 1) as usize)?;
            if legendre != ordering {
                return Ok((false, format!("(n+1)! over primes != n!_(x-1) at n={n}")));
            }
        }
        Ok((true, "(n+1)! over primes = n!_(x-1) exactly for n <= 12".into()))
    });

    check(out, "a202367-prefix", || {
        let got = a202367_sequence(6)?;
        let want: Vec<Integer> = [1u64, 6, 360, 45360, 5443200, 359251200]
            .iter()
            .map(|&t| Integer::from(t))
            .collect();
        Ok((got == want, format!("first 6 terms: {got:?}")))
    });
}

fn chebyshev_checks(rng: &mut ChaCha8Rng, out: &mut Vec<CheckResult>) {
    check(out, "corollary16-random-arguments", || {
        let xm1: FMap = "x-1".parse().unwrap();
        let targets: Vec<Invertible> = vec![
            Invertible::Map(FMap::Identity),
            Invertible::Map(xm1),
            Invertible::Cert(CertKind::F, LinearCertificate::new(1, 2)),
            Invertible::Cert(CertKind::H, LinearCertificate::new(2, 4)),
        ];
        for _ in 0..100 {
            let num = rng.random_range(1..=16_000i64);
            let x = Rational::from((num, 16)); // x in (0, 1000]
            for t in &targets {
                if !corollary16_check(t, &x, 64)? {
                    return Ok((false, format!("identity fails at x = {x}")));
                }
            }
        }
        Ok((true, "theta_f(x) = theta(f^{-1}(x)) at 100 random x in (0, 1000]".into()))
    });

    check(out, "theta-psi-order-and-monotonicity", || {
        let xm1: FMap = "x-1".parse().unwrap();
        let mut prev_t = -1.0f64;
        let mut prev_p = -1.0f64;
        for x in 0..=60i64 {
            let x = Rational::from(x);
            let t = theta_f(&xm1, &x, 64)?;
            let p = psi_f(&xm1, &x, 64)?;
            if p.hi().to_f64() < t.lo().to_f64() - 1e-12 {
                return Ok((false, format!("psi < theta at x = {x}")));
            }
            if t.midpoint_f64() < prev_t || p.midpoint_f64() < prev_p {
                return Ok((false, format!("non-monotone at x = {x}")));
            }
            prev_t = t.midpoint_f64();
            prev_p = p.midpoint_f64();
        }
        Ok((true, "0 <= theta_f <= psi_f, both nondecreasing on [0, 60]".into()))
    });

    check(out, "lemma14-residual-trend", || {
        let mut details = String::new();
        for (alpha, m) in [(1u64, 2u32), (2, 4)] {
            let cert = LinearCertificate::new(alpha, m);
            let mags: Vec<f64> = [10u64, 100, 1000]
                .iter()
                .map(|&n| Ok(lemma14_residual(&cert, n, 64)?.midpoint_f64().abs()))
                .collect::<Result<_>>()?;
            if !(mags[0] > mags[1] && mags[1] > mags[2]) {
                return Ok((false, format!("not decreasing for (a={alpha}, M={m}): {mags:?}")));
            }
            let _ = write!(details, "(a={alpha}, M={m}): {mags:?} ");
        }
        Ok((true, format!("magnitudes decrease over n = 10, 100, 1000: {details}")))
    });
}

fn constants_checks(out: &mut Vec<CheckResult>) {
    check(out, "identity-consistency-c", || {
        let c = constant_c(1e-3, Mode::Rigorous)?;
        let via = beta_f(
            &"x-1".parse().unwrap(),
            &LinearCertificate::new(1, 2),
            1e-3,
            Mode::Rigorous,
        )?;
        let gap = (c.value.midpoint_f64() - via.value.midpoint_f64()).abs();
        let budget = c.value.width_f64() + via.value.width_f64();
        Ok((gap <= budget, format!("|C - beta_f(x-1)| = {gap:.2e} <= {budget:.2e}")))
    });

    check(out, "identity-consistency-beta", || {
        let b = constant_beta(1e-3, Mode::Rigorous)?;
        let via = beta_f(
            &FMap::HalfCeiling,
            &LinearCertificate::new(2, 4),
            1e-3,
            Mode::Rigorous,
        )?;
        let gap = (b.value.midpoint_f64() - via.value.midpoint_f64()).abs();
        let budget = b.value.width_f64() + via.value.width_f64();
        Ok((gap <= budget, format!("|beta - beta_f(halfceil)| = {gap:.2e} <= {budget:.2e}")))
    });

    check(out, "rigorous-accelerated-agreement", || {
        let rig = constant_c(1e-4, Mode::Rigorous)?;
        let acc = constant_c(1e-4, Mode::Accelerated)?;
        let inside = rig.value.contains_f64(acc.value.midpoint_f64());
        Ok((
            inside,
            format!(
                "accelerated {:.9} inside rigorous [{:.9}, {:.9}]",
                acc.value.midpoint_f64(),
                rig.value.lo().to_f64(),
                rig.value.hi().to_f64()
            ),
        ))
    });

    check(out, "beta-f-range", || {
        let r = beta_f(
            &"x-1".parse().unwrap(),
            &LinearCertificate::new(1, 2),
            1e-3,
            Mode::Rigorous,
        )?;
        // 0 <= beta_f <= -2M zeta'(2), with -zeta'(2) = 0.9375482...
        let ok = r.value.lo().to_f64() >= 0.0 && r.value.hi().to_f64() <= 4.0 * 0.9375483;
        Ok((ok, format!("beta_f(x-1) = {:.7} within [0, 2M * 0.9375483]", r.value.midpoint_f64())))
    });
}

/// Runs one suite (or all of them) with every random draw derived from
/// the seed.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    if matches!(suite, Suite::Legendre | Suite::All) {
        legendre_checks(&mut rng, &mut checks);
    }
    if matches!(suite, Suite::Bhargava | Suite::All) {
        bhargava_checks(&mut rng, &mut checks);
    }
    if matches!(suite, Suite::Chebyshev | Suite::All) {
        chebyshev_checks(&mut rng, &mut checks);
    }
    if matches!(suite, Suite::Constants | Suite::All) {
        constants_checks(&mut checks);
    }
    SuiteReport { seed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_suite_passes() {
        let report = run_suite(Suite::Legendre, 42);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn bhargava_suite_passes() {
        let report = run_suite(Suite::Bhargava, 7);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn chebyshev_suite_passes() {
        let report = run_suite(Suite::Chebyshev, 3);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn constants_suite_passes() {
        let report = run_suite(Suite::Constants, 1);
        assert!(report.passed(), "{}", report.render());
    }

    #[test]
    fn seed_determines_report() {
        let a = run_suite(Suite::Bhargava, 99).render();
        let b = run_suite(Suite::Bhargava, 99).render();
        assert_eq!(a, b);
    }
}
