//! Table generation and residual diagnostics for the expansion
//! `log n!_f = log(alpha n)! + beta_f n + o(n)`: each row compares the
//! exact generalized-factorial log against the asymptotic right-hand
//! side, and the residual divided by n tracks the o(n) claim.

use crate::constants::{beta_f, Mode};
use crate::error::Result;
use crate::fmap::{FMap, LinearCertificate};
use crate::interval::BoundedValue;
use crate::legendre::{factorial, log_factorial};
use rayon::prelude::*;
use rug::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// One comparison row: `lhs = log n!_f`, `rhs = log(alpha n)! + beta n`,
/// `residual = lhs - rhs`.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: u64,
    pub lhs: BoundedValue,
    pub rhs: BoundedValue,
    pub residual: BoundedValue,
}

impl Serialize for TableRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TableRow", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lhs_lo", &self.lhs.lo().to_f64())?;
        st.serialize_field("lhs_hi", &self.lhs.hi().to_f64())?;
        st.serialize_field("rhs_lo", &self.rhs.lo().to_f64())?;
        st.serialize_field("rhs_hi", &self.rhs.hi().to_f64())?;
        st.serialize_field("residual_lo", &self.residual.lo().to_f64())?;
        st.serialize_field("residual_hi", &self.residual.hi().to_f64())?;
        st.end()
    }
}

/// Enclosure of `log m!` by exact summation of `ln j`.
pub fn log_classic_factorial(m: u64, precision: u32) -> BoundedValue {
    assert!(m <= 1_000_000, "exact log-factorial capped at 10^6");
    let work = precision + 32;
    let mut acc = BoundedValue::zero(work);
    for j in 2..=m {
        acc.add_assign(&BoundedValue::ln_u64(work, j));
    }
    acc.with_prec(precision)
}

/// De Moivre-Stirling approximation `log(sqrt(2 pi) m^(m+1/2) e^(-m))`.
/// Approximate by construction; exists for speed comparisons only.
pub fn stirling_log_factorial(m: u64) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let x = m as f64;
    (2.0 * std::f64::consts::PI).sqrt().ln() + (x + 0.5) * x.ln() - x
}

/// The `beta_f` value used for table right-hand sides: the accelerated
/// estimate, widened to a small safety envelope. (The rigorous enclosure
/// is the ground truth; the verification suite cross-checks the two.)
pub fn beta_for_tables(f: &FMap, cert: &LinearCertificate) -> Result<BoundedValue> {
    let est = beta_f(f, cert, 1e-7, Mode::Accelerated)?;
    let mid = est.value.midpoint_f64();
    Ok(BoundedValue::from_endpoints(
        rug::Float::with_val(64, mid - 2e-7),
        rug::Float::with_val(64, mid + 2e-7),
    ))
}

/// Comparison rows using a caller-supplied `beta` enclosure.
pub fn table_rows_with_beta(
    f: &FMap,
    alpha: u64,
    beta: &BoundedValue,
    rows: &[u64],
    precision: u32,
) -> Result<Vec<TableRow>> {
    rows.par_iter()
        .map(|&n| {
            let lhs = log_factorial(f, n, precision)?;
            let rhs =
                log_classic_factorial(alpha * n, precision).add(&beta.mul_u64(n).with_prec(precision));
            let residual = lhs.sub(&rhs);
            Ok(TableRow {
                n,
                lhs,
                rhs,
                residual,
            })
        })
        .collect()
}

/// Comparison rows for a certified map, with `beta_f` estimated
/// internally.
pub fn table_rows(
    f: &FMap,
    cert: &LinearCertificate,
    rows: &[u64],
    precision: u32,
) -> Result<Vec<TableRow>> {
    let beta = beta_for_tables(f, cert)?;
    table_rows_with_beta(f, cert.alpha, &beta, rows, precision)
}

/// `(n, |residual|/n)` per row; the o(n) claim predicts a decreasing
/// trend.
pub fn residual_trend(
    f: &FMap,
    cert: &LinearCertificate,
    ns: &[u64],
) -> Result<Vec<(u64, f64)>> {
    let rows = table_rows(f, cert, ns, 96)?;
    Ok(rows
        .iter()
        .map(|r| (r.n, r.residual.midpoint_f64().abs() / r.n as f64))
        .collect())
}

/// Terms of the sequence `prod_p p^{sum_k floor((n-1)/(ceil((p-1)/2) p^k))}`
/// for `n = 1..count`.
pub fn a202367_sequence(count: u64) -> Result<Vec<Integer>> {
    assert!(count >= 1);
    (1..=count)
        .map(|n| Ok(factorial(&FMap::HalfCeiling, n - 1)?.to_integer()))
        .collect()
}

/// Aligned text rendering (n, lhs, rhs to four decimals).
pub fn render_text(rows: &[TableRow]) -> String {
    let mut out = String::from(format!(
        "{:>8}  {:>16}  {:>16}  {:>12}\n",
        "n", "lhs", "rhs", "residual"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:>8}  {:>16.4}  {:>16.4}  {:>12.4}\n",
            r.n,
            r.lhs.midpoint_f64(),
            r.rhs.midpoint_f64(),
            r.residual.midpoint_f64()
        ));
    }
    out
}

/// CSV rendering: `n,lhs_lo,lhs_hi,rhs_lo,rhs_hi,residual`. All fields
/// are plain numerics, so no RFC-4180 quoting is ever required.
pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("n,lhs_lo,lhs_hi,rhs_lo,rhs_hi,residual\r\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\r\n",
            r.n,
            r.lhs.lo().to_f64(),
            r.lhs.hi().to_f64(),
            r.rhs.lo().to_f64(),
            r.rhs.hi().to_f64(),
            r.residual.midpoint_f64()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm1() -> FMap {
        "x-1".parse().unwrap()
    }

    fn cert_xm1() -> LinearCertificate {
        LinearCertificate::new(1, 2)
    }

    #[test]
    fn classic_log_factorial_small() {
        assert!(log_classic_factorial(0, 64).contains_f64(0.0));
        assert!(log_classic_factorial(1, 64).contains_f64(0.0));
        assert!(log_classic_factorial(10, 64).contains_f64(3628800f64.ln()));
    }

    #[test]
    fn stirling_close_to_exact() {
        let exact = log_classic_factorial(10_000, 96).midpoint_f64();
        assert!((exact - 82108.92784).abs() < 1e-3);
        assert!((stirling_log_factorial(10_000) - exact).abs() < 1e-4);
    }

    #[test]
    fn first_table_small_rows() {
        let rows = table_rows(&xm1(), &cert_xm1(), &[1, 2, 10], 96).unwrap();
        assert!((rows[0].lhs.midpoint_f64() - 0.69314718).abs() < 1e-8);
        assert!((rows[1].lhs.midpoint_f64() - 3.17805383).abs() < 1e-8);
        assert!((rows[1].rhs.midpoint_f64() - 3.1470).abs() < 2e-4);
        assert!((rows[2].lhs.midpoint_f64() - 26.63100423).abs() < 1e-7);
    }

    #[test]
    fn second_table_small_rows() {
        let rows = table_rows(
            &FMap::HalfCeiling,
            &LinearCertificate::new(2, 4),
            &[1, 10],
            96,
        )
        .unwrap();
        assert!((rows[0].lhs.midpoint_f64() - 1.79175947).abs() < 1e-8);
        assert!((rows[0].rhs.midpoint_f64() - 1.7607).abs() < 2e-4);
        assert!((rows[1].lhs.midpoint_f64() - 56.48997144).abs() < 1e-7);
    }

    #[test]
    fn residual_is_lhs_minus_rhs() {
        let rows = table_rows(&xm1(), &cert_xm1(), &[5, 50], 96).unwrap();
        for r in &rows {
            let diff = r.lhs.sub(&r.rhs);
            assert!(diff.overlaps(&r.residual));
        }
    }

    #[test]
    fn identity_residuals_vanish() {
        let trend = residual_trend(
            &FMap::Identity,
            &LinearCertificate::new(1, 0),
            &[10, 100, 1000],
        )
        .unwrap();
        for (n, v) in trend {
            assert!(v < 1e-6, "n = {n}: {v}");
        }
    }

    #[test]
    fn a202367_first_terms() {
        let terms = a202367_sequence(6).unwrap();
        let expect: Vec<Integer> = [1u64, 6, 360, 45360, 5443200, 359251200]
            .iter()
            .map(|&t| Integer::from(t))
            .collect();
        assert_eq!(terms, expect);
    }

    #[test]
    fn render_formats() {
        let rows = table_rows(&xm1(), &cert_xm1(), &[2], 96).unwrap();
        let text = render_text(&rows);
        assert!(text.contains("3.178"));
        let csv = render_csv(&rows);
        assert!(csv.starts_with("n,lhs_lo,lhs_hi,rhs_lo,rhs_hi,residual\r\n"));
        assert_eq!(csv.matches("\r\n").count(), 2);
        let json = serde_json::to_value(&rows).unwrap();
        assert_eq!(json[0]["n"], 2);
        assert!(json[0]["lhs_lo"].as_f64().unwrap() <= json[0]["lhs_hi"].as_f64().unwrap());
    }
}
