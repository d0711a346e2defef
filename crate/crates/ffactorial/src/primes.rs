//! Prime generation and the classical Chebyshev theta function.
//!
//! All prime streams in the crate come from one deterministic segmented
//! sieve. An optional on-disk cache (keyed by limit) skips re-sieving on
//! repeated CLI runs; results are identical with the cache disabled.

use crate::error::{Error, Result};
use crate::interval::BoundedValue;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

const SEGMENT: usize = 1 << 18;
const MAX_LIMIT: u64 = 1 << 33;
const CACHE_MAGIC: &[u8; 8] = b"LLPRIME1";

/// All primes up to a fixed limit, in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p <= bound`.
    pub fn up_to(&self, bound: u64) -> &[u64] {
        assert!(bound <= self.limit, "bound {bound} beyond table limit");
        let idx = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..idx]
    }
}

/// Sieves all primes `<= limit`. A limit below 2 yields an empty table.
pub fn primes_up_to(limit: u64) -> Result<PrimeTable> {
    if limit > MAX_LIMIT {
        return Err(Error::Capacity(limit));
    }
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }

    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root.max(2));

    let mut primes = Vec::with_capacity(estimate_pi(limit));
    let mut seg = vec![true; SEGMENT];
    let mut low: u64 = 2;
    while low <= limit {
        let high = (low + SEGMENT as u64 - 1).min(limit);
        let len = (high - low + 1) as usize;
        seg[..len].fill(true);
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = p * p;
            if start < low {
                start = low.div_ceil(p) * p;
            }
            let mut j = (start - low) as usize;
            while j < len {
                seg[j] = false;
                j += p as usize;
            }
        }
        for (i, &ok) in seg[..len].iter().enumerate() {
            if ok {
                primes.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    Ok(PrimeTable { limit, primes })
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    if n >= 1 {
        is_p[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is_p[i] {
            let mut j = i * i;
            while j <= n {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| is_p[i]).map(|i| i as u64).collect()
}

fn estimate_pi(limit: u64) -> usize {
    if limit < 17 {
        return 8;
    }
    let x = limit as f64;
    (x / (x.ln() - 1.1)) as usize + 16
}

/// Deterministic Miller-Rabin for u64; used by invariant checks.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for all n < 2^64.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Enclosure of the classical Chebyshev theta, `sum_{p <= x} ln p`,
/// summed in ascending prime order.
pub fn theta(table: &PrimeTable, x: f64, prec: u32) -> BoundedValue {
    assert!(x >= 0.0);
    let bound = x.floor().max(0.0) as u64;
    let mut acc = BoundedValue::zero(prec);
    for &p in table.up_to(bound.min(table.limit())) {
        acc.add_assign(&BoundedValue::ln_u64(prec, p));
    }
    acc
}

/// Loads a cached table for exactly this limit, or sieves and stores one.
///
/// Cache format: `LLPRIME1` magic, then limit and count as little-endian
/// u64, then each prime as little-endian u64.
pub fn primes_up_to_cached(limit: u64, cache_dir: Option<&Path>) -> Result<PrimeTable> {
    let dir = match cache_dir {
        Some(d) => d.to_path_buf(),
        None => match std::env::var_os("LEGENDRE_CACHE_DIR") {
            Some(d) => PathBuf::from(d),
            None => return primes_up_to(limit),
        },
    };
    let path = dir.join(format!("primes-{limit}.bin"));
    if let Ok(table) = read_cache(&path, limit) {
        return Ok(table);
    }
    let table = primes_up_to(limit)?;
    // Best effort; a failed write must not fail the computation.
    let _ = fs::create_dir_all(&dir).and_then(|_| write_cache(&path, &table));
    Ok(table)
}

fn read_cache(path: &Path, limit: u64) -> std::io::Result<PrimeTable> {
    let mut f = fs::File::open(path)?;
    let mut header = [0u8; 24];
    f.read_exact(&mut header)?;
    let bad = || std::io::Error::new(std::io::ErrorKind::InvalidData, "bad prime cache");
    if &header[..8] != CACHE_MAGIC {
        return Err(bad());
    }
    let stored_limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(header[16..24].try_into().unwrap());
    if stored_limit != limit || count > MAX_LIMIT {
        return Err(bad());
    }
    let mut buf = vec![0u8; count as usize * 8];
    f.read_exact(&mut buf)?;
    let primes: Vec<u64> = buf
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if primes.windows(2).any(|w| w[0] >= w[1]) || primes.iter().any(|&p| p > limit) {
        return Err(bad());
    }
    Ok(PrimeTable { limit, primes })
}

fn write_cache(path: &Path, table: &PrimeTable) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(24 + table.len() * 8);
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&table.limit.to_le_bytes());
    buf.extend_from_slice(&(table.len() as u64).to_le_bytes());
    for &p in &table.primes {
        buf.extend_from_slice(&p.to_le_bytes());
    }
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(&tmp, path)
}
