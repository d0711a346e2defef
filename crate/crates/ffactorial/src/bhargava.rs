//! Greedy p-orderings and the set factorial `n!_S = prod_p v_n(S, p)`,
//! built from first principles as an independent oracle against the
//! closed-form Legendre route.

use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use rand::seq::IndexedRandom;
use rand::Rng;
use rug::ops::Pow;
use rug::Integer;
use std::collections::BTreeMap;

/// How a set of integers was described.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetDescriptor {
    /// All primes up to a limit.
    Primes { limit: u64 },
    /// An explicit finite list.
    Explicit,
}

/// A set `S` of distinct integers, materialized in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSet {
    pub descriptor: SetDescriptor,
    elements: Vec<i64>,
}

impl IntegerSet {
    pub fn primes(limit: u64) -> Result<Self> {
        let table = primes_up_to(limit)?;
        Ok(IntegerSet {
            descriptor: SetDescriptor::Primes { limit },
            elements: table.primes().iter().map(|&p| p as i64).collect(),
        })
    }

    pub fn explicit(mut elements: Vec<i64>) -> Result<Self> {
        elements.sort_unstable();
        let before = elements.len();
        elements.dedup();
        if elements.len() != before {
            return Err(Error::Invalid("set elements must be distinct".into()));
        }
        Ok(IntegerSet {
            descriptor: SetDescriptor::Explicit,
            elements,
        })
    }

    /// The known prefix of the set associated with A202367.
    pub fn a202367_prefix() -> Self {
        IntegerSet {
            descriptor: SetDescriptor::Explicit,
            elements: vec![2, 4, 16, 22],
        }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    /// First `len` elements, or everything for a shorter explicit set.
    fn pool(&self, len: usize) -> Result<&[i64]> {
        match self.descriptor {
            SetDescriptor::Explicit => Ok(&self.elements[..len.min(self.elements.len())]),
            SetDescriptor::Primes { .. } => {
                if self.elements.len() < len {
                    Err(Error::TruncationTooSmall {
                        have: self.elements.len(),
                        need: len,
                    })
                } else {
                    Ok(&self.elements[..len])
                }
            }
        }
    }
}

/// Tie-break rule among elements attaining the minimal valuation.
pub enum TieBreak<'a> {
    /// Deterministic: smallest element wins.
    Smallest,
    /// Uniform choice among the minimizers; used by the invariance tests.
    Random(&'a mut dyn rand::RngCore),
}

/// A greedy p-ordering with its per-step valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct POrdering {
    pub p: u64,
    pub sequence: Vec<i64>,
    /// `step_valuations[k]` is the p-adic valuation of
    /// `prod_{i<k} (a_k - a_i)`.
    pub step_valuations: Vec<u32>,
}

fn padic_valuation(p: u64, x: i64) -> u32 {
    debug_assert!(x != 0);
    let mut v = 0;
    let mut m = x.unsigned_abs();
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

/// Constructs a greedy p-ordering of the given length from `S`.
///
/// At each step the element minimizing the valuation of the difference
/// product is chosen; repeats are forbidden so every difference is
/// nonzero.
pub fn p_ordering(
    set: &IntegerSet,
    p: u64,
    length: usize,
    mut tie: TieBreak<'_>,
) -> Result<POrdering> {
    if set.elements.len() < length {
        return Err(Error::TruncationTooSmall {
            have: set.elements.len(),
            need: length,
        });
    }
    let mut chosen: Vec<i64> = Vec::with_capacity(length);
    let mut used = vec![false; set.elements.len()];
    let mut valuations = Vec::with_capacity(length);
    for _ in 0..length {
        let mut best: Option<u64> = None;
        let mut minimizers: Vec<usize> = Vec::new();
        for (i, &c) in set.elements.iter().enumerate() {
            if used[i] {
                continue;
            }
            let total: u64 = chosen
                .iter()
                .map(|&a| padic_valuation(p, c - a) as u64)
                .sum();
            match best {
                Some(b) if total > b => {}
                Some(b) if total == b => minimizers.push(i),
                _ => {
                    best = Some(total);
                    minimizers.clear();
                    minimizers.push(i);
                }
            }
        }
        let pick = match &mut tie {
            TieBreak::Smallest => minimizers[0],
            TieBreak::Random(rng) => *minimizers.choose(*rng).unwrap(),
        };
        used[pick] = true;
        chosen.push(set.elements[pick]);
        valuations.push(u32::try_from(best.unwrap()).unwrap());
    }
    Ok(POrdering {
        p,
        sequence: chosen,
        step_valuations: valuations,
    })
}

/// `v_n(S, p)`: the prime power `p^e` where `e` is the minimized step
/// valuation. Independent of which valid p-ordering is constructed.
pub fn v_n(set: &IntegerSet, p: u64, n: usize) -> Result<Integer> {
    let ord = p_ordering(set, p, n + 1, TieBreak::Smallest)?;
    Ok(Integer::from(p).pow(ord.step_valuations[n]))
}

/// Per-prime valuations of `n!_S` over a truncation of `S`.
fn valuations_over_pool(set: &IntegerSet, n: usize, pool_len: usize) -> Result<BTreeMap<u64, u32>> {
    let pool = set.pool(pool_len)?;
    if pool.len() < n + 1 {
        return Err(Error::TruncationTooSmall {
            have: pool.len(),
            need: n + 1,
        });
    }
    let truncated = IntegerSet {
        descriptor: SetDescriptor::Explicit,
        elements: pool.to_vec(),
    };
    // p beyond the largest pairwise difference cannot divide any of them
    let max_diff = (pool[pool.len() - 1] - pool[0]).unsigned_abs().max(2);
    let table = primes_up_to(max_diff)?;
    let mut out = BTreeMap::new();
    for &p in table.primes() {
        let ord = p_ordering(&truncated, p, n + 1, TieBreak::Smallest)?;
        let v = ord.step_valuations[n];
        if v > 0 {
            out.insert(p, v);
        }
    }
    Ok(out)
}

/// `n!_S` by greedy p-orderings, with a truncation-stability check: the
/// search pool starts at `max(4(n+1), 64)` elements and doubles until one
/// doubling leaves every valuation unchanged.
pub fn factorial_s(set: &IntegerSet, n: usize) -> Result<Integer> {
    let full = set.elements.len();
    let mut pool_len = (4 * (n + 1)).max(64).min(full.max(n + 1));
    let mut vals = valuations_over_pool(set, n, pool_len)?;
    let mut stable = false;
    while pool_len < full {
        let next_len = (pool_len * 2).min(full);
        let next = valuations_over_pool(set, n, next_len)?;
        if next == vals {
            stable = true;
            break;
        }
        vals = next;
        pool_len = next_len;
    }
    // a finite explicit set evaluated in full is definitive by definition
    if !stable && !matches!(set.descriptor, SetDescriptor::Explicit) {
        return Err(Error::UnstableTruncation {
            what: "element-pool",
        });
    }
    let mut acc = Integer::from(1);
    for (p, v) in vals {
        acc *= Integer::from(p).pow(v);
    }
    Ok(acc)
}

/// `n!_S` over an explicit prime cutoff, with the doubling stability
/// check demanded of caller-supplied bounds.
pub fn factorial_s_bounded(set: &IntegerSet, n: usize, prime_bound: u64) -> Result<Integer> {
    let pool_len = (4 * (n + 1)).max(64).min(set.elements.len());
    let vals = valuations_over_pool(set, n, pool_len)?;
    let within = |bound: u64| -> Integer {
        let mut acc = Integer::from(1);
        for (&p, &v) in vals.iter().filter(|(&p, _)| p <= bound) {
            acc *= Integer::from(p).pow(v);
        }
        acc
    };
    let once = within(prime_bound);
    let doubled = within(prime_bound.saturating_mul(2));
    if once != doubled {
        return Err(Error::UnstableTruncation {
            what: "prime-bound",
        });
    }
    Ok(once)
}

/// Randomized greedy run for the ordering-invariance property test.
pub fn v_n_randomized<R: Rng>(set: &IntegerSet, p: u64, n: usize, rng: &mut R) -> Result<u32> {
    let ord = p_ordering(set, p, n + 1, TieBreak::Random(rng))?;
    Ok(ord.step_valuations[n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn greedy_starts_from_smallest() {
        let s = IntegerSet::primes(100).unwrap();
        let ord = p_ordering(&s, 2, 3, TieBreak::Smallest).unwrap();
        assert_eq!(ord.sequence[0], 2);
        assert_eq!(ord.sequence[1], 3);
        assert_eq!(ord.step_valuations[0], 0);
        assert_eq!(ord.step_valuations[1], 0);
    }

    #[test]
    fn z_prefix_reproduces_ordinary_factorial_two_part() {
        let s = IntegerSet::explicit(vec![0, 1, 2, 3]).unwrap();
        let ord = p_ordering(&s, 2, 4, TieBreak::Smallest).unwrap();
        // brute force over all 24 orderings confirms (0, 0, 1, 1)
        assert_eq!(ord.step_valuations, vec![0, 0, 1, 1]);
    }

    #[test]
    fn brute_force_confirms_greedy_optimality() {
        // over {0,1,2,3}, every ordering yields total valuation >= greedy's
        let elems = [0i64, 1, 2, 3];
        let mut best = u32::MAX;
        let mut perm = elems;
        permute(&mut perm, 0, &mut |seq| {
            let mut total = 0;
            for k in 1..4 {
                for i in 0..k {
                    total += padic_valuation(2, seq[k] - seq[i]);
                }
            }
            best = best.min(total);
        });
        let s = IntegerSet::explicit(elems.to_vec()).unwrap();
        let ord = p_ordering(&s, 2, 4, TieBreak::Smallest).unwrap();
        let greedy_total: u32 = ord.step_valuations.iter().sum();
        assert_eq!(greedy_total, best);
    }

    fn permute(arr: &mut [i64; 4], k: usize, f: &mut impl FnMut(&[i64; 4])) {
        if k == 4 {
            f(arr);
            return;
        }
        for i in k..4 {
            arr.swap(k, i);
            permute(arr, k + 1, f);
            arr.swap(k, i);
        }
    }

    #[test]
    fn v_n_examples() {
        let s = IntegerSet::primes(1_000).unwrap();
        assert_eq!(v_n(&s, 2, 2).unwrap(), 2);
        assert_eq!(v_n(&s, 2, 0).unwrap(), 1);
        assert_eq!(v_n(&s, 2, 3).unwrap(), 8);
        assert_eq!(v_n(&s, 5, 1).unwrap(), 1);
    }

    #[test]
    fn prime_factorial_sequence() {
        let s = IntegerSet::primes(10_000).unwrap();
        let expect = [1u64, 1, 2, 24, 48, 5760, 11520];
        for (n, &want) in expect.iter().enumerate() {
            assert_eq!(factorial_s(&s, n).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn integer_prefix_behaves_like_factorial() {
        let s = IntegerSet::explicit((0..=5).collect()).unwrap();
        assert_eq!(factorial_s(&s, 5).unwrap(), 120);
    }

    #[test]
    fn bounded_variant_flags_unstable_truncation() {
        let s = IntegerSet::primes(10_000).unwrap();
        // bound 2 misses the 3-part of 3!_P = 24
        assert!(matches!(
            factorial_s_bounded(&s, 3, 2),
            Err(Error::UnstableTruncation { .. })
        ));
        assert_eq!(factorial_s_bounded(&s, 3, 100).unwrap(), 24);
    }

    #[test]
    fn ordering_invariance_under_random_tie_breaks() {
        let s = IntegerSet::primes(2_000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &(p, n) in &[(2u64, 4usize), (3, 5), (5, 3)] {
            let reference = v_n(&s, p, n).unwrap();
            for _ in 0..20 {
                let v = v_n_randomized(&s, p, n, &mut rng).unwrap();
                assert_eq!(Integer::from(p).pow(v), reference);
            }
        }
    }

    #[test]
    fn truncation_too_small() {
        let s = IntegerSet::explicit(vec![1, 2, 3]).unwrap();
        assert!(matches!(
            p_ordering(&s, 2, 4, TieBreak::Smallest),
            Err(Error::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn distinct_elements_enforced() {
        assert!(IntegerSet::explicit(vec![1, 1, 2]).is_err());
    }
}
