use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest total the uniform partition sampler accepts.
pub const PARTITION_CEILING: u32 = 6000;

/// An integer partition, parts stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
    total: u32,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::param("a partition needs at least one part and all parts >= 1"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let total = parts.iter().map(|&p| p as u64).sum::<u64>();
        let total = u32::try_from(total).map_err(|_| Error::param("partition total overflows u32"))?;
        Ok(Self { parts, total })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>, total: u32) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert_eq!(parts.iter().map(|&p| p as u64).sum::<u64>(), total as u64);
        Self { parts, total }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Counts `p(n, k)`: partitions of `n` whose largest part is at most `k`.
///
/// Values are held as `f64`. Every count below the ceiling is under 1e80 and
/// is produced by the additive recurrence `p(n, k) = p(n, k-1) + p(n-k, k)`,
/// so the relative rounding error is bounded by roughly `n * 2^-53`
/// (below 1e-12 at the ceiling) and counts up to 2^53 are exact. The sampler
/// only ever uses ratios of counts, so this bias on the selection
/// probabilities is of the same order.
#[derive(Debug)]
pub struct PartitionTable {
    max_total: u32,
    // Row m (1-based) stores p(m, 1..=m) starting at m(m-1)/2.
    counts: Vec<f64>,
}

impl PartitionTable {
    pub fn new(max_total: u32) -> Result<Self> {
        if max_total < 1 {
            return Err(Error::param("partition table needs max_total >= 1"));
        }
        if max_total > PARTITION_CEILING {
            return Err(Error::param(format!(
                "partition total {max_total} exceeds the sampler ceiling {PARTITION_CEILING}"
            )));
        }
        let n = max_total as usize;
        let mut counts = vec![0.0; n * (n + 1) / 2];
        for m in 1..=n {
            let row = m * (m - 1) / 2;
            counts[row] = 1.0;
            for k in 2..=m {
                let rest = m - k;
                let with_k = if rest == 0 {
                    1.0
                } else {
                    counts[rest * (rest - 1) / 2 + k.min(rest) - 1]
                };
                counts[row + k - 1] = counts[row + k - 2] + with_k;
            }
        }
        Ok(Self { max_total, counts })
    }

    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    /// `p(n, k)`; `p(0, k) = 1`. Panics if `n` exceeds [`Self::max_total`].
    #[inline]
    pub fn count_bounded(&self, n: u32, k: u32) -> f64 {
        assert!(n <= self.max_total(), "partition total {n} beyond table size {}", self.max_total());
        let n = n as usize;
        if n == 0 {
            return 1.0;
        }
        if k == 0 {
            return 0.0;
        }
        let k = (k as usize).min(n);
        self.counts[n * (n - 1) / 2 + k - 1]
    }

    /// `p(n)`, the number of partitions of `n`.
    pub fn count(&self, n: u32) -> f64 {
        self.count_bounded(n, n)
    }

    /// Draws a partition of `total` uniformly over all partitions.
    ///
    /// Walks the recurrence from `(total, total)`: at state `(m, k)` the
    /// partition contains a part equal to `k` with probability
    /// `p(m-k, k) / p(m, k)`, otherwise the bound drops to `k - 1`.
    pub fn sample<R: Rng + ?Sized>(&self, total: u32, rng: &mut R) -> Result<Partition> {
        if total < 1 {
            return Err(Error::param("partition total must be at least 1"));
        }
        if total > self.max_total {
            return Err(Error::param(format!(
                "total {total} exceeds table size {}",
                self.max_total
            )));
        }
        let mut parts = Vec::new();
        let mut m = total;
        let mut k = total;
        while m > 0 {
            k = k.min(m);
            if k == 1 {
                parts.extend(std::iter::repeat_n(1, m as usize));
                break;
            }
            let with_k = self.count_bounded(m - k, k);
            let all = self.count_bounded(m, k);
            if rng.gen::<f64>() * all < with_k {
                parts.push(k);
                m -= k;
            } else {
                k -= 1;
            }
        }
        Ok(Partition::from_sorted(parts, total))
    }
}

static SHARED: RwLock<Option<Arc<PartitionTable>>> = RwLock::new(None);

/// Process-wide table covering at least `min_total`, built on first use and
/// rebuilt larger only when a bigger total is requested.
pub fn shared_table(min_total: u32) -> Result<Arc<PartitionTable>> {
    if let Some(t) = SHARED.read().expect("partition table lock").as_ref() {
        if t.max_total() >= min_total {
            return Ok(Arc::clone(t));
        }
    }
    let mut slot = SHARED.write().expect("partition table lock");
    if let Some(t) = slot.as_ref() {
        if t.max_total() >= min_total {
            return Ok(Arc::clone(t));
        }
    }
    // Round up so that a sweep over growing totals does not rebuild every time.
    let current = slot.as_ref().map_or(0, |t| t.max_total());
    let target = min_total
        .max(current.saturating_mul(2))
        .max(64)
        .next_multiple_of(64)
        .min(PARTITION_CEILING)
        .max(min_total);
    let table = Arc::new(PartitionTable::new(target)?);
    *slot = Some(Arc::clone(&table));
    Ok(table)
}

/// Exact partition numbers `p(0..=n)` by Euler's pentagonal-number recurrence.
pub fn partition_numbers_exact(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::from(1u32));
    for m in 1..=n {
        let mut plus = BigUint::from(0u32);
        let mut minus = BigUint::from(0u32);
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let acc = if j % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[m - g1];
            if g2 <= m {
                *acc += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_counts() {
        let t = PartitionTable::new(12).unwrap();
        let expected = [1.0, 2.0, 3.0, 5.0, 7.0, 11.0, 15.0, 22.0, 30.0, 42.0, 56.0, 77.0];
        for (n, &e) in (1..=12).zip(expected.iter()) {
            assert_eq!(t.count(n), e, "p({n})");
        }
        assert_eq!(t.count_bounded(10, 3), 14.0);
        assert_eq!(t.count_bounded(0, 5), 1.0);
    }

    #[test]
    fn total_one_is_unique() {
        let t = PartitionTable::new(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert_eq!(t.sample(1, &mut rng).unwrap().parts(), &[1]);
        }
    }

    #[test]
    fn sampled_parts_sum_to_total() {
        let t = PartitionTable::new(300).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for total in [1u32, 2, 7, 64, 299, 300] {
            let p = t.sample(total, &mut rng).unwrap();
            assert_eq!(p.parts().iter().sum::<u32>(), total);
            assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let t = PartitionTable::new(10).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert!(t.sample(0, &mut rng).is_err());
        assert!(t.sample(11, &mut rng).is_err());
        assert!(PartitionTable::new(PARTITION_CEILING + 1).is_err());
    }

    #[test]
    fn pentagonal_numbers() {
        let p = partition_numbers_exact(100);
        assert_eq!(p[10], BigUint::from(42u32));
        assert_eq!(p[60], BigUint::from(966_467u32));
        assert_eq!(p[100], BigUint::from(190_569_292u64));
    }

    #[test]
    fn partition_new_sorts() {
        let p = Partition::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.total(), 6);
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
