//! Segmented sieve of Eratosthenes.

use alloc::vec;
use alloc::vec::Vec;

/// Default number of integers covered by one sieve block.
pub const DEFAULT_BLOCK: u64 = 1 << 20;

/// Primes `≤ n` by a plain sieve. Used for base primes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Sieve for all primes up to `limit`, processed in independent blocks.
#[derive(Debug, Clone)]
pub struct SegmentedSieve {
    limit: u64,
    base: Vec<u64>,
}

impl SegmentedSieve {
    pub fn new(limit: u64) -> Self {
        SegmentedSieve { limit, base: primes_up_to(isqrt(limit)) }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primes `≤ √limit`.
    pub fn base_primes(&self) -> &[u64] {
        &self.base
    }

    /// Half-open blocks `[lo, hi)` of width `block` covering `[2, limit]`.
    pub fn segments(&self, block: u64) -> impl Iterator<Item = (u64, u64)> {
        let block = block.max(1);
        let end = self.limit.saturating_add(1);
        let mut lo = 2u64;
        core::iter::from_fn(move || {
            if lo >= end {
                return None;
            }
            let hi = lo.saturating_add(block).min(end);
            let seg = (lo, hi);
            lo = hi;
            Some(seg)
        })
    }

    /// Primes `p` with `lo ≤ p < hi`. Requires `hi ≤ limit + 1`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> Vec<u64> {
        assert!(hi <= self.limit.saturating_add(1), "segment beyond sieve limit");
        let lo = lo.max(2);
        if hi <= lo {
            return Vec::new();
        }
        let width = (hi - lo) as usize;
        let mut composite = vec![false; width];
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            let first = (p * p).max(lo.div_ceil(p) * p);
            let mut j = (first - lo) as usize;
            while j < width {
                composite[j] = true;
                j += p as usize;
            }
        }
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo + i as u64)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_agree_with_plain_sieve() {
        let limit = 100_003;
        let sieve = SegmentedSieve::new(limit);
        let segmented: Vec<u64> = sieve
            .segments(4096)
            .flat_map(|(lo, hi)| sieve.primes_in(lo, hi))
            .collect();
        assert_eq!(segmented, primes_up_to(limit));
        assert_eq!(segmented.len(), 9593);
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }
}
