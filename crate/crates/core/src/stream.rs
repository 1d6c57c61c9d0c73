//! Dirichlet coefficient streams of `ζ_K` and `-ζ'_K/ζ_K`, built by
//! segmented sieving over rational primes, and the summatory functions
//! `Δ_K(x)` and `Φ_K(r, x)` evaluated on them.
//!
//! Every builder works block by block: a block `[lo, hi)` only needs the
//! base primes `≤ √x_max` (precomputed once) and the primes inside the
//! block. Blocks are independent, so a caller may build them on several
//! threads and concatenate the results in block order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Factor, FieldSpec};
use crate::sieve::{SegmentedSieve, DEFAULT_BLOCK};
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Largest supported `x_max`. Keeps `n` comfortably inside `u64` and
/// dense indices inside `usize` on 64-bit targets.
pub const MAX_X: u64 = 1 << 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamKind {
    /// `Λ_K(n)`, sparse.
    VonMangoldt,
    /// `a_K(n)`, number of integral ideals of norm `n`; dense.
    IdealCount,
    /// Arbitrary real coefficients `b_n`, sparse.
    Generic,
}

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Sparse(Vec<(u64, f64)>),
    /// Index `i` holds `a(i + 1)`.
    Dense(Vec<u32>),
}

/// Dirichlet coefficients `b_n` for `1 ≤ n ≤ x_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffStream {
    pub x_max: u64,
    pub kind: StreamKind,
    pub field_label: String,
    values: Values,
}

impl CoeffStream {
    /// Sparse stream from `(n, b_n)` pairs strictly increasing in `n`.
    pub fn from_sparse(
        kind: StreamKind,
        x_max: u64,
        entries: Vec<(u64, f64)>,
        field_label: String,
    ) -> Result<Self> {
        if kind == StreamKind::IdealCount {
            return Err(Error::WrongStreamKind);
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Domain("stream entries must be strictly increasing in n"));
        }
        if entries.last().is_some_and(|&(n, _)| n > x_max) || entries.first().is_some_and(|&(n, _)| n == 0) {
            return Err(Error::Domain("stream entries must lie in [1, x_max]"));
        }
        Ok(CoeffStream { x_max, kind, field_label, values: Values::Sparse(entries) })
    }

    /// Nonzero coefficients as `(n, b_n)` in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let (sparse, dense) = match &self.values {
            Values::Sparse(v) => (Some(v.iter().copied()), None),
            Values::Dense(v) => (
                None,
                Some(
                    v.iter()
                        .enumerate()
                        .filter(|(_, &a)| a != 0)
                        .map(|(i, &a)| (i as u64 + 1, a as f64)),
                ),
            ),
        };
        sparse.into_iter().flatten().chain(dense.into_iter().flatten())
    }

    /// Number of stored entries (nonzero for sparse, all `n` for dense).
    pub fn len(&self) -> usize {
        match &self.values {
            Values::Sparse(v) => v.len(),
            Values::Dense(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, n: u64) -> f64 {
        match &self.values {
            Values::Sparse(v) => v
                .binary_search_by_key(&n, |&(m, _)| m)
                .map_or(0.0, |i| v[i].1),
            Values::Dense(v) => {
                if n == 0 || n > self.x_max {
                    0.0
                } else {
                    v[(n - 1) as usize] as f64
                }
            }
        }
    }

    /// `B(x) = Σ_{n≤x} b_n`, compensated.
    pub fn summatory(&self, x: f64) -> Result<f64> {
        if x > self.x_max as f64 {
            return Err(Error::OutOfRange { x, x_max: self.x_max as f64 });
        }
        let mut acc = CompensatedSum::new();
        for (n, b) in self.iter() {
            if n as f64 > x {
                break;
            }
            acc += b;
        }
        Ok(acc.value())
    }

    pub fn sparse_entries(&self) -> Option<&[(u64, f64)]> {
        match &self.values {
            Values::Sparse(v) => Some(v),
            Values::Dense(_) => None,
        }
    }

    pub fn dense_counts(&self) -> Option<&[u32]> {
        match &self.values {
            Values::Dense(v) => Some(v),
            Values::Sparse(_) => None,
        }
    }
}

fn check_x_max(x_max: u64) -> Result<()> {
    if x_max < 2 {
        return Err(Error::Domain("x_max must be at least 2"));
    }
    if x_max > MAX_X {
        return Err(Error::Overflow("x_max beyond the supported index range"));
    }
    Ok(())
}

/// Powers `p^j ≤ x_max`, `j ≥ 1`.
fn powers_of(p: u64, x_max: u64) -> impl Iterator<Item = (u32, u64)> {
    let mut q = Some(p);
    let mut j = 0u32;
    core::iter::from_fn(move || {
        let cur = q.filter(|&v| v <= x_max)?;
        j += 1;
        q = cur.checked_mul(p);
        Some((j, cur))
    })
}

/// `Σ g` over factors of residue degree one.
fn degree_one_count(factors: &[Factor]) -> u32 {
    factors.iter().filter(|fac| fac.f == 1).map(|fac| fac.g).sum()
}

/// Block builder for `Λ_K(n)`.
///
/// `Λ_K(p^j) = log p · Σ_{factors with f | j} g·f`: every prime ideal of
/// norm `p^f` contributes `log p^f` at each of its powers.
#[derive(Debug, Clone)]
pub struct LambdaSieve<'a> {
    field: &'a FieldSpec,
    x_max: u64,
    sieve: SegmentedSieve,
    // (n, Λ(n)) for all powers of base primes, sorted by n
    small: Vec<(u64, f64)>,
}

impl<'a> LambdaSieve<'a> {
    pub fn new(field: &'a FieldSpec, x_max: u64) -> Result<Self> {
        check_x_max(x_max)?;
        let sieve = SegmentedSieve::new(x_max);
        let mut small = Vec::new();
        for &p in sieve.base_primes() {
            let split = field.split_prime_unchecked(p)?;
            let logp = libm::log(p as f64);
            for (j, n) in powers_of(p, x_max) {
                let weight: u32 = split
                    .factors
                    .iter()
                    .filter(|fac| j % fac.f == 0)
                    .map(|fac| fac.g * fac.f)
                    .sum();
                if weight > 0 {
                    small.push((n, weight as f64 * logp));
                }
            }
        }
        small.sort_by_key(|&(n, _)| n);
        Ok(LambdaSieve { field, x_max, sieve, small })
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn segments(&self, block: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.sieve.segments(block)
    }

    /// Nonzero `(n, Λ_K(n))` with `lo ≤ n < hi`, increasing in `n`.
    pub fn segment(&self, lo: u64, hi: u64) -> Result<Vec<(u64, f64)>> {
        let base_max = self.sieve.base_primes().last().copied().unwrap_or(1);
        let start = self.small.partition_point(|&(n, _)| n < lo);
        let end = self.small.partition_point(|&(n, _)| n < hi);
        let mut small = self.small[start..end].iter().copied().peekable();
        let mut out = Vec::new();
        for p in self.sieve.primes_in(lo, hi) {
            if p <= base_max {
                continue;
            }
            let split = self.field.split_prime_unchecked(p)?;
            let count = degree_one_count(&split.factors);
            if count == 0 {
                continue;
            }
            while let Some(&(n, v)) = small.peek() {
                if n >= p {
                    break;
                }
                out.push((n, v));
                small.next();
            }
            out.push((p, count as f64 * libm::log(p as f64)));
        }
        out.extend(small);
        Ok(out)
    }

    pub fn assemble(&self, blocks: impl IntoIterator<Item = Vec<(u64, f64)>>) -> CoeffStream {
        let entries: Vec<(u64, f64)> = blocks.into_iter().flatten().collect();
        CoeffStream {
            x_max: self.x_max,
            kind: StreamKind::VonMangoldt,
            field_label: self.field.label.clone(),
            values: Values::Sparse(entries),
        }
    }

    pub fn build(&self, block: u64) -> Result<CoeffStream> {
        let blocks = self
            .segments(block)
            .map(|(lo, hi)| self.segment(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(blocks))
    }
}

/// `Λ_K(n)` for `n ≤ x_max`.
pub fn lambda_stream(field: &FieldSpec, x_max: u64) -> Result<CoeffStream> {
    LambdaSieve::new(field, x_max)?.build(DEFAULT_BLOCK)
}

/// Number of ideals of norm `p^j`, `j = 0..=max_j`: the coefficients of
/// `Π_factors (1 − T^f)^{−g}`.
pub fn local_ideal_counts(factors: &[Factor], max_j: usize) -> Vec<u32> {
    let mut coeffs = vec![0u32; max_j + 1];
    coeffs[0] = 1;
    for fac in factors {
        let f = fac.f as usize;
        for _ in 0..fac.g {
            // multiply by 1/(1 − T^f): running sum with stride f
            for j in f..=max_j {
                coeffs[j] = coeffs[j].saturating_add(coeffs[j - f]);
            }
        }
    }
    coeffs
}

/// Block builder for the ideal counts `a_K(n)`, a multiplicative function
/// assembled from the local factors.
#[derive(Debug, Clone)]
pub struct IdealCountSieve<'a> {
    field: &'a FieldSpec,
    x_max: u64,
    sieve: SegmentedSieve,
    // local coefficient tables for base primes, same order as base_primes()
    local: Vec<Vec<u32>>,
}

impl<'a> IdealCountSieve<'a> {
    pub fn new(field: &'a FieldSpec, x_max: u64) -> Result<Self> {
        check_x_max(x_max)?;
        let sieve = SegmentedSieve::new(x_max);
        let local = sieve
            .base_primes()
            .iter()
            .map(|&p| {
                let split = field.split_prime_unchecked(p)?;
                let max_j = powers_of(p, x_max).count();
                Ok(local_ideal_counts(&split.factors, max_j))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealCountSieve { field, x_max, sieve, local })
    }

    /// Blocks `[lo, hi)` covering `[1, x_max]`.
    pub fn segments(&self, block: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let block = block.max(1);
        let end = self.x_max + 1;
        let mut lo = 1u64;
        core::iter::from_fn(move || {
            if lo >= end {
                return None;
            }
            let hi = (lo + block).min(end);
            let seg = (lo, hi);
            lo = hi;
            Some(seg)
        })
    }

    /// `a_K(n)` for `lo ≤ n < hi`, `lo ≥ 1`.
    pub fn segment(&self, lo: u64, hi: u64) -> Result<Vec<u32>> {
        let lo = lo.max(1);
        let width = hi.saturating_sub(lo) as usize;
        let mut rest: Vec<u64> = (lo..hi).collect();
        let mut counts = vec![1u32; width];
        for (&p, local) in self.sieve.base_primes().iter().zip(&self.local) {
            if p >= hi {
                break;
            }
            let mut i = (lo.div_ceil(p) * p - lo) as usize;
            while i < width {
                let mut v = 0;
                while rest[i].is_multiple_of(p) {
                    rest[i] /= p;
                    v += 1;
                }
                counts[i] = counts[i]
                    .checked_mul(local[v])
                    .ok_or(Error::Overflow("ideal count"))?;
                i += p as usize;
            }
        }
        // what is left is 1 or a single prime above √x_max
        for i in 0..width {
            let q = rest[i];
            if q > 1 && counts[i] != 0 {
                let split = self.field.split_prime_unchecked(q)?;
                counts[i] = counts[i]
                    .checked_mul(degree_one_count(&split.factors))
                    .ok_or(Error::Overflow("ideal count"))?;
            }
        }
        Ok(counts)
    }

    pub fn assemble(&self, blocks: impl IntoIterator<Item = Vec<u32>>) -> CoeffStream {
        let counts: Vec<u32> = blocks.into_iter().flatten().collect();
        debug_assert_eq!(counts.len() as u64, self.x_max);
        CoeffStream {
            x_max: self.x_max,
            kind: StreamKind::IdealCount,
            field_label: self.field.label.clone(),
            values: Values::Dense(counts),
        }
    }

    pub fn build(&self, block: u64) -> Result<CoeffStream> {
        let blocks = self
            .segments(block)
            .map(|(lo, hi)| self.segment(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble(blocks))
    }
}

/// `a_K(n)` for `n ≤ x_max`.
pub fn ideal_count_stream(field: &FieldSpec, x_max: u64) -> Result<CoeffStream> {
    IdealCountSieve::new(field, x_max)?.build(DEFAULT_BLOCK)
}

/// `Δ_K(x) = Σ_{n≤x} Λ_K(n) − x`.
pub fn delta(stream: &CoeffStream, x: f64) -> Result<f64> {
    if stream.kind != StreamKind::VonMangoldt {
        return Err(Error::WrongStreamKind);
    }
    let mut acc = CompensatedSum::new();
    acc += stream.summatory(x)?;
    acc += -x;
    Ok(acc.value())
}

/// A prime-ideal power `P^k` with `N(P)^k = n`; `mult` counts the prime
/// ideals `P` of the same norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPower {
    pub n: u64,
    pub k: u32,
    pub log_norm: f64,
    pub mult: u32,
}

/// Block enumerator of pairs `(P, k)` with `N(P)^k ≤ x_max`, in increasing
/// norm.
#[derive(Debug, Clone)]
pub struct IdealPowerSieve<'a> {
    field: &'a FieldSpec,
    x_max: u64,
    sieve: SegmentedSieve,
    small: Vec<IdealPower>,
}

impl<'a> IdealPowerSieve<'a> {
    pub fn new(field: &'a FieldSpec, x_max: u64) -> Result<Self> {
        check_x_max(x_max)?;
        let sieve = SegmentedSieve::new(x_max);
        let mut small = Vec::new();
        for &p in sieve.base_primes() {
            let split = field.split_prime_unchecked(p)?;
            let logp = libm::log(p as f64);
            let mut by_f: Vec<(u32, u32)> = Vec::new();
            for fac in &split.factors {
                match by_f.iter_mut().find(|(f, _)| *f == fac.f) {
                    Some((_, g)) => *g += fac.g,
                    None => by_f.push((fac.f, fac.g)),
                }
            }
            for (f, g) in by_f {
                let Some(norm) = p.checked_pow(f) else { continue };
                for (k, n) in powers_of(norm, x_max) {
                    small.push(IdealPower { n, k, log_norm: f as f64 * logp, mult: g });
                }
            }
        }
        small.sort_by(|a, b| a.n.cmp(&b.n).then(b.k.cmp(&a.k)));
        Ok(IdealPowerSieve { field, x_max, sieve, small })
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn segments(&self, block: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.sieve.segments(block)
    }

    pub fn segment(&self, lo: u64, hi: u64) -> Result<Vec<IdealPower>> {
        let base_max = self.sieve.base_primes().last().copied().unwrap_or(1);
        let start = self.small.partition_point(|e| e.n < lo);
        let end = self.small.partition_point(|e| e.n < hi);
        let mut small = self.small[start..end].iter().copied().peekable();
        let mut out = Vec::new();
        for p in self.sieve.primes_in(lo, hi) {
            if p <= base_max {
                continue;
            }
            let split = self.field.split_prime_unchecked(p)?;
            let count = degree_one_count(&split.factors);
            if count == 0 {
                continue;
            }
            while let Some(&e) = small.peek() {
                if e.n >= p {
                    break;
                }
                out.push(e);
                small.next();
            }
            out.push(IdealPower { n: p, k: 1, log_norm: libm::log(p as f64), mult: count });
        }
        out.extend(small);
        Ok(out)
    }
}

/// `Φ_K(r, x)` at a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiValue {
    pub r: u32,
    pub x: f64,
    pub value: f64,
    /// Number of pairs `(P, k)` with `N(P)^k ≤ x`.
    pub term_count: u64,
}

/// Accumulates `Φ_K(r, x)` for orders `0..=r_max` at a fixed increasing
/// list of checkpoints from ideal powers fed in increasing norm.
///
/// `(x − 1)·Φ_K(r, x) = x·S₁(x) − S₀(x)` with
/// `S₁ = Σ w/N`, `S₀ = Σ w`, `w = k^r (log N(P))^{r+1}`, so one pass
/// serves every checkpoint.
#[derive(Debug, Clone)]
pub struct PhiSweep {
    checkpoints: Vec<f64>,
    r_max: u32,
    next: usize,
    count: u64,
    inv: Vec<CompensatedSum>,
    plain: Vec<CompensatedSum>,
    // per checkpoint: (count, per-r (S1, S0))
    snapshots: Vec<(u64, Vec<(f64, f64)>)>,
}

impl PhiSweep {
    pub fn new(checkpoints: &[f64], r_max: u32) -> Result<Self> {
        if checkpoints.iter().any(|&x| !(x > 1.0)) {
            return Err(Error::Domain("Phi needs x > 1"));
        }
        if checkpoints.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain("checkpoints must be nondecreasing"));
        }
        let width = r_max as usize + 1;
        Ok(PhiSweep {
            checkpoints: checkpoints.to_vec(),
            r_max,
            next: 0,
            count: 0,
            inv: vec![CompensatedSum::new(); width],
            plain: vec![CompensatedSum::new(); width],
            snapshots: Vec::with_capacity(checkpoints.len()),
        })
    }

    fn snapshot(&mut self) {
        let sums = self
            .inv
            .iter()
            .zip(&self.plain)
            .map(|(a, b)| (a.value(), b.value()))
            .collect();
        self.snapshots.push((self.count, sums));
        self.next += 1;
    }

    pub fn feed(&mut self, powers: &[IdealPower]) {
        for e in powers {
            while self.next < self.checkpoints.len() && (e.n as f64) > self.checkpoints[self.next] {
                self.snapshot();
            }
            if self.next == self.checkpoints.len() {
                return;
            }
            self.count += 1;
            let n = e.n as f64;
            let mut w = e.mult as f64 * e.log_norm;
            for r in 0..=self.r_max as usize {
                self.inv[r] += w / n;
                self.plain[r] += w;
                w *= e.k as f64 * e.log_norm;
            }
        }
    }

    pub fn finish(mut self) -> PhiTable {
        while self.next < self.checkpoints.len() {
            self.snapshot();
        }
        PhiTable { checkpoints: self.checkpoints, r_max: self.r_max, snapshots: self.snapshots }
    }
}

#[derive(Debug, Clone)]
pub struct PhiTable {
    checkpoints: Vec<f64>,
    r_max: u32,
    snapshots: Vec<(u64, Vec<(f64, f64)>)>,
}

impl PhiTable {
    pub fn checkpoints(&self) -> &[f64] {
        &self.checkpoints
    }

    pub fn r_max(&self) -> u32 {
        self.r_max
    }

    /// `Φ_K(r, x_c)` at checkpoint index `c`.
    pub fn get(&self, r: u32, c: usize) -> PhiValue {
        let x = self.checkpoints[c];
        let (count, sums) = &self.snapshots[c];
        let (s1, s0) = sums[r as usize];
        let value = ((x * s1 - s0) / (x - 1.0)).max(0.0);
        PhiValue { r, x, value, term_count: *count }
    }
}

/// Runs a [`PhiSweep`] sequentially over `[2, floor(x_last)]`.
pub fn phi_table(field: &FieldSpec, checkpoints: &[f64], r_max: u32) -> Result<PhiTable> {
    let mut sweep = PhiSweep::new(checkpoints, r_max)?;
    let top = checkpoints.last().copied().unwrap_or(2.0);
    let limit = (libm::floor(top) as u64).max(2);
    let powers = IdealPowerSieve::new(field, limit)?;
    for (lo, hi) in powers.segments(DEFAULT_BLOCK) {
        sweep.feed(&powers.segment(lo, hi)?);
    }
    Ok(sweep.finish())
}

/// `Φ_K(r, x) = (1/(x−1)) Σ_{N(P)^k ≤ x} (x/N(P)^k − 1)·k^r·(log N(P))^{r+1}`.
///
/// The sum is re-enumerated from prime splitting rather than read off
/// `stream`; the stream only certifies the covered range.
pub fn phi(field: &FieldSpec, r: u32, x: f64, stream: &CoeffStream) -> Result<PhiValue> {
    if !(x > 1.0) {
        return Err(Error::Domain("Phi needs x > 1"));
    }
    if x > stream.x_max as f64 {
        return Err(Error::OutOfRange { x, x_max: stream.x_max as f64 });
    }
    Ok(phi_table(field, &[x], r)?.get(r, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = core::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rational_von_mangoldt() {
        let s = lambda_stream(&FieldSpec::rational(), 100).unwrap();
        assert!(close(s.value(8), LN2, 1e-15));
        assert_eq!(s.value(6), 0.0);
        assert!(close(s.value(97), 97f64.ln(), 1e-15));
        assert!(close(s.value(81), 3f64.ln(), 1e-15));
    }

    #[test]
    fn gaussian_von_mangoldt() {
        let k = FieldSpec::quadratic(-1).unwrap();
        let s = lambda_stream(&k, 1000).unwrap();
        assert!(close(s.value(5), 2.0 * 5f64.ln(), 1e-14));
        assert_eq!(s.value(3), 0.0);
        assert!(close(s.value(9), 2.0 * 3f64.ln(), 1e-14));
        assert!(close(s.value(2), LN2, 1e-15));
        assert!(close(s.value(4), LN2, 1e-15));
    }

    #[test]
    fn block_size_does_not_change_stream() {
        let k = FieldSpec::cyclotomic(5).unwrap();
        let sieve = LambdaSieve::new(&k, 50_000).unwrap();
        let a = sieve.build(1 << 20).unwrap();
        let b = sieve.build(777).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ideal_counts_small() {
        let q = ideal_count_stream(&FieldSpec::rational(), 50).unwrap();
        assert!((1..=50).all(|n| q.value(n) == 1.0));

        let gauss = ideal_count_stream(&FieldSpec::quadratic(-1).unwrap(), 100).unwrap();
        assert_eq!(gauss.value(1), 1.0);
        assert_eq!(gauss.value(5), 2.0);
        assert_eq!(gauss.value(3), 0.0);
        assert_eq!(gauss.value(9), 1.0);
        assert_eq!(gauss.value(2), 1.0);
        assert_eq!(gauss.value(25), 3.0);
        assert_eq!(gauss.value(65), 4.0);

        let real5 = ideal_count_stream(&FieldSpec::quadratic(5).unwrap(), 100).unwrap();
        assert_eq!(real5.value(4), 1.0);
        assert_eq!(real5.value(2), 0.0);
        assert_eq!(real5.value(5), 1.0);
    }

    #[test]
    fn ideal_count_blocks_agree() {
        let k = FieldSpec::cyclotomic(7).unwrap();
        let sieve = IdealCountSieve::new(&k, 20_000).unwrap();
        assert_eq!(sieve.build(1 << 20).unwrap(), sieve.build(313).unwrap());
    }

    #[test]
    fn local_counts() {
        // split: (1 − T)^{-2} → j + 1
        assert_eq!(local_ideal_counts(&[Factor::new(1, 1, 2)], 4), [1, 2, 3, 4, 5]);
        // inert: (1 − T²)^{-1}
        assert_eq!(local_ideal_counts(&[Factor::new(1, 2, 1)], 4), [1, 0, 1, 0, 1]);
        assert_eq!(local_ideal_counts(&[Factor::new(2, 1, 1)], 3), [1, 1, 1, 1]);
    }

    #[test]
    fn delta_examples() {
        let s = lambda_stream(&FieldSpec::rational(), 100).unwrap();
        let want = 3.0 * LN2 + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln() - 10.0;
        assert!(close(delta(&s, 10.0).unwrap(), want, 1e-14));
        assert!(close(delta(&s, 10.0).unwrap(), -2.1680, 1e-4));
        assert_eq!(delta(&s, 1.5).unwrap(), -1.5);
        assert!(close(delta(&s, 2.0).unwrap(), LN2 - 2.0, 1e-15));
        assert!(matches!(delta(&s, 101.0), Err(Error::OutOfRange { .. })));
        let k = lambda_stream(&FieldSpec::cyclotomic(5).unwrap(), 100).unwrap();
        assert_eq!(delta(&k, 1.5).unwrap(), -1.5);
    }

    #[test]
    fn phi_examples() {
        let q = FieldSpec::rational();
        let s = lambda_stream(&q, 100).unwrap();
        let v = phi(&q, 0, 3.0, &s).unwrap();
        assert!(close(v.value, LN2 / 4.0, 1e-15));
        assert!(close(v.value, 0.173287, 1e-6));
        assert_eq!(v.term_count, 2);
        let v = phi(&q, 1, 3.0, &s).unwrap();
        assert!(close(v.value, LN2 * LN2 / 4.0, 1e-15));
        assert!(close(v.value, 0.120113, 1e-6));
        for r in 0..4 {
            assert_eq!(phi(&q, r, 1.5, &s).unwrap().value, 0.0);
        }
        assert!(matches!(phi(&q, 0, 1.0, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_table_matches_single_points() {
        let k = FieldSpec::quadratic(-3).unwrap();
        let s = lambda_stream(&k, 5000).unwrap();
        let cps = [10.0, 77.5, 1000.0, 4999.0];
        let table = phi_table(&k, &cps, 3).unwrap();
        for r in 0..=3 {
            for (c, &x) in cps.iter().enumerate() {
                let single = phi(&k, r, x, &s).unwrap();
                assert!(close(table.get(r, c).value, single.value, 1e-12));
            }
        }
    }
}
