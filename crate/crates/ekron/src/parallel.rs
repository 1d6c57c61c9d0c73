//! Scoped-thread drivers. Work is split into indexed jobs and results are
//! returned in index order, so output never depends on the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use ekron_core::sieve::DEFAULT_BLOCK;
use ekron_core::stream::{IdealPowerSieve, LambdaSieve, PhiSweep, PhiTable};
use ekron_core::{CoeffStream, FieldSpec, Result};

/// `requested`, or the available parallelism, at least 1.
pub fn thread_count(requested: Option<usize>) -> usize {
    requested
        .filter(|&n| n > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `job(0..count)` on up to `threads` workers and returns the results
/// in index order.
pub fn run_indexed<T, F>(count: usize, threads: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = threads.clamp(1, count.max(1));
    if workers == 1 {
        return (0..count).map(&job).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let out = job(i);
                slots.lock().expect("worker panicked")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|v| v.expect("job result"))
        .collect()
}

/// `Λ_K` up to `x_max` with sieve blocks spread over `threads`.
pub fn lambda_stream(field: &FieldSpec, x_max: u64, threads: usize) -> Result<CoeffStream> {
    let sieve = LambdaSieve::new(field, x_max)?;
    let blocks: Vec<(u64, u64)> = sieve.segments(DEFAULT_BLOCK).collect();
    let parts = run_indexed(blocks.len(), threads, |i| sieve.segment(blocks[i].0, blocks[i].1));
    let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(sieve.assemble(parts))
}

/// `Φ_K(r, x_c)` for `r ≤ r_max` at every checkpoint. Blocks are sieved in
/// parallel and fed to the sweep in order.
pub fn phi_table(field: &FieldSpec, checkpoints: &[f64], r_max: u32, threads: usize) -> Result<PhiTable> {
    let mut sweep = PhiSweep::new(checkpoints, r_max)?;
    let top = checkpoints.last().copied().unwrap_or(2.0);
    let limit = (top.floor() as u64).max(2);
    let sieve = IdealPowerSieve::new(field, limit)?;
    let blocks: Vec<(u64, u64)> = sieve.segments(DEFAULT_BLOCK).collect();
    // bounded batches keep peak memory at a few blocks per worker
    for batch in blocks.chunks(threads.max(1) * 2) {
        let parts = run_indexed(batch.len(), threads, |i| sieve.segment(batch[i].0, batch[i].1));
        for part in parts {
            sweep.feed(&part?);
        }
    }
    Ok(sweep.finish())
}
