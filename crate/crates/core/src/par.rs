//! Order-preserving data parallelism.
//!
//! With the `parallel` feature (default) the helpers run on a rayon pool of
//! the requested size. Without it, or when `workers == 1`, they run on the
//! calling thread. Results always come back in index order, so callers
//! reduce them sequentially and get identical output for any worker count.

use std::ops::Range;

/// Resolve a requested worker count; `0` means "all available cores".
pub fn effective_workers(requested: usize) -> usize {
    if requested > 0 {
        return requested;
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// `f` applied to every index of `range`, in order.
pub fn map_range<T, F>(workers: usize, range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        let workers = effective_workers(workers);
        if workers > 1 {
            use rayon::prelude::*;
            return with_pool(workers, || range.into_par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    range.map(f).collect()
}

/// Like [`map_range`] but hands each call a contiguous chunk of indices,
/// so per-chunk setup (scratch buffers, accumulators) is amortized.
pub fn map_chunks<T, F>(workers: usize, range: Range<u64>, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let len = range.end.saturating_sub(range.start);
    let count = len.div_ceil(chunk);
    map_range(workers, 0..count, |c| {
        let lo = range.start + c * chunk;
        let hi = (lo + chunk).min(range.end);
        f(lo..hi)
    })
}

/// Map over a slice, preserving order.
pub fn map_slice<S, T, F>(workers: usize, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(usize, &S) -> T + Sync + Send,
{
    map_range(workers, 0..items.len() as u64, |k| f(k as usize, &items[k as usize]))
}

#[cfg(feature = "parallel")]
fn with_pool<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}
