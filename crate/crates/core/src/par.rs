//! Index-parallel map with a sequential fallback.
//!
//! With the `parallel` feature the work runs on a rayon pool of the
//! requested size; without it everything runs on the calling thread. Results
//! always come back in index order.

/// Number of worker threads used when the caller asks for `0`.
pub fn available_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn resolve(workers: usize) -> usize {
    if workers == 0 {
        available_workers()
    } else {
        workers
    }
}

#[cfg(feature = "parallel")]
pub fn map_indexed<R, F>(count: usize, workers: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;

    let workers = resolve(workers);
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| (0..count).into_par_iter().map(&f).collect()),
        Err(_) => (0..count).map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<R, F>(count: usize, workers: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    let _ = resolve(workers);
    (0..count).map(f).collect()
}

/// Splits `0..len` into at most `parts` contiguous ranges of near-equal size.
pub fn ranges(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let step = len.div_ceil(parts);
    (0..parts)
        .map(|p| (p * step).min(len)..((p + 1) * step).min(len))
        .filter(|r| !r.is_empty())
        .collect()
}
