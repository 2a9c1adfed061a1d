//! Data-parallel map with a sequential fallback.
//!
//! The `parallel` feature (on by default) runs chunked maps on the rayon
//! thread pool. With the feature off, the same entry points run
//! sequentially and produce identical results: work is split into fixed
//! chunks whose outputs are merged in chunk order, so the reduction order
//! never depends on thread scheduling.

/// Trials per scheduling chunk. Fixed so that chunk boundaries — and
/// therefore merge order — are independent of thread count.
pub const CHUNK: u64 = 1 << 16;

/// Caps the worker pool at `n` threads for the rest of the process.
/// Must be called before any parallel work runs; fails once a pool
/// exists. Accepted and ignored when the `parallel` feature is off —
/// results are identical either way.
pub fn configure_threads(n: usize) -> Result<(), String> {
    if n == 0 {
        return Err("thread count must be at least 1".into());
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(())
    }
}

/// Maps `f` over `0..count` in fixed chunks and folds each chunk's outputs
/// into an accumulator with `merge`, combining chunk accumulators in chunk
/// order. `make_acc` builds an empty accumulator; `join` combines two.
pub fn chunked_map_reduce<T, A>(
    count: u64,
    f: impl Fn(u64) -> T + Send + Sync,
    make_acc: impl Fn() -> A + Send + Sync,
    merge: impl Fn(&mut A, T) + Send + Sync,
    join: impl Fn(A, A) -> A + Send + Sync,
) -> A
where
    T: Send,
    A: Send,
{
    let n_chunks = count.div_ceil(CHUNK);
    let run_chunk = |chunk: u64| {
        let lo = chunk * CHUNK;
        let hi = (lo + CHUNK).min(count);
        let mut acc = make_acc();
        for i in lo..hi {
            merge(&mut acc, f(i));
        }
        acc
    };

    // Chunk accumulators are collected in index order and folded
    // left-to-right, so the merge sequence — hence every rounding step —
    // is the same for any thread count, including the sequential build.
    let accs: Vec<A>;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        accs = (0..n_chunks).into_par_iter().map(run_chunk).collect();
    }
    #[cfg(not(feature = "parallel"))]
    {
        accs = (0..n_chunks).map(run_chunk).collect();
    }
    accs.into_iter()
        .fold(None, |out, acc| {
            Some(match out {
                None => acc,
                Some(prev) => join(prev, acc),
            })
        })
        .unwrap_or_else(make_acc)
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Send + Sync) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
