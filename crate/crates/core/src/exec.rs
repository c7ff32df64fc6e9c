//! Data-parallel helpers over index ranges.
//!
//! With the `parallel` feature these run on the current rayon pool; without it
//! (or inside a single-threaded pool) the plain sequential loops below are used.
//! Every helper returns the same value on either path: reductions are folded in
//! index order and searches report the smallest matching index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True when work is dispatched to rayon.
pub fn is_parallel() -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads() > 1
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Number of worker threads in use.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Smallest `i < len` with `pred(i)`.
pub fn find_first<F>(len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..len).into_par_iter().find_first(|&i| pred(i));
    }
    (0..len).find(|&i| pred(i))
}

/// `map` over `0..len`, results in index order.
pub fn map_collect<T, F>(len: u64, map: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return (0..len).into_par_iter().map(map).collect();
    }
    (0..len).map(map).collect()
}

/// Folds `0..len` in contiguous chunks and merges the chunk results left to right.
///
/// `merge` must be associative; it need not be commutative.
pub fn fold_chunks<T, I, F, M>(len: u64, identity: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, u64) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        let chunks = chunk_count(len);
        let step = len.div_ceil(chunks.max(1));
        let parts: Vec<T> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let lo = c * step;
                let hi = ((c + 1) * step).min(len);
                (lo..hi).fold(identity(), &fold)
            })
            .collect();
        return parts.into_iter().fold(identity(), &merge);
    }
    let _ = &merge;
    (0..len).fold(identity(), fold)
}

/// True when `pred` holds for every index.
pub fn all<F>(len: u64, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    find_first(len, |i| !pred(i)).is_none()
}

#[cfg(feature = "parallel")]
fn chunk_count(len: u64) -> u64 {
    let target = (rayon::current_num_threads() as u64) * 8;
    target.min(len).max(1)
}
