//! Thin switch between rayon and plain iteration.
//!
//! With the default `parallel` feature the harness fans assignment chunks out
//! across a rayon pool; without it the same call sites run sequentially, which
//! is handy for debugging and for the benchmark baseline.

/// Map `items` through `f`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_chunks<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Map `items` through `f`, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_chunks<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// True when work actually fans out across threads.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
