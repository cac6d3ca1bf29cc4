//! Data-parallel loop helpers.
//!
//! With the `parallel` feature (default) every helper runs on the current
//! rayon pool; without it they are plain sequential loops with identical
//! results. Callers never touch rayon directly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Loops shorter than this stay sequential even when parallelism is enabled.
pub const SEQUENTIAL_CUTOFF: usize = 2048;

/// Runs `f` with `threads` worker threads (0 means all hardware threads).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

pub fn hardware_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn for_each_index<F>(n: usize, f: F)
where
    F: Fn(usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= SEQUENTIAL_CUTOFF {
        (0..n).into_par_iter().for_each(f);
        return;
    }
    (0..n).for_each(f);
}

pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= SEQUENTIAL_CUTOFF {
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= SEQUENTIAL_CUTOFF {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Applies `f` to every item and concatenates the results in item order.
pub fn flat_map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T, &mut Vec<U>) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 1 {
        let parts: Vec<Vec<U>> = items
            .par_iter()
            .with_min_len(64)
            .fold(Vec::new, |mut acc, item| {
                f(item, &mut acc);
                acc
            })
            .collect();
        return parts.into_iter().flatten().collect();
    }
    let mut out = Vec::new();
    for item in items {
        f(item, &mut out);
    }
    out
}

pub fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 1 {
        items.par_iter_mut().for_each(f);
        return;
    }
    items.iter_mut().for_each(f);
}

/// Applies `f(index, item)` to every element of `items`.
pub fn for_each_mut_indexed<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize, &mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= SEQUENTIAL_CUTOFF / 64 {
        items
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, item)| f(i, item));
        return;
    }
    items.iter_mut().enumerate().for_each(|(i, item)| f(i, item));
}

/// Folds `map(i)` for `i in 0..n` with an associative, commutative `combine`.
pub fn map_reduce<T, M, C>(n: usize, identity: T, map: M, combine: C) -> T
where
    T: Send + Sync + Clone,
    M: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= SEQUENTIAL_CUTOFF {
        return (0..n)
            .into_par_iter()
            .map(map)
            .reduce(|| identity.clone(), &combine);
    }
    (0..n).map(map).fold(identity, combine)
}

pub fn sum_range<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    map_reduce(n, 0u64, f, |a, b| a + b)
}

/// Indices `i in 0..n` with `pred(i)`, in increasing order.
pub fn filter_range<F>(n: usize, pred: F) -> Vec<u32>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if n >= SEQUENTIAL_CUTOFF {
        return (0..n)
            .into_par_iter()
            .filter(|&i| pred(i))
            .map(|i| i as u32)
            .collect();
    }
    (0..n).filter(|&i| pred(i)).map(|i| i as u32).collect()
}

/// Calls `f` on every element of `items`, in parallel when enabled.
pub fn slice_for_each<T, F>(items: &[T], f: F)
where
    T: Sync,
    F: Fn(&T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 1 {
        items.par_iter().with_min_len(256).for_each(f);
        return;
    }
    items.iter().for_each(f);
}

/// Whether `pred` holds for some element. Other workers may still be running
/// `pred` after the first hit.
pub fn slice_any<T, F>(items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() > 1 {
        return items.par_iter().with_min_len(256).any(pred);
    }
    items.iter().any(pred)
}

pub fn sort_unstable<T: Ord + Send>(items: &mut [T]) {
    #[cfg(feature = "parallel")]
    if items.len() >= SEQUENTIAL_CUTOFF {
        items.par_sort_unstable();
        return;
    }
    items.sort_unstable();
}

pub fn sort_by_key<T, K, F>(items: &mut [T], key: F)
where
    T: Send,
    K: Ord,
    F: Fn(&T) -> K + Sync,
{
    #[cfg(feature = "parallel")]
    if items.len() >= SEQUENTIAL_CUTOFF {
        items.par_sort_by_key(key);
        return;
    }
    items.sort_by_key(key);
}

pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}
