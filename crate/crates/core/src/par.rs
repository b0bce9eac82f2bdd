//! Data-parallel helpers with a sequential fallback.
//!
//! Without the `parallel` feature every strategy runs sequentially. Results
//! never depend on the strategy: maps preserve input order and reductions
//! are only used with exact, commutative operations.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(items: &[T], strategy: Strategy, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Fold every item into an accumulator and merge the partial accumulators.
pub fn fold<T, A, I, F, M>(items: &[T], strategy: Strategy, init: I, step: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().fold(&init, &step).reduce(&init, &merge);
    }
    let _ = (strategy, &merge);
    items.iter().fold(init(), step)
}

/// `true` iff `pred` holds for every item.
pub fn all<T, F>(items: &[T], strategy: Strategy, pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().all(pred);
    }
    let _ = strategy;
    items.iter().all(pred)
}

/// Runs `f` on a dedicated pool with `threads` workers (ignored when the
/// `parallel` feature is off).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
