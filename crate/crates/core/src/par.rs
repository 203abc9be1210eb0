//! Execution strategy for the data-parallel sweeps.
//!
//! With the `parallel` feature (on by default) sweeps can fan out over rayon;
//! without it every strategy runs sequentially. Results never depend on the
//! strategy: searches return the first hit in index order and reductions are
//! applied in index order.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Smallest `i < n` for which `f(i)` is `Some`, with its value.
pub fn find_first<T, F>(exec: Exec, n: usize, f: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().filter_map(|i| f(i).map(|t| (i, t))).find_first(|_| true)
        }
        _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
    }
}

/// `f(0), ..., f(n - 1)` in order.
pub fn map<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Maps a slice in order.
pub fn map_slice<S, T, F>(exec: Exec, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    map(exec, items.len(), |i| f(&items[i]))
}
