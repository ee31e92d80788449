//! Data-parallel maps over parameter grids.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! out over rayon's pool; without it every map runs on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Order-preserving map of `f` over `xs`.
pub fn map_grid<X, T, F>(xs: &[X], exec: Execution, f: F) -> Vec<T>
where
    X: Sync,
    T: Send,
    F: Fn(&X) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => xs.par_iter().map(f).collect(),
        _ => xs.iter().map(f).collect(),
    }
}

/// [`map_grid`] for fallible work; the first error in grid order wins.
pub fn try_map_grid<X, T, E, F>(xs: &[X], exec: Execution, f: F) -> Result<Vec<T>, E>
where
    X: Sync,
    T: Send,
    E: Send,
    F: Fn(&X) -> Result<T, E> + Sync + Send,
{
    map_grid(xs, exec, f).into_iter().collect()
}

/// `n` geometrically spaced points from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi / lo).ln() / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo * (step * i as f64).exp() })
                .collect()
        }
    }
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n).map(|i| lo + step * i as f64).collect()
        }
    }
}
