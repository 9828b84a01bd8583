//! Node-parallel evaluation and deterministic reductions.

use alloc::vec::Vec;

use crate::C64;

/// Evaluate `f` at every index in `0..n`, in parallel when the `parallel`
/// feature is enabled. Output order is always index order.
#[cfg(feature = "parallel")]
pub fn map_nodes<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_nodes<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Fallible variant of [`map_nodes`]; the first error in index order wins.
pub fn try_map_nodes<T, E, F>(n: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    map_nodes(n, f).into_iter().collect()
}

/// Pairwise (tree) summation with a fixed split, independent of threading.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Complex pairwise summation.
pub fn pairwise_sum_c(values: &[C64]) -> C64 {
    match values.len() {
        0 => C64::new(0.0, 0.0),
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (l, r) = values.split_at(n / 2);
            pairwise_sum_c(l) + pairwise_sum_c(r)
        }
    }
}
