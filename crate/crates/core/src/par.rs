//! Data-parallel helpers with a sequential fallback.
//!
//! Every heavy loop in the crate goes through these helpers so that the
//! same code path runs either on the rayon pool or on the calling thread.
//! Without the `parallel` feature, `ExecMode::Parallel` degrades to the
//! sequential path.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Evaluates `f` on every index of `range`, preserving order.
pub fn map_range<T, F>(mode: ExecMode, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

/// Sums `f(i)` over `range`.
pub fn sum_range<F>(mode: ExecMode, range: Range<usize>, f: F) -> BigInt
where
    F: Fn(usize) -> BigInt + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel if range.len() > 16 => {
            use rayon::prelude::*;
            range
                .into_par_iter()
                .fold(BigInt::zero, |acc, i| acc + f(i))
                .reduce(BigInt::zero, |a, b| a + b)
        }
        _ => range.fold(BigInt::zero(), |acc, i| acc + f(i)),
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_slice<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `f` on every item of a sequential iterator and folds the results
/// with `combine`. In parallel mode the iterator is bridged onto the pool.
pub fn fold_iter<I, T, F, C>(mode: ExecMode, iter: I, init: T, f: F, combine: C) -> T
where
    I: Iterator + Send,
    I::Item: Send,
    T: Send + Sync + Clone,
    F: Fn(T, I::Item) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            let seed = init.clone();
            iter.par_bridge()
                .fold(|| seed.clone(), &f)
                .reduce(|| init.clone(), &combine)
        }
        _ => {
            let _ = &combine;
            iter.fold(init, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            assert_eq!(map_range(mode, 0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(sum_range(mode, 0..100, BigInt::from), BigInt::from(4950));
            let total = fold_iter(mode, 0..50u64, 0u64, |a, x| a + x, |a, b| a + b);
            assert_eq!(total, 1225);
        }
    }
}
