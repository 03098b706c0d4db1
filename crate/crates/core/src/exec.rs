//! Execution strategy for data-parallel loops.
//!
//! Every parallel loop in the crate goes through [`Exec::map`] or
//! [`Exec::fold_sum`], whose outputs do not depend on how the work is
//! partitioned. Without the `parallel` feature, [`Exec::Parallel`] silently
//! runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run in parallel.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Ordered map over `0..len`.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
            _ => (0..len).map(f).collect(),
        }
    }

    /// Sum of integer vectors produced per index. Integer addition is
    /// associative, so the result is independent of scheduling.
    pub fn fold_sum<F>(self, len: usize, width: usize, f: F) -> Vec<u64>
    where
        F: Fn(usize, &mut [u64]) + Sync + Send,
    {
        let add = |mut a: Vec<u64>, b: Vec<u64>| {
            a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
            a
        };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len)
                .into_par_iter()
                .fold(
                    || vec![0u64; width],
                    |mut acc, i| {
                        f(i, &mut acc);
                        acc
                    },
                )
                .reduce(|| vec![0u64; width], add),
            _ => {
                let mut acc = vec![0u64; width];
                for i in 0..len {
                    f(i, &mut acc);
                }
                acc
            }
        }
    }
}

/// Runs `op` on a dedicated pool with at most `threads` workers. Results of
/// every routine in this crate are independent of the worker count.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, op: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, op: impl FnOnce() -> R + Send) -> R {
    op()
}

/// Pairwise (tree) summation; deterministic for a fixed input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}
