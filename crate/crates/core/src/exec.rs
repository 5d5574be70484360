//! Execution strategy for the data-parallel kernels.
//!
//! Every kernel produces bit-identical output under both strategies: work is
//! split into independent elements or fixed chunks whose partial results are
//! merged in a fixed order, never in completion order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Elements handled per task in the chunked kernels.
const GRAIN: usize = 1 << 12;

/// How the data-parallel kernels are scheduled.
///
/// `Parallel` degrades to `Sequential` when the crate is built without the
/// `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// `(0..len).map(f).collect()`, optionally on the rayon pool. Output order is
/// always index order.
pub(crate) fn map_indexed<T, F>(strategy: Strategy, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..len).map(f).collect()
}

/// Sorts with a total order; the result is the same under both strategies.
pub(crate) fn sort_by<T, F>(strategy: Strategy, items: &mut [T], cmp: F)
where
    T: Send,
    F: Fn(&T, &T) -> std::cmp::Ordering + Sync,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        items.par_sort_by(cmp);
        return;
    }
    let _ = strategy;
    items.sort_by(cmp);
}

/// In-place subset butterfly over a table of length `2^n`.
///
/// For every bit level in ascending order and every index `m` with that bit
/// set, applies `op(&mut data[m], data[m ^ bit])`. With `+=` this is the
/// subset-sum (zeta) transform, with `-=` its Möbius inverse.
pub(crate) fn subset_butterfly<F>(strategy: Strategy, data: &mut [f64], op: F)
where
    F: Fn(&mut f64, f64) + Sync + Send,
{
    let len = data.len();
    assert!(len.is_power_of_two(), "table length must be a power of two");
    let mut stride = 1usize;
    while stride < len {
        butterfly_level(strategy, data, stride, &op);
        stride <<= 1;
    }
}

fn butterfly_level<F>(strategy: Strategy, data: &mut [f64], stride: usize, op: &F)
where
    F: Fn(&mut f64, f64) + Sync + Send,
{
    let block = stride << 1;
    let pass = |lo: &[f64], hi: &mut [f64]| {
        for (h, &l) in hi.iter_mut().zip(lo) {
            op(h, l);
        }
    };

    #[cfg(feature = "parallel")]
    if strategy.is_parallel() && data.len() > GRAIN {
        if block <= GRAIN {
            data.par_chunks_mut(GRAIN).for_each(|group| {
                for chunk in group.chunks_mut(block) {
                    let (lo, hi) = chunk.split_at_mut(stride);
                    pass(lo, hi);
                }
            });
        } else {
            for chunk in data.chunks_mut(block) {
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.par_chunks(GRAIN)
                    .zip(hi.par_chunks_mut(GRAIN))
                    .for_each(|(l, h)| pass(l, h));
            }
        }
        return;
    }
    let _ = (strategy, GRAIN);
    for chunk in data.chunks_mut(block) {
        let (lo, hi) = chunk.split_at_mut(stride);
        pass(lo, hi);
    }
}
