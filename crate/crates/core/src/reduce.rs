//! Deterministic parallel sums.
//!
//! Inputs are cut into fixed-size blocks independent of the thread count.
//! Blocks are summed in parallel and the partial sums are combined
//! sequentially in block order, so floating-point results are reproducible
//! bit for bit on any machine.

use rayon::prelude::*;

use crate::algebra::Octonion;
use crate::scalar::Scalar;

pub const BLOCK_LEN: usize = 1024;

pub fn block_sum<S, T, F>(items: &[T], term: F) -> Octonion<S>
where
    S: Scalar,
    T: Sync,
    F: Fn(&T) -> Option<Octonion<S>> + Sync,
{
    block_sum_with(items, || (), |_, item| term(item))
}

/// [`block_sum`] with per-block scratch state created by `init`, e.g. lookup
/// cursors that advance through each block in order.
pub fn block_sum_with<S, T, St, I, F>(items: &[T], init: I, term: F) -> Octonion<S>
where
    S: Scalar,
    T: Sync,
    I: Fn() -> St + Sync,
    F: Fn(&mut St, &T) -> Option<Octonion<S>> + Sync,
{
    let partials: Vec<Octonion<S>> = items
        .par_chunks(BLOCK_LEN)
        .map(|block| {
            let mut state = init();
            let mut acc = Octonion::zero();
            for item in block {
                if let Some(v) = term(&mut state, item) {
                    acc += v;
                }
            }
            acc
        })
        .collect();
    partials.into_iter().fold(Octonion::zero(), |acc, v| acc + v)
}
