//! Fixed-order pairwise summation.
//!
//! Quadrature and Monte-Carlo reductions in this crate must be reproducible
//! bit for bit regardless of how many worker threads run them. The scheme
//! here fixes the reduction tree by *index*, never by thread: terms are
//! summed pairwise within fixed-size blocks, blocks may be evaluated in
//! parallel, and the block partials are combined pairwise in block order.

use num_complex::Complex64;
use rayon::prelude::*;

/// Block width for the base case of the pairwise tree and for the parallel
/// block decomposition. Power of two so the tree shape is index-stable.
pub const BLOCK: usize = 4096;

/// Pairwise sum of a slice of reals.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of a slice of complex numbers.
pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

/// Deterministic parallel sum of `f(0) + f(1) + … + f(n−1)`.
///
/// Terms are grouped into [`BLOCK`]-sized blocks; each block is summed
/// pairwise on whichever thread picks it up, and the block partials are
/// combined pairwise in block order. The result is identical for any thread
/// count, including serial execution.
pub fn par_pairwise_sum<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let nblocks = n.div_ceil(BLOCK);
    let partials: Vec<Complex64> = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            let terms: Vec<Complex64> = (lo..hi).map(&f).collect();
            pairwise_sum_complex(&terms)
        })
        .collect();
    pairwise_sum_complex(&partials)
}
