//! Thue-Morse weighted sums `sum_{n >= start} u(n) f(n)` grouped into blocks.
//!
//! For `B = 2^depth` and `k >= 1`, `u(Bk + i) = u(k) u(i)` when `i < B`, so
//! block `k` contributes `u(k) * sum_{i<B} u(i) f(Bk + i)`. The inner sum is
//! the iterated difference `prod_{j<depth} (1 - E^(2^j))` applied to `f` at
//! `Bk`, which is bounded by `2^(depth(depth-1)/2) * sup |f^(depth)|` over the
//! block. Depth 1 is plain pairing of `2k` with `2k + 1`.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::sequence::{tm_sign, Sign};

/// `2^(depth(depth-1)/2)`, the product of the difference step widths.
pub(crate) fn difference_width(depth: u32) -> f64 {
    2f64.powi((depth * depth.saturating_sub(1) / 2) as i32)
}

pub(crate) fn block_size(depth: u32) -> u64 {
    1u64 << depth
}

#[inline]
fn signed<T: Sub<Output = T> + Zero>(s: Sign, x: T) -> T {
    match s {
        Sign::Plus => x,
        Sign::Minus => T::zero() - x,
    }
}

/// Sums the head `start <= n < B` term by term, then blocks `1..=blocks`.
/// Returns the sum and the number of terms used.
pub(crate) fn grouped_sum<T, F>(f: F, start: u64, depth: u32, blocks: u64) -> (T, u64)
where
    T: Copy + Zero + Add<Output = T> + Sub<Output = T>,
    F: Fn(u64) -> T,
{
    let b = block_size(depth);
    let pattern: Vec<Sign> = (0..b).map(tm_sign).collect();
    let mut total = T::zero();
    for n in start..b {
        total = total + signed(pattern[n as usize], f(n));
    }
    for k in 1..=blocks {
        let base = b * k;
        let mut inner = T::zero();
        for (i, &s) in pattern.iter().enumerate() {
            inner = inner + signed(s, f(base + i as u64));
        }
        total = total + signed(tm_sign(k), inner);
    }
    (total, b.saturating_sub(start) + b * blocks)
}
