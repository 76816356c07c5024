//! Squares, cubes and overlaps in finite words.
//!
//! Every search runs the plain double loop over (position, period) with an
//! early exit on the first mismatch. Results are the leftmost occurrence,
//! and among those the shortest period.

use crate::sequence::tm_bit;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Repetition {
    pub position: usize,
    pub period: usize,
}

impl Repetition {
    /// The repeated block `w[position..position + period]`.
    pub fn block<'a, T>(&self, w: &'a [T]) -> &'a [T] {
        &w[self.position..self.position + self.period]
    }
}

/// Words longer than this are slow enough with the quadratic scan that
/// callers should warn before running one.
pub const SLOW_SCAN_LEN: usize = 1 << 14;

/// Hard limit for front ends.
pub const MAX_SCAN_LEN: usize = 1 << 20;

/// `true` when `w[i + j] == w[i + p + j]` for `j` in `0..span`.
#[inline]
fn shifted_match<T: PartialEq>(w: &[T], i: usize, p: usize, span: usize) -> bool {
    w[i..i + span] == w[i + p..i + p + span]
}

pub fn find_square<T: PartialEq>(w: &[T]) -> Option<Repetition> {
    let n = w.len();
    for i in 0..n {
        for p in 1..=(n - i) / 2 {
            if shifted_match(w, i, p, p) {
                return Some(Repetition {
                    position: i,
                    period: p,
                });
            }
        }
    }
    None
}

pub fn find_cube<T: PartialEq>(w: &[T]) -> Option<Repetition> {
    let n = w.len();
    for i in 0..n {
        for p in 1..=(n - i) / 3 {
            if shifted_match(w, i, p, 2 * p) {
                return Some(Repetition {
                    position: i,
                    period: p,
                });
            }
        }
    }
    None
}

/// An overlap `a x a x a` of length `2p + 1`, reported with period `p = |ax|`.
pub fn find_overlap<T: PartialEq>(w: &[T]) -> Option<Repetition> {
    let n = w.len();
    for i in 0..n {
        let room = n - i;
        if room < 3 {
            break;
        }
        for p in 1..=(room - 1) / 2 {
            if shifted_match(w, i, p, p + 1) {
                return Some(Repetition {
                    position: i,
                    period: p,
                });
            }
        }
    }
    None
}

/// Letter `n` is the number of ones between the `n`-th and `(n+1)`-th zero
/// of the 0/1 Thue-Morse word. The result is over `{0, 1, 2}`.
pub fn ternary_squarefree(len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let mut ones = 0u8;
    let mut seen_zero = false;
    let mut n = 0u64;
    while out.len() < len {
        if tm_bit(n) == 0 {
            if seen_zero {
                out.push(ones);
            }
            seen_zero = true;
            ones = 0;
        } else {
            ones += 1;
        }
        n += 1;
    }
    out
}
