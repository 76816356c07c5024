//! Thue-Morse and period-doubling generators, plus the small integer
//! utilities (binary digit parity, 2-adic valuation) built on them.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A value in `{+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` for an even exponent, `-1` for an odd one.
    #[inline]
    pub fn from_parity(bit: u32) -> Sign {
        if bit & 1 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    #[inline]
    pub fn to_i64(self) -> i64 {
        self.to_i8() as i64
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.to_i8() as f64
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    #[inline]
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    #[inline]
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// An indexed `±1` sequence consumed by the class-set machinery.
///
/// `term` must be deterministic. Implementations that can produce a window
/// faster than term-by-term should override `fill`.
pub trait SequenceProvider: Sync {
    fn term(&self, n: u64) -> Sign;

    fn name(&self) -> &str;

    /// Writes `term(start + i)` into `out[i]`.
    fn fill(&self, start: u64, out: &mut [Sign]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.term(start + i as u64);
        }
    }
}

/// The `±1` Thue-Morse sequence `u(n) = (-1)^t(n)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ThueMorse;

impl SequenceProvider for ThueMorse {
    #[inline]
    fn term(&self, n: u64) -> Sign {
        tm_sign(n)
    }

    fn name(&self) -> &str {
        "thue-morse"
    }
}

/// The `±1` period-doubling sequence, fixed point of `- -> -+`, `+ -> --`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PeriodDoubling;

impl SequenceProvider for PeriodDoubling {
    #[inline]
    fn term(&self, n: u64) -> Sign {
        period_doubling(n)
    }

    fn name(&self) -> &str {
        "period-doubling"
    }
}

/// Wraps an arbitrary deterministic function as a provider.
pub struct FnSequence<F> {
    name: String,
    f: F,
}

impl<F> FnSequence<F>
where
    F: Fn(u64) -> Sign + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnSequence {
            name: name.into(),
            f,
        }
    }
}

impl<F> SequenceProvider for FnSequence<F>
where
    F: Fn(u64) -> Sign + Sync,
{
    fn term(&self, n: u64) -> Sign {
        (self.f)(n)
    }

    fn name(&self) -> &str {
        &self.name
    }
}

/// Parity of the binary digit sum of `n`: 0 for evil, 1 for odious.
#[inline]
pub fn tm_bit(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// [`tm_bit`] for integers beyond 64 bits.
pub fn tm_bit_big(n: &BigUint) -> u8 {
    (n.count_ones() & 1) as u8
}

#[inline]
pub fn tm_sign(n: u64) -> Sign {
    Sign::from_parity(n.count_ones())
}

/// `z(n) = u(n) u(n+1)`.
#[inline]
pub fn period_doubling(n: u64) -> Sign {
    let next = n as u128 + 1;
    Sign::from_parity(n.count_ones() + next.count_ones())
}

/// Largest `k` with `2^k | a`.
pub fn nu2(a: u64) -> Result<u32> {
    if a == 0 {
        return Err(Error::ZeroValuation);
    }
    Ok(a.trailing_zeros())
}

#[inline]
pub fn is_evil(n: u64) -> bool {
    tm_bit(n) == 0
}

/// `{0, .., 2^k - 1}` split by Thue-Morse parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProuhetPartition {
    pub k: u32,
    pub evil: Vec<u64>,
    pub odious: Vec<u64>,
}

impl ProuhetPartition {
    /// `(sum of n^j over evil, sum of n^j over odious)`, exact.
    pub fn power_sums(&self, j: u32) -> (BigInt, BigInt) {
        (power_sum(&self.evil, j), power_sum(&self.odious, j))
    }

    /// First exponent `j < k` where the two power sums differ.
    pub fn first_unequal_power(&self) -> Option<u32> {
        (0..self.k).find(|&j| {
            let (e, o) = self.power_sums(j);
            e != o
        })
    }
}

fn power_sum(xs: &[u64], j: u32) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, &x| {
        let mut p = BigInt::one();
        let base = BigInt::from(x);
        for _ in 0..j {
            p *= &base;
        }
        acc + p
    })
}

pub const PROUHET_MAX_K: u32 = 12;

pub fn prouhet_partition(k: u32) -> Result<ProuhetPartition> {
    if k == 0 || k > PROUHET_MAX_K {
        return Err(Error::invalid(format!(
            "prouhet partition needs 1 <= k <= {PROUHET_MAX_K}, got {k}"
        )));
    }
    let (evil, odious) = (0..1u64 << k).partition(|&n| is_evil(n));
    Ok(ProuhetPartition { k, evil, odious })
}
