//! Truncated power series with exact coefficients, and the generating
//! series identities behind the class-set theorem for odd shifts.
//!
//! A series carries an explicit degree bound `N` and stores coefficients of
//! `X^0 ..= X^N`. Binary operations truncate to the smaller bound.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sequence::tm_sign;

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries<T> {
    coeffs: Vec<T>,
}

pub type IntSeries = TruncSeries<i64>;

impl<T: Coeff> TruncSeries<T> {
    pub fn zero(degree_bound: usize) -> Self {
        TruncSeries {
            coeffs: vec![T::zero(); degree_bound + 1],
        }
    }

    pub fn one(degree_bound: usize) -> Self {
        Self::monomial(T::one(), 0, degree_bound)
    }

    /// `c X^k`, or zero when `k` exceeds the bound.
    pub fn monomial(c: T, k: usize, degree_bound: usize) -> Self {
        let mut s = Self::zero(degree_bound);
        if k <= degree_bound {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients beyond `degree_bound` are dropped; missing ones are zero.
    pub fn from_coeffs(mut coeffs: Vec<T>, degree_bound: usize) -> Self {
        coeffs.resize(degree_bound + 1, T::zero());
        TruncSeries { coeffs }
    }

    pub fn from_fn(degree_bound: usize, f: impl FnMut(usize) -> T) -> Self {
        TruncSeries {
            coeffs: (0..=degree_bound).map(f).collect(),
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, degree_bound: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), degree_bound.min(self.degree_bound()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let n = self.degree_bound().min(other.degree_bound());
        TruncSeries {
            coeffs: (0..=n)
                .map(|k| f(&self.coeffs[k], &other.coeffs[k]))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Product truncated at the smaller bound. The outer loop runs over the
    /// nonzero coefficients of the sparser operand.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.degree_bound().min(other.degree_bound());
        let nnz = |s: &Self| s.coeffs[..=n].iter().filter(|c| !c.is_zero()).count();
        let (sparse, dense) = if nnz(self) <= nnz(other) {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(n);
        for (i, a) in sparse.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dense.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// Multiplication by `X^k`, keeping the degree bound.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.degree_bound();
        let mut out = Self::zero(n);
        if k <= n {
            out.coeffs[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        out
    }

    /// Multiplication by `1/(1 - X)`: running sums of the coefficients.
    pub fn partial_sums(&self) -> Self {
        let mut acc = T::zero();
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    acc = acc.clone() + c.clone();
                    acc.clone()
                })
                .collect(),
        }
    }

    /// `f(X) -> f(X^2)`, keeping the degree bound.
    pub fn spread_even(&self) -> Self {
        let n = self.degree_bound();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate().take(n / 2 + 1) {
            out.coeffs[2 * k] = c.clone();
        }
        out
    }

    /// First index where the two series differ, over the shared range.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.degree_bound().min(other.degree_bound());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }
}

/// `sum u(n) X^n`
pub fn tm_series(degree_bound: usize) -> IntSeries {
    TruncSeries::from_fn(degree_bound, |n| tm_sign(n as u64).to_i64())
}

/// `prod (1 - X^(2^k))` over `2^k <= N`, truncated at `N`.
pub fn lacunary_product(degree_bound: usize) -> IntSeries {
    let mut acc = IntSeries::one(degree_bound);
    let mut power = 1usize;
    while power <= degree_bound {
        let factor = IntSeries::one(degree_bound).sub(&IntSeries::monomial(1, power, degree_bound));
        acc = acc.mul(&factor);
        power *= 2;
    }
    acc
}

/// `w_a(n) = u(n + a) + u(n)`
pub fn w_series(a: u64, degree_bound: usize) -> Result<IntSeries> {
    if a == 0 {
        return Err(Error::invalid("shift a must be positive"));
    }
    Ok(TruncSeries::from_fn(degree_bound, |n| {
        tm_sign(n as u64 + a).to_i64() + tm_sign(n as u64).to_i64()
    }))
}

/// `X^a S_a(X)` where `S_a = w_a / (1 - X)`.
pub fn xa_sa_series(a: u64, degree_bound: usize) -> Result<IntSeries> {
    Ok(w_series(a, degree_bound)?.partial_sums().shift(a as usize))
}

fn check_odd(a: u64, degree_bound: usize) -> Result<u64> {
    if a % 2 == 0 {
        return Err(Error::invalid(format!("shift a = {a} must be odd")));
    }
    if (degree_bound as u64) < a {
        return Err(Error::invalid(format!(
            "degree bound {degree_bound} is below a = {a}"
        )));
    }
    Ok(a / 2)
}

/// Coefficients of `X^a S_a(X)` for odd `a`.
pub fn xa_sa_coeffs(a: u64, degree_bound: usize) -> Result<IntSeries> {
    check_odd(a, degree_bound)?;
    xa_sa_series(a, degree_bound)
}

/// The closed form for odd `a = 2b + 1`: zero below `a`, then
/// `c_{2k} = -u(b) + u(k)` and `c_{2k+1} = -u(b) + u(k - b)`.
pub fn coefficient_formula(a: u64, k: usize) -> i64 {
    let b = a / 2;
    if (k as u64) < a {
        return 0;
    }
    let ub = tm_sign(b).to_i64();
    let half = (k / 2) as u64;
    if k % 2 == 0 {
        -ub + tm_sign(half).to_i64()
    } else {
        -ub + tm_sign(half - b).to_i64()
    }
}

/// First index where [`xa_sa_coeffs`] and [`coefficient_formula`] disagree.
pub fn coefficient_formula_mismatch(a: u64, degree_bound: usize) -> Result<Option<usize>> {
    let s = xa_sa_coeffs(a, degree_bound)?;
    Ok((0..=degree_bound).find(|&k| s.coeff(k) != coefficient_formula(a, k)))
}

/// First coefficient of `X^a S_a` outside `{0, -2 u(b)}`.
pub fn value_set_violation(a: u64, degree_bound: usize) -> Result<Option<usize>> {
    let s = xa_sa_coeffs(a, degree_bound)?;
    let allowed = -2 * tm_sign(a / 2).to_i64();
    Ok(s.coeffs().iter().position(|&c| c != 0 && c != allowed))
}

/// First index where `tm_series(N)` differs from `(1 - X) sum u(n) X^(2n)`.
pub fn decimation_mismatch(degree_bound: usize) -> Option<usize> {
    let tm = tm_series(degree_bound);
    let one_minus_x = IntSeries::from_coeffs(vec![1, -1], degree_bound);
    one_minus_x.mul(&tm.spread_even()).first_difference(&tm)
}

/// Outcome of checking the generating-series identity for `X^a S_a(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCheck {
    pub a: u64,
    pub degree_bound: usize,
    /// First coefficient where the two sides of the identity differ.
    pub identity_mismatch: Option<usize>,
    pub decimation_mismatch: Option<usize>,
}

impl StarCheck {
    pub fn holds(&self) -> bool {
        self.identity_mismatch.is_none() && self.decimation_mismatch.is_none()
    }
}

/// Compares `X^a S_a(X)` built from `w_a` against
/// `-(1/(1-X)) sum_{m<a} u(m) X^m + (1 + X^a) sum u(n) X^(2n)`,
/// and checks the decimation identity at the same bound. Valid for every
/// `a >= 1`.
pub fn star_check(a: u64, degree_bound: usize) -> Result<StarCheck> {
    if a == 0 {
        return Err(Error::invalid("shift a must be positive"));
    }
    let n = degree_bound;
    let lhs = xa_sa_series(a, n)?;

    let head = IntSeries::from_fn(n, |m| {
        if (m as u64) < a {
            tm_sign(m as u64).to_i64()
        } else {
            0
        }
    });
    let one_plus_xa = IntSeries::one(n).add(&IntSeries::monomial(1, a as usize, n));
    let rhs = head
        .partial_sums()
        .neg()
        .add(&one_plus_xa.mul(&tm_series(n).spread_even()));

    Ok(StarCheck {
        a,
        degree_bound,
        identity_mismatch: lhs.first_difference(&rhs),
        decimation_mismatch: decimation_mismatch(n),
    })
}

pub fn verify_star(a: u64, degree_bound: usize) -> Result<bool> {
    Ok(star_check(a, degree_bound)?.holds())
}

/// Checks that the running sums of `w_a` stay in `{0, 2}` or in `{0, -2}`.
pub fn summatory_one_sided(a: u64, degree_bound: usize) -> Result<bool> {
    let sums = w_series(a, degree_bound)?.partial_sums();
    let pos = sums.coeffs().iter().all(|&c| c == 0 || c == 2);
    let neg = sums.coeffs().iter().all(|&c| c == 0 || c == -2);
    Ok(pos || neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::ThueMorse;
    use crate::shevelev::class_sets;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn u(n: u64) -> i64 {
        if n.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn telescoping() {
        let n = 20;
        let one_minus_x = IntSeries::from_coeffs(vec![1, -1], n);
        let geometric = IntSeries::from_fn(n, |_| 1);
        assert_eq!(one_minus_x.mul(&geometric), IntSeries::one(n));
    }

    #[test]
    fn shift_monomial() {
        let s = IntSeries::one(5).shift(3);
        assert_eq!(s.coeffs(), &[0, 0, 0, 1, 0, 0]);
        assert_eq!(IntSeries::one(2).shift(3), IntSeries::zero(2));
    }

    #[test]
    fn small_product() {
        let a = IntSeries::from_coeffs(vec![1, -1], 6);
        let b = IntSeries::from_coeffs(vec![1, 0, -1], 6);
        assert_eq!(a.mul(&b).coeffs(), &[1, -1, -1, 1, 0, 0, 0]);
    }

    #[test]
    fn bounds_take_minimum() {
        let a = IntSeries::from_fn(10, |k| k as i64);
        let b = IntSeries::from_fn(4, |_| 1);
        assert_eq!(a.add(&b).degree_bound(), 4);
        assert_eq!(a.mul(&b).degree_bound(), 4);
        assert_eq!(a.sub(&b).coeffs(), &[-1, 0, 1, 2, 3]);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(IntSeries::one(4).partial_sums().coeffs(), &[1, 1, 1, 1, 1]);
        let x = IntSeries::from_coeffs(vec![1, -1], 4);
        assert_eq!(x.partial_sums(), IntSeries::one(4));
        let w1 = w_series(1, 5).unwrap();
        assert_eq!(w1.partial_sums().coeffs(), &[0, -2, -2, -2, -2, 0]);
    }

    #[test]
    fn tm_series_examples() {
        assert_eq!(tm_series(3).coeffs(), &[1, -1, -1, 1]);
        assert_eq!(tm_series(7).coeffs(), &[1, -1, -1, 1, -1, 1, 1, -1]);
        let s = tm_series(1000);
        for n in 0..=500 {
            assert_eq!(s.coeff(2 * n), s.coeff(n));
        }
    }

    #[test]
    fn lacunary_examples() {
        assert_eq!(lacunary_product(3).coeffs(), &[1, -1, -1, 1]);
        assert_eq!(lacunary_product(0).coeffs(), &[1]);
        assert_eq!(lacunary_product(1 << 10), tm_series(1 << 10));
    }

    #[test]
    fn w_examples() {
        assert_eq!(
            w_series(1, 7).unwrap().coeffs(),
            &[0, -2, 0, 0, 0, 2, 0, -2]
        );
        assert_eq!(w_series(2, 4).unwrap().coeff(2), -2);
        assert!(w_series(0, 4).is_err());
        for a in [1, 2, 5, 12] {
            let w = w_series(a, 400).unwrap();
            let b = class_sets(a, 401, &ThueMorse).unwrap().b_members;
            let zeros: Vec<u64> = (0..=400).filter(|&n| w.coeff(n as usize) == 0).collect();
            assert_eq!(zeros, b);
            assert!(w.coeffs().iter().all(|c| [-2, 0, 2].contains(c)));
        }
    }

    #[test]
    fn xa_sa_examples() {
        let s1 = xa_sa_coeffs(1, 1 << 10).unwrap();
        assert!(s1.coeffs().iter().all(|c| *c == 0 || *c == -2));
        assert_eq!(s1.coeff(0), 0);
        let s3 = xa_sa_coeffs(3, 1 << 10).unwrap();
        assert!(s3.coeffs().iter().all(|c| *c == 0 || *c == 2));
        assert!(xa_sa_coeffs(4, 100).is_err());
        assert!(xa_sa_coeffs(9, 5).is_err());
    }

    #[test]
    fn bullet_formulas_small() {
        for a in (1..=31).step_by(2) {
            assert_eq!(
                coefficient_formula_mismatch(a, 512).unwrap(),
                None,
                "a = {a}"
            );
            assert_eq!(value_set_violation(a, 512).unwrap(), None);
            assert!(summatory_one_sided(a, 512).unwrap());
        }
    }

    #[test]
    fn star_examples() {
        assert!(verify_star(1, 256).unwrap());
        assert!(verify_star(5, 512).unwrap());
        assert!(verify_star(99, 1 << 12).unwrap());
        // (*) does not need a odd
        assert!(verify_star(6, 300).unwrap());
        assert!(verify_star(0, 10).is_err());
    }

    #[test]
    fn star_detects_wrong_side() {
        // Using +(1 - X^a) instead of (1 + X^a) must fail at index a.
        let a = 7u64;
        let n = 200;
        let lhs = xa_sa_series(a, n).unwrap();
        let head = IntSeries::from_fn(n, |m| if (m as u64) < a { u(m as u64) } else { 0 });
        let wrong = IntSeries::one(n).sub(&IntSeries::monomial(1, a as usize, n));
        let rhs = head
            .partial_sums()
            .neg()
            .add(&wrong.mul(&tm_series(n).spread_even()));
        assert!(lhs.first_difference(&rhs).is_some());
    }

    #[test]
    fn decimation() {
        assert_eq!(decimation_mismatch(1 << 10), None);
    }

    #[test]
    fn even_shift_is_not_one_sided() {
        assert!(!summatory_one_sided(2, 64).unwrap());
    }

    #[test]
    fn bigint_coefficients() {
        let x = TruncSeries::<BigInt>::from_coeffs(vec![BigInt::from(1), BigInt::from(1)], 40);
        let mut p = TruncSeries::<BigInt>::one(40);
        for _ in 0..40 {
            p = p.mul(&x);
        }
        // (1 + X)^40 has C(40, 20) in the middle
        assert_eq!(p.coeff(20), "137846528820".parse::<BigInt>().unwrap());
    }

    fn small_series() -> impl Strategy<Value = IntSeries> {
        prop::collection::vec(-5i64..=5, 1..12).prop_map(|c| IntSeries::from_coeffs(c, 11))
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_series(), b in small_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn mul_distributes(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn scale_is_mul_by_constant(a in small_series(), k in -4i64..=4) {
            prop_assert_eq!(a.scale(&k), a.mul(&IntSeries::monomial(k, 0, 11)));
        }
    }
}
