//! Class sets `B_a`, `C_a` of a `±1` sequence and the sequences sampled
//! along them.
//!
//! For a sequence `u` and a shift `a >= 1`, `C_a` holds the `n` with
//! `u(n + a) = u(n)` and `B_a` the `n` with `u(n + a) = -u(n)`. Sampling `u`
//! along them gives `gamma_a` and `beta_a`. For Thue-Morse, `gamma_a` is
//! periodic with smallest period `2^(v(a)+1)`, its first period is `u(a)`
//! times the Thue-Morse prefix, and `beta_a = -gamma_a`. Everything here
//! checks those claims on finite windows.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequence::{nu2, tm_sign, SequenceProvider, Sign, ThueMorse};

/// Scanning stops after this many indices when looking for members.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 26;

const FIRST_CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    /// `u(n + a) = -u(n)`
    B,
    /// `u(n + a) = u(n)`
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSets {
    pub a: u64,
    pub scan_bound: u64,
    pub b_members: Vec<u64>,
    pub c_members: Vec<u64>,
}

impl ClassSets {
    pub fn members(&self, kind: ClassKind) -> &[u64] {
        match kind {
            ClassKind::B => &self.b_members,
            ClassKind::C => &self.c_members,
        }
    }

    /// Checks that the two lists are increasing, disjoint, cover
    /// `[0, scan_bound)` and are classified correctly against `seq`.
    /// Returns the first offending index.
    pub fn check_partition(&self, seq: &dyn SequenceProvider) -> std::result::Result<(), u64> {
        let (mut bi, mut ci) = (0, 0);
        for n in 0..self.scan_bound {
            let same = seq.term(n + self.a) == seq.term(n);
            let in_b = self.b_members.get(bi) == Some(&n);
            let in_c = self.c_members.get(ci) == Some(&n);
            match (in_b, in_c, same) {
                (true, false, false) => bi += 1,
                (false, true, true) => ci += 1,
                _ => return Err(n),
            }
        }
        if bi != self.b_members.len() || ci != self.c_members.len() {
            return Err(self.scan_bound);
        }
        Ok(())
    }
}

fn check_shift(a: u64) -> Result<()> {
    if a == 0 {
        return Err(Error::invalid("shift a must be positive"));
    }
    Ok(())
}

/// Classifies `[start, end)`, appending to the `B` and `C` member lists.
fn scan_range(
    a: u64,
    start: u64,
    end: u64,
    seq: &dyn SequenceProvider,
    b_out: &mut Vec<u64>,
    c_out: &mut Vec<u64>,
) {
    let len = (end - start) as usize;
    let mut lo = vec![Sign::Plus; len];
    let mut hi = vec![Sign::Plus; len];
    seq.fill(start, &mut lo);
    seq.fill(start + a, &mut hi);
    for (i, (x, y)) in lo.iter().zip(&hi).enumerate() {
        let n = start + i as u64;
        if x == y {
            c_out.push(n);
        } else {
            b_out.push(n);
        }
    }
}

pub fn class_sets(a: u64, scan_bound: u64, seq: &dyn SequenceProvider) -> Result<ClassSets> {
    check_shift(a)?;
    if scan_bound == 0 {
        return Err(Error::invalid("scan bound must be positive"));
    }
    let mut b_members = Vec::new();
    let mut c_members = Vec::new();
    let mut start = 0;
    while start < scan_bound {
        let end = scan_bound.min(start + (1 << 16));
        scan_range(a, start, end, seq, &mut b_members, &mut c_members);
        start = end;
    }
    Ok(ClassSets {
        a,
        scan_bound,
        b_members,
        c_members,
    })
}

/// First `count` members of `B_a` or `C_a`, scanning in doubling chunks up
/// to `cap` indices.
pub fn first_members(
    a: u64,
    kind: ClassKind,
    count: usize,
    seq: &dyn SequenceProvider,
    cap: u64,
) -> Result<Vec<u64>> {
    check_shift(a)?;
    let mut b = Vec::new();
    let mut c = Vec::new();
    let mut start = 0;
    let mut chunk = FIRST_CHUNK;
    loop {
        let found = match kind {
            ClassKind::B => b.len(),
            ClassKind::C => c.len(),
        };
        if found >= count {
            break;
        }
        if start >= cap {
            return Err(Error::Shortfall {
                found,
                requested: count,
                scanned: start,
            });
        }
        let end = cap.min(start + chunk);
        scan_range(a, start, end, seq, &mut b, &mut c);
        start = end;
        chunk = chunk.saturating_mul(2);
    }
    let mut members = match kind {
        ClassKind::B => b,
        ClassKind::C => c,
    };
    members.truncate(count);
    Ok(members)
}

fn sampled(a: u64, kind: ClassKind, count: usize, seq: &dyn SequenceProvider) -> Result<Vec<Sign>> {
    let members = first_members(a, kind, count, seq, DEFAULT_SCAN_CAP)?;
    Ok(members.into_iter().map(|m| seq.term(m)).collect())
}

/// `gamma_a(n) = u(m_n)` for the first `count` members `m_n` of `C_a`.
pub fn gamma_seq(a: u64, count: usize, seq: &dyn SequenceProvider) -> Result<Vec<Sign>> {
    sampled(a, ClassKind::C, count, seq)
}

/// `beta_a(n) = u(l_n)` for the first `count` members `l_n` of `B_a`.
pub fn beta_seq(a: u64, count: usize, seq: &dyn SequenceProvider) -> Result<Vec<Sign>> {
    sampled(a, ClassKind::B, count, seq)
}

/// Smallest `p >= 1` with `xs[i] = xs[i + p]` wherever both exist.
/// Zero for an empty slice.
pub fn smallest_period<T: PartialEq>(xs: &[T]) -> usize {
    if xs.is_empty() {
        return 0;
    }
    // prefix function: longest proper border of xs[..=i]
    let mut border = vec![0usize; xs.len()];
    for i in 1..xs.len() {
        let mut k = border[i - 1];
        while k > 0 && xs[i] != xs[k] {
            k = border[k - 1];
        }
        if xs[i] == xs[k] {
            k += 1;
        }
        border[i] = k;
    }
    xs.len() - border[xs.len() - 1]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub a: u64,
    pub valuation: u32,
    pub expected_period: usize,
    /// `None` when the window is shorter than two expected periods.
    pub observed_smallest_period: Option<usize>,
    pub gamma_prefix: Vec<Sign>,
    /// `u(a)`
    pub prefix_sign: Sign,
    pub beta_equals_minus_gamma: bool,
    pub prefix_matches_tm: bool,
    /// `(beta terms, gamma terms)` examined.
    pub window_lengths: (usize, usize),
    /// First `n` where `gamma_a(n) != u(a) u(n mod period)` or
    /// `beta_a(n) != -gamma_a(n)`.
    pub first_counterexample: Option<usize>,
}

impl TheoremReport {
    pub fn period_ok(&self) -> bool {
        self.observed_smallest_period == Some(self.expected_period)
    }

    pub fn holds(&self) -> bool {
        self.period_ok() && self.prefix_matches_tm && self.beta_equals_minus_gamma
    }
}

/// Checks the Thue-Morse class-set theorem for one `a` on windows of
/// `min_members` terms of both `beta_a` and `gamma_a`.
pub fn verify_theorem(a: u64, min_members: usize) -> Result<TheoremReport> {
    let valuation = nu2(a)?;
    let expected_period = 1usize << (valuation + 1);
    if min_members < 4 * expected_period {
        return Err(Error::invalid(format!(
            "window of {min_members} terms is shorter than 4 periods of {expected_period}"
        )));
    }
    let gamma = gamma_seq(a, min_members, &ThueMorse)?;
    let beta = beta_seq(a, min_members, &ThueMorse)?;
    let prefix_sign = tm_sign(a);

    let observed = smallest_period(&gamma);
    let observed_smallest_period = (observed * 2 <= gamma.len()).then_some(observed);

    let prefix_bad = gamma
        .iter()
        .enumerate()
        .position(|(n, &g)| g != prefix_sign * tm_sign((n % expected_period) as u64));
    let beta_bad = beta.iter().zip(&gamma).position(|(&b, &g)| b != -g);
    let first_counterexample = match (prefix_bad, beta_bad) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };

    Ok(TheoremReport {
        a,
        valuation,
        expected_period,
        observed_smallest_period,
        gamma_prefix: gamma[..expected_period].to_vec(),
        prefix_sign,
        beta_equals_minus_gamma: beta_bad.is_none(),
        prefix_matches_tm: prefix_bad.is_none(),
        window_lengths: (beta.len(), gamma.len()),
        first_counterexample,
    })
}

/// Runs [`verify_theorem`] for every `a` in `1..=a_max` with windows of
/// `periods` expected periods. Results come back ordered by `a`.
pub fn verify_range(a_max: u64, periods: usize) -> Result<Vec<TheoremReport>> {
    (1..=a_max)
        .into_par_iter()
        .map(|a| {
            let period = 1usize << (a.trailing_zeros() + 1);
            verify_theorem(a, periods * period)
        })
        .collect()
}

/// Checks `C_{2a} = 2 C_a ∪ (2 C_a + 1)` on `[0, bound)` for Thue-Morse.
pub fn verify_halving(a: u64, bound: u64) -> Result<bool> {
    Ok(halving_mismatch(a, bound)?.is_none())
}

/// First index below `bound` where the two sides disagree.
pub fn halving_mismatch(a: u64, bound: u64) -> Result<Option<u64>> {
    check_shift(a)?;
    if bound == 0 {
        return Ok(None);
    }
    let doubled = class_sets(2 * a, bound, &ThueMorse)?;
    let base = class_sets(a, bound.div_ceil(2), &ThueMorse)?;
    let rebuilt = base
        .c_members
        .iter()
        .flat_map(|&m| [2 * m, 2 * m + 1])
        .filter(|&n| n < bound);
    let mut lhs = doubled.c_members.iter().copied();
    let mut rhs = rebuilt;
    loop {
        match (lhs.next(), rhs.next()) {
            (None, None) => return Ok(None),
            (Some(x), Some(y)) if x == y => continue,
            (Some(x), Some(y)) => return Ok(Some(x.min(y))),
            (Some(x), None) | (None, Some(x)) => return Ok(Some(x)),
        }
    }
}

/// `true` when the digit-sum parity strictly alternates along `members`.
pub fn parities_alternate(members: &[u64]) -> bool {
    members
        .windows(2)
        .all(|w| crate::sequence::tm_bit(w[0]) != crate::sequence::tm_bit(w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{tm_bit, PeriodDoubling};

    fn u(n: u64) -> i8 {
        // digit-loop oracle
        let mut s = 0;
        let mut m = n;
        while m > 0 {
            s += m & 1;
            m >>= 1;
        }
        if s % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn signs(xs: &[Sign]) -> Vec<i8> {
        xs.iter().map(|s| s.to_i8()).collect()
    }

    #[test]
    fn class_set_examples() {
        let c1 = class_sets(1, 16, &ThueMorse).unwrap();
        assert_eq!(&c1.c_members[..5], &[1, 5, 7, 9, 13]);
        let b1 = class_sets(1, 8, &ThueMorse).unwrap();
        assert_eq!(&b1.b_members[..5], &[0, 2, 3, 4, 6]);
        let c2 = class_sets(2, 12, &ThueMorse).unwrap();
        assert_eq!(c2.c_members, vec![2, 3, 10, 11]);
    }

    #[test]
    fn class_sets_agree_with_oracle() {
        for a in 1..40u64 {
            let cs = class_sets(a, 300, &ThueMorse).unwrap();
            let expect_c: Vec<u64> = (0..300).filter(|&n| u(n + a) == u(n)).collect();
            assert_eq!(cs.c_members, expect_c);
            assert_eq!(cs.check_partition(&ThueMorse), Ok(()));
        }
    }

    #[test]
    fn class_sets_reject_zero_shift() {
        assert!(class_sets(0, 10, &ThueMorse).is_err());
        assert!(class_sets(1, 0, &ThueMorse).is_err());
        assert!(gamma_seq(0, 3, &ThueMorse).is_err());
    }

    #[test]
    fn partition_check_catches_tampering() {
        let mut cs = class_sets(3, 50, &ThueMorse).unwrap();
        let moved = cs.c_members.remove(2);
        assert_eq!(cs.check_partition(&ThueMorse), Err(moved));
    }

    #[test]
    fn period_doubling_partition() {
        for a in 1..20 {
            let cs = class_sets(a, 5000, &PeriodDoubling).unwrap();
            assert_eq!(cs.check_partition(&PeriodDoubling), Ok(()));
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(
            signs(&gamma_seq(1, 4, &ThueMorse).unwrap()),
            vec![-1, 1, -1, 1]
        );
        assert_eq!(
            signs(&gamma_seq(2, 4, &ThueMorse).unwrap()),
            vec![-1, 1, 1, -1]
        );
        assert_eq!(gamma_seq(1, 1, &ThueMorse).unwrap()[0], tm_sign(1));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(
            signs(&beta_seq(1, 4, &ThueMorse).unwrap()),
            vec![1, -1, 1, -1]
        );
        let g = gamma_seq(1, 64, &ThueMorse).unwrap();
        let b = beta_seq(1, 64, &ThueMorse).unwrap();
        assert!(b.iter().zip(&g).all(|(&x, &y)| x == -y));

        // a = 4: brute-force window scan of B_4
        let b4: Vec<i8> = (0..200u64)
            .filter(|&n| u(n + 4) != u(n))
            .take(8)
            .map(u)
            .collect();
        let expect: Vec<i8> = (0..8).map(|n| -u(4) * u(n)).collect();
        assert_eq!(b4, expect);
        assert_eq!(signs(&beta_seq(4, 8, &ThueMorse).unwrap()), expect);
    }

    #[test]
    fn shortfall_is_reported() {
        let constant = crate::sequence::FnSequence::new("constant", |_| Sign::Plus);
        match first_members(1, ClassKind::B, 3, &constant, 1 << 14) {
            Err(Error::Shortfall {
                found: 0,
                requested: 3,
                scanned,
            }) => {
                assert_eq!(scanned, 1 << 14)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn period_examples() {
        use Sign::*;
        assert_eq!(smallest_period(&[Plus, Minus, Plus, Minus]), 2);
        assert_eq!(smallest_period(&[Plus, Plus, Plus]), 1);
        assert_eq!(smallest_period(&[Plus, Minus, Minus]), 3);
        assert_eq!(smallest_period(b"abaab"), 3);
        assert_eq!(smallest_period::<u8>(&[]), 0);
    }

    #[test]
    fn period_matches_naive() {
        let words: [&[u8]; 5] = [b"abcabcab", b"aaaab", b"abababa", b"x", b"abacaba"];
        for w in words {
            let naive = (1..=w.len())
                .find(|&p| (0..w.len() - p).all(|i| w[i] == w[i + p]))
                .unwrap();
            assert_eq!(smallest_period(w), naive);
        }
    }

    #[test]
    fn theorem_a1() {
        let r = verify_theorem(1, 32).unwrap();
        assert_eq!(r.expected_period, 2);
        assert_eq!(r.observed_smallest_period, Some(2));
        assert_eq!(signs(&r.gamma_prefix), vec![-1, 1]);
        assert!(r.holds());
        assert_eq!(r.first_counterexample, None);
    }

    #[test]
    fn theorem_a3_alternates() {
        let r = verify_theorem(3, 64).unwrap();
        assert_eq!(r.expected_period, 2);
        assert!(r.holds());
        let c3 = first_members(3, ClassKind::C, 64, &ThueMorse, DEFAULT_SCAN_CAP).unwrap();
        assert!(parities_alternate(&c3));
    }

    #[test]
    fn theorem_a4() {
        let r = verify_theorem(4, 128).unwrap();
        assert_eq!(r.valuation, 2);
        assert_eq!(r.expected_period, 8);
        assert_eq!(r.prefix_sign, Sign::Minus);
        let expect: Vec<i8> = (0..8).map(|n| -u(n)).collect();
        assert_eq!(signs(&r.gamma_prefix), expect);
        assert!(r.holds());
    }

    #[test]
    fn theorem_rejects_short_window() {
        assert!(verify_theorem(4, 31).is_err());
        assert!(verify_theorem(0, 100).is_err());
    }

    #[test]
    fn gamma_starts_with_u_of_a() {
        for a in 1..=512 {
            assert_eq!(
                gamma_seq(a, 1, &ThueMorse).unwrap()[0],
                tm_sign(a),
                "a = {a}"
            );
        }
    }

    #[test]
    fn min_c_for_odious_odd_shift() {
        for a in (1..=999u64).step_by(2) {
            let m0 = first_members(a, ClassKind::C, 1, &ThueMorse, DEFAULT_SCAN_CAP).unwrap()[0];
            if tm_sign(a) == Sign::Minus {
                assert!(m0 == 1 || m0 == 2, "a = {a}, min C_a = {m0}");
            } else {
                assert_eq!(m0, 0);
            }
        }
    }

    #[test]
    fn halving_examples() {
        assert!(verify_halving(1, 24).unwrap());
        let c2 = class_sets(2, 24, &ThueMorse).unwrap();
        assert_eq!(c2.c_members, vec![2, 3, 10, 11, 14, 15, 18, 19]);
        assert!(verify_halving(2, 48).unwrap());
        for a in 1..50 {
            assert!(verify_halving(a, 1).unwrap());
        }
        assert!(verify_halving(5, 0).unwrap());
    }

    #[test]
    fn evil_odious_alternation_small() {
        for a in (1..=99).step_by(2) {
            let c = first_members(a, ClassKind::C, 200, &ThueMorse, DEFAULT_SCAN_CAP).unwrap();
            assert!(parities_alternate(&c), "a = {a}");
        }
        // even shifts do not alternate
        let c2 = first_members(2, ClassKind::C, 4, &ThueMorse, DEFAULT_SCAN_CAP).unwrap();
        assert!(!parities_alternate(&c2));
        assert_eq!(tm_bit(c2[0]), 1);
    }

    #[test]
    fn range_is_ordered() {
        let reports = verify_range(16, 16).unwrap();
        let order: Vec<u64> = reports.iter().map(|r| r.a).collect();
        assert_eq!(order, (1..=16).collect::<Vec<_>>());
        assert!(reports.iter().all(TheoremReport::holds));
    }
}
