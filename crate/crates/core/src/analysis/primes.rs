//! Digit sums of primes modulo `m`.

use crate::error::{Error, Result};

/// Largest sieve bound accepted.
pub const MAX_PRIME_BOUND: u64 = 100_000_000;

/// Primes `<= bound`, from an odd-only sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    // slot i stands for 2i + 1
    let slots = ((bound - 1) / 2 + 1) as usize;
    let mut composite = vec![false; slots];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= bound as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < slots {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend(
        (1..slots)
            .filter(|&i| !composite[i])
            .map(|i| 2 * i as u64 + 1),
    );
    out
}

pub fn digit_sum(mut n: u64, base: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSumHistogram {
    pub base: u64,
    pub modulus: u64,
    /// `counts[r]` is the number of primes whose digit sum is `r` mod `modulus`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl DigitSumHistogram {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| {
                if self.total == 0 {
                    0.0
                } else {
                    c as f64 / self.total as f64
                }
            })
            .collect()
    }

    /// `max_r |count_r / (total/m) - 1|`; 0 for an empty histogram.
    pub fn max_relative_deviation(&self) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        let expected = self.total as f64 / self.modulus as f64;
        self.counts
            .iter()
            .map(|&c| (c as f64 / expected - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn prime_digit_stats(bound: u64, base: u64, modulus: u64) -> Result<DigitSumHistogram> {
    if base < 2 || modulus < 2 {
        return Err(Error::invalid("base and modulus must both be at least 2"));
    }
    if bound > MAX_PRIME_BOUND {
        return Err(Error::invalid(format!(
            "bound {bound} exceeds the sieve limit {MAX_PRIME_BOUND}"
        )));
    }
    let mut counts = vec![0u64; modulus as usize];
    let mut total = 0;
    for p in primes_up_to(bound) {
        counts[(digit_sum(p, base) % modulus) as usize] += 1;
        total += 1;
    }
    Ok(DigitSumHistogram {
        base,
        modulus,
        counts,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(5000);
        let trial: Vec<u64> = (0..=5000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(primes_up_to(2), vec![2]);
        assert_eq!(primes_up_to(9), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn small_examples() {
        let h = prime_digit_stats(20, 2, 2).unwrap();
        assert_eq!(h.counts, vec![3, 5]);
        let h = prime_digit_stats(2, 2, 2).unwrap();
        assert_eq!(h.counts, vec![0, 1]);
        let h = prime_digit_stats(1, 2, 2).unwrap();
        assert_eq!((h.total, h.max_relative_deviation()), (0, 0.0));
    }

    #[test]
    fn binary_parity_counts() {
        // evil / odious primes, counted independently
        let h = prime_digit_stats(100_000, 2, 2).unwrap();
        assert_eq!(h.counts, vec![4492, 5100]);
        let h = prime_digit_stats(1_000_000, 2, 2).unwrap();
        assert_eq!(h.counts, vec![36867, 41631]);
        let dev = h.max_relative_deviation();
        assert!((dev - (41631.0 / 39249.0 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn other_bases() {
        assert_eq!(digit_sum(255, 16), 30);
        assert_eq!(digit_sum(0, 7), 0);
        // the digit sum is congruent to p mod (base - 1)
        let h = prime_digit_stats(10_000, 10, 3).unwrap();
        assert_eq!(h.counts[0], 1);
        let h = prime_digit_stats(10_000, 3, 2).unwrap();
        assert_eq!(h.counts, vec![1, 1228]);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(prime_digit_stats(100, 1, 2).is_err());
        assert!(prime_digit_stats(100, 2, 1).is_err());
        assert!(prime_digit_stats(MAX_PRIME_BOUND + 1, 2, 2).is_err());
    }
}
