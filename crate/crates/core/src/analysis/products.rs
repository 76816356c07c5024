//! The Thue-Morse infinite products
//!
//! ```text
//! P = prod_{n>=0} ((2n+1)/(2n+2))^u(n)
//! Q = prod_{n>=1} (2n/(2n+1))^u(n)
//! R = prod_{n>=1} ((4n+1)(4n+2)/(4n(4n+3)))^u(n)
//! ```
//!
//! evaluated as sums of logarithms with Thue-Morse block grouping (see
//! [`super::grouping`]). Each log factor is a sum of pairs
//! `log(a x + b) - log(a x + b + 1)`, whose `r`-th derivative is bounded by
//! `r! / (a x^(r+1))`; that gives an explicit bound on the tail of the
//! grouped sum.

use std::fmt;
use std::str::FromStr;

use crate::analysis::grouping::{block_size, difference_width, grouped_sum};
use crate::error::{Error, Result};

/// Euler-Mascheroni constant, 17 significant digits.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Smallest tolerance accepted by [`product_eval`].
pub const TOLERANCE_FLOOR: f64 = 1e-12;

/// Default grouping depth (blocks of 16 factors).
pub const DEFAULT_DEPTH: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    P,
    Q,
    R,
}

impl ProductKind {
    fn first_index(self) -> u64 {
        match self {
            ProductKind::P => 0,
            ProductKind::Q | ProductKind::R => 1,
        }
    }

    /// `log` of the `n`-th factor before the `u(n)` exponent.
    fn log_factor(self, n: u64) -> f64 {
        let x = n as f64;
        match self {
            ProductKind::P => -(1.0 / (2.0 * x + 1.0)).ln_1p(),
            ProductKind::Q => -(1.0 / (2.0 * x)).ln_1p(),
            // (4n+1)(4n+2) = 4n(4n+3) + 2
            ProductKind::R => (2.0 / (4.0 * x * (4.0 * x + 3.0))).ln_1p(),
        }
    }
}

/// Each log factor is a sum of pairs `log(a x + b) - log(a x + b + 1)`; the
/// sum of `1/a` over the pairs is 1/2 for P and Q (one pair, a = 2) and for R
/// (two pairs, a = 4). Hence `|f^(r)(x)| <= r! / (2 x^(r+1))`.
const DERIVATIVE_CONSTANT: f64 = 0.5;

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProductKind::P => "P",
            ProductKind::Q => "Q",
            ProductKind::R => "R",
        };
        f.write_str(s)
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(ProductKind::P),
            "Q" | "q" => Ok(ProductKind::Q),
            "R" | "r" => Ok(ProductKind::R),
            _ => Err(Error::invalid(format!(
                "unknown product '{s}', expected P, Q or R"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductResult {
    pub value: f64,
    pub terms_used: u64,
    /// Bound on `|value - true value|`: truncated tail plus a rounding
    /// allowance.
    pub error_estimate: f64,
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// Bound on the log-domain tail after `blocks` blocks of depth `depth`.
fn log_tail_bound(depth: u32, blocks: u64) -> f64 {
    let r = depth as f64;
    let b = block_size(depth) as f64;
    let k = blocks.max(1) as f64;
    // sum_{k' > K} W r! c (B k')^-(r+1)  <=  W r! c B^-(r+1) K^-r / r
    difference_width(depth)
        * factorial(depth)
        * DERIVATIVE_CONSTANT
        * b.powf(-(r + 1.0))
        * k.powf(-r)
        / r
}

fn rounding_allowance(terms: u64) -> f64 {
    16.0 * f64::EPSILON * (1.0 + (terms.max(1) as f64).ln())
}

/// Evaluates a product with a fixed number of blocks.
pub fn product_partial(kind: ProductKind, depth: u32, blocks: u64) -> Result<ProductResult> {
    if depth == 0 || depth > 12 {
        return Err(Error::invalid(format!(
            "grouping depth {depth} outside 1..=12"
        )));
    }
    if blocks == 0 {
        return Err(Error::invalid("need at least one block"));
    }
    let (log_sum, terms) = grouped_sum(|n| kind.log_factor(n), kind.first_index(), depth, blocks);
    let value = log_sum.exp();
    let log_err = log_tail_bound(depth, blocks) + rounding_allowance(terms);
    Ok(ProductResult {
        value,
        terms_used: terms,
        error_estimate: value * log_err.exp_m1(),
    })
}

pub fn product_eval(kind: ProductKind, tol: f64) -> Result<ProductResult> {
    product_eval_with_depth(kind, tol, DEFAULT_DEPTH)
}

/// Picks the smallest block count whose error bound is below `tol`.
pub fn product_eval_with_depth(kind: ProductKind, tol: f64, depth: u32) -> Result<ProductResult> {
    if !(tol >= TOLERANCE_FLOOR) {
        return Err(Error::ToleranceFloor {
            requested: tol,
            floor: TOLERANCE_FLOOR,
        });
    }
    if depth == 0 || depth > 12 {
        return Err(Error::invalid(format!(
            "grouping depth {depth} outside 1..=12"
        )));
    }
    // Every product here lies in (0.5, 2), so a log-domain error of tol/4
    // keeps the value error below tol.
    let log_target = tol / 4.0;
    let r = depth as f64;
    let at_one = log_tail_bound(depth, 1);
    let mut blocks = ((at_one / log_target).powf(1.0 / r).ceil() as u64).max(1);
    loop {
        let res = product_partial(kind, depth, blocks)?;
        if res.error_estimate <= tol {
            return Ok(res);
        }
        if blocks > 1 << 40 {
            return Err(Error::AccuracyNotReached {
                bound: res.error_estimate,
                target: tol,
                context: format!("product {kind}"),
            });
        }
        blocks = blocks * 5 / 4 + 1;
    }
}

/// `2^(-1/2) e^gamma (2/3) R`
pub fn flajolet_martin_phi(tol: f64) -> Result<ProductResult> {
    let factor = flajolet_martin_factor();
    let r = product_eval(ProductKind::R, tol / factor)?;
    Ok(ProductResult {
        value: factor * r.value,
        terms_used: r.terms_used,
        error_estimate: factor * r.error_estimate,
    })
}

/// `phi / R`
pub fn flajolet_martin_factor() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2 * EULER_GAMMA.exp() * 2.0 / 3.0
}
