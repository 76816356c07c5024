//! Numerical side: infinite products, the Dirichlet series and prime digit sums.

pub mod dirichlet;
mod grouping;
pub mod primes;
pub mod products;

pub use dirichlet::{
    dirichlet_eval, dirichlet_eval_detailed, dirichlet_zero_scan, ComplexValue, ContinuationParams,
    DirichletValue, GridPoint, ScanOptions, ZeroScan,
};
pub use primes::{prime_digit_stats, DigitSumHistogram};
pub use products::{flajolet_martin_phi, product_eval, ProductKind, ProductResult};
