//! Thue-Morse sequence tools: generation, morphisms, repetitions in words,
//! Shevelev's class sets, formal power series identities, and numerical
//! evaluation of the associated products and Dirichlet series.

pub mod analysis;
pub mod bfile;
pub mod cli;
pub mod error;
pub mod morphism;
pub mod repetition;
pub mod sequence;
pub mod series;
pub mod shevelev;

pub use error::{Error, Result};
pub use sequence::{nu2, period_doubling, tm_bit, tm_sign, Sign};
