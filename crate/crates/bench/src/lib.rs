//! Benchmark inputs shared by the criterion suites.

use moutard_core::construct::SeedPair;
use moutard_core::search::{example_constant, example_seeds};
use moutard_core::BigRational;

/// Seeds and constant of a worked example.
pub fn example(id: u8) -> (SeedPair, BigRational) {
    (
        example_seeds(id).expect("known example"),
        example_constant(id).expect("known example"),
    )
}
