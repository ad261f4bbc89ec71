use thiserror::Error;

/// Errors raised anywhere in the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("seed is the zero polynomial")]
    ZeroSeed,
    #[error("seed is not in the kernel of the operator: (-Δ+u)ω ≠ 0")]
    SeedNotInKernel,
    #[error("inputs do not solve a common Schrödinger equation: ωΔφ ≠ φΔω")]
    NotCoKernel,
    #[error("one-form is not closed")]
    NotClosed,
    #[error("seeds are proportional")]
    ProportionalSeeds,
    #[error("no affine relation λ·F + C matches the target")]
    NoAffineMatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("homogeneous form of odd degree {0} cannot be one-signed")]
    OddDegree(u32),
    #[error("leading form is not positive definite")]
    NonPositiveLeadingForm,
    #[error("positivity inconclusive at depth limit {max_depth}")]
    Inconclusive { max_depth: u32 },
    #[error("denominator vanishes at or next to grid point ({x}, {y})")]
    PoleTooClose { x: String, y: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
