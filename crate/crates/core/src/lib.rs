//! Exact construction and verification of two-dimensional Schrödinger operators
//! `L = -Δ + u` with rational, fast-decaying potentials and a two-dimensional
//! zero-energy `L2` kernel, built by composing Moutard transformations of harmonic
//! polynomial seeds.
//!
//! The pipeline, bottom-up:
//!
//! * [`polyalg`]: exact bivariate polynomials and rational functions over `Q`.
//! * [`moutard`]: one Moutard step (potential map and solution quadrature).
//! * [`construct`]: the double transformation yielding `u`, `ψ1`, `ψ2`.
//! * [`harmonic`]: harmonic seed polynomials `Re zⁿ`, `Im zⁿ`.
//! * [`analysis`]: positivity certificates, decay exponents, `L2` membership and
//!   floating-point cross-checks.
//! * [`search`]: seed sweeps and the worked examples.
//! * [`darboux1d`]: the one-dimensional reduction to Darboux transformations.

pub mod analysis;
pub mod construct;
pub mod darboux1d;
pub mod error;
pub mod harmonic;
pub mod moutard;
pub mod polyalg;
pub mod search;

pub use error::{Error, Result};
pub use polyalg::{BigRational, BivariatePoly, RationalFn};
