//! Exact arithmetic on bivariate polynomials and rational functions over `Q`.

mod json;
mod parse;
mod poly;
mod ratfn;
mod rational;
mod univariate;

pub use json::{opt_rational as opt_rational_serde, rational as rational_serde, PolyJson, RationalJson, TermJson};
pub use num_rational::BigRational;
pub use parse::poly;
pub use poly::{BivariatePoly, Degree, Monomial};
pub use ratfn::{rf_add, rf_equal, rf_laplacian, rf_mul, RationalFn};
pub use rational::{ceil_int, from_parts, int, parse_rational, pow2, rat, to_f64, to_sci_string};
pub use univariate::{Poly1D, RationalFn1D};
