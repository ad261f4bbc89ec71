//! Positivity certificates, decay exponents, `L2` membership and floating-point
//! cross-checks for the constructed potentials and eigenfunctions.

mod decay;
mod numeric;
mod positivity;

pub use decay::{decay_exponent, l2_membership, DecayReport};
pub use numeric::{numeric_l2_norm, numeric_l2_norm_with, numeric_residual, L2Estimate, Quadrature};
pub use positivity::{
    certify_sign_definite, global_positivity, leading_form_positive, BranchAndBound, Cell,
    CertifiedCell, Positivity, PositivityCertificate, Sign, DEFAULT_MAX_BOXES, DEFAULT_MAX_DEPTH,
};
