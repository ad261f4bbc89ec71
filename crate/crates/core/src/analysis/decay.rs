use serde::{Deserialize, Serialize};

use super::positivity::{certify_sign_definite, leading_form_positive, BranchAndBound};
use crate::error::{Error, Result};
use crate::polyalg::{BivariatePoly, RationalFn};

/// Asymptotic decay of a rational function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayReport {
    /// `deg den − deg num`.
    pub exponent: i64,
    /// The denominator's leading form is one-signed on the unit circle, so
    /// `|f| ≤ K(1 + r)^(−exponent)` holds in every direction.
    pub bound_valid: bool,
    /// The numerator's leading form is not identically zero, so the rate is attained
    /// along all but finitely many rays.
    pub exact_on_generic_ray: bool,
}

fn definite_form(lead: &BivariatePoly) -> Result<bool> {
    for p in [lead.clone(), -lead] {
        match leading_form_positive(&p) {
            Ok(Some(_)) => return Ok(true),
            Ok(None) | Err(Error::OddDegree(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

/// Decay report for `f`. Fails only on the zero function, whose rate is undefined.
pub fn decay_exponent(f: &RationalFn) -> Result<DecayReport> {
    let exponent = f.degree_gap().ok_or(Error::ZeroPolynomial)?;
    let bound_valid = definite_form(&f.den().leading_form()?)?;
    Ok(DecayReport {
        exponent,
        bound_valid,
        exact_on_generic_ray: !f.num().leading_form()?.is_zero(),
    })
}

/// Whether `psi` is square-integrable on the plane: its denominator has no real zeros
/// and it decays at least like `r^(−2)` in every direction.
pub fn l2_membership(psi: &RationalFn, limits: BranchAndBound) -> Result<bool> {
    if psi.is_zero() {
        return Ok(true);
    }
    let report = decay_exponent(psi)?;
    if !report.bound_valid || report.exponent < 2 {
        return Ok(false);
    }
    match certify_sign_definite(psi.den(), limits) {
        Ok((_, p)) => Ok(p.is_certified()),
        Err(Error::NonPositiveLeadingForm) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, poly};
    use proptest::prelude::*;

    const W1: &str =
        "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2";

    fn rf(n: &str, d: &str) -> RationalFn {
        RationalFn::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn reference_rates() {
        let u = RationalFn::new(
            poly("-5120*(1 + 8*x + 2*y + 17*x^2 + 17*y^2)"),
            poly(W1).pow(2),
        )
        .unwrap();
        let r = decay_exponent(&u).unwrap();
        assert_eq!((r.exponent, r.bound_valid, r.exact_on_generic_ray), (6, true, true));
        let psi = RationalFn::new(poly("x + 2*x^2 + x*y - 2*y^2"), poly(W1)).unwrap();
        let r = decay_exponent(&psi).unwrap();
        assert_eq!((r.exponent, r.bound_valid), (2, true));
    }

    #[test]
    fn flags() {
        let r = decay_exponent(&rf("x^2 - y^2", "1 + x^2 + y^2")).unwrap();
        assert_eq!((r.exponent, r.bound_valid, r.exact_on_generic_ray), (0, true, true));
        assert!(!decay_exponent(&rf("1", "1 + x^2 - y^2")).unwrap().bound_valid);
        assert!(!decay_exponent(&rf("1", "x^3 + 1")).unwrap().bound_valid);
        assert!(decay_exponent(&rf("1", "-1 - x^2 - y^2")).unwrap().bound_valid);
        assert_eq!(decay_exponent(&RationalFn::zero()).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn membership() {
        let limits = BranchAndBound::default();
        assert!(l2_membership(&rf("1", "1 + x^2 + y^2"), limits).unwrap());
        assert!(!l2_membership(&rf("x", "1 + x^2 + y^2"), limits).unwrap());
        assert!(!l2_membership(&rf("1", "x^2 + y^2"), limits).unwrap());
        assert!(!l2_membership(&rf("1", "(x^2 + y^2 - 1)*(x^2 + y^2 + 1)"), limits).unwrap());
        // a nonnegative denominator touching zero only off the dyadic grid
        assert_eq!(
            l2_membership(&rf("1", "(3*x^2 + 3*y^2 - 1)^2"), limits).unwrap_err(),
            Error::Inconclusive { max_depth: 40 }
        );
        assert!(l2_membership(&rf("1", "-(1 + x^2 + y^2)"), limits).unwrap());
    }

    proptest! {
        #[test]
        fn scale_invariant(l in -50i64..50) {
            prop_assume!(l != 0);
            let f = rf("3*x^2 - x*y + 7", W1);
            prop_assert_eq!(decay_exponent(&f).unwrap(), decay_exponent(&f.scale(&int(l))).unwrap());
        }
    }
}
