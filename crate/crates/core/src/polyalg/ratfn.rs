//! Quotients of bivariate polynomials.
//!
//! Nothing is ever reduced to lowest terms; equality is decided by cross-multiplication
//! (`a/b = c/d` iff `a·d − c·b = 0`). Callers that know a common factor by construction
//! can strip it with [`RationalFn::cancel_known_factor`].

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{BivariatePoly, Degree};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RationalFn {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl RationalFn {
    pub fn new(num: BivariatePoly, den: BivariatePoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFn { num, den })
    }

    pub fn zero() -> Self {
        RationalFn::from(BivariatePoly::zero())
    }

    pub fn num(&self) -> &BivariatePoly {
        &self.num
    }

    pub fn den(&self) -> &BivariatePoly {
        &self.den
    }

    pub fn into_parts(self) -> (BivariatePoly, BivariatePoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `1 / self`; fails on the zero function.
    pub fn recip(&self) -> Result<Self> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        if self.den == other.den {
            return RationalFn {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        RationalFn {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn mul_poly(&self, p: &BivariatePoly) -> RationalFn {
        RationalFn {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    pub fn diff_x(&self) -> RationalFn {
        RationalFn {
            num: &self.num.diff_x() * &self.den - &self.num * &self.den.diff_x(),
            den: &self.den * &self.den,
        }
    }

    pub fn diff_y(&self) -> RationalFn {
        RationalFn {
            num: &self.num.diff_y() * &self.den - &self.num * &self.den.diff_y(),
            den: &self.den * &self.den,
        }
    }

    /// Quotient-rule Laplacian of `N/D`:
    /// `(ΔN·D² − 2D(∇N·∇D) − N·D·ΔD + 2N|∇D|²) / D³`.
    pub fn laplacian(&self) -> RationalFn {
        let (n, d) = (&self.num, &self.den);
        if d.is_constant() {
            return RationalFn {
                num: n.laplacian(),
                den: d.clone(),
            };
        }
        let (nx, ny) = (n.diff_x(), n.diff_y());
        let (dx, dy) = (d.diff_x(), d.diff_y());
        let grad_dot = &nx * &dx + &ny * &dy;
        let dd = d * d;
        let two = BigRational::from_integer(2.into());
        let mut num = &n.laplacian() * &dd;
        num -= &(d * &grad_dot).scale(&two);
        num -= &(&(n * d) * &d.laplacian());
        num += &(n * &d.grad_norm_sq()).scale(&two);
        RationalFn {
            num,
            den: &dd * d,
        }
    }

    /// Value at a point, or `None` when the denominator vanishes there.
    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> Option<BigRational> {
        let d = self.den.evaluate(x0, y0);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(x0, y0) / d)
    }

    /// Cross-multiplicative equality.
    pub fn rf_equal(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// `Some(s)` with `self = s · other` for a rational scalar `s`.
    pub fn ratio_to(&self, other: &RationalFn) -> Option<BigRational> {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        lhs.ratio_to(&rhs)
    }

    /// Divides numerator and denominator by `factor` when both are exact multiples.
    /// Returns `self` unchanged otherwise.
    pub fn cancel_known_factor(&self, factor: &BivariatePoly) -> RationalFn {
        if factor.is_zero() {
            return self.clone();
        }
        match (self.num.div_exact(factor), self.den.div_exact(factor)) {
            (Some(num), Some(den)) => RationalFn { num, den },
            _ => self.clone(),
        }
    }

    /// `deg(den) − deg(num)`; `None` for the zero function.
    pub fn degree_gap(&self) -> Option<i64> {
        match (self.num.degree(), self.den.degree()) {
            (Degree::Finite(n), Degree::Finite(d)) => Some(d as i64 - n as i64),
            _ => None,
        }
    }
}

impl From<BivariatePoly> for RationalFn {
    fn from(p: BivariatePoly) -> Self {
        RationalFn {
            num: p,
            den: BivariatePoly::one(),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Free-function form of [`RationalFn::rf_equal`].
pub fn rf_equal(a: &RationalFn, b: &RationalFn) -> bool {
    a.rf_equal(b)
}

/// Free-function form of [`RationalFn::laplacian`].
pub fn rf_laplacian(f: &RationalFn) -> RationalFn {
    f.laplacian()
}

pub fn rf_add(a: &RationalFn, b: &RationalFn) -> RationalFn {
    a.add(b)
}

pub fn rf_mul(a: &RationalFn, b: &RationalFn) -> RationalFn {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, poly};

    fn rf(n: &str, d: &str) -> RationalFn {
        RationalFn::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFn::new(poly("1"), BivariatePoly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn cross_multiplicative_equality() {
        assert!(rf("x", "x^2").rf_equal(&rf("1", "x")));
        assert!(!rf("1", "x").rf_equal(&rf("1", "y")));
        let w = "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2";
        let p = poly(&format!("-5120*(1 + 8*x + 2*y + 17*x^2 + 17*y^2)"));
        let q = poly(w).pow(2);
        let u = RationalFn::new(p.clone(), q.clone()).unwrap();
        let widened = RationalFn::new(&p * &poly("1 + x^2"), &q * &poly("1 + x^2")).unwrap();
        assert!(u.rf_equal(&widened));
        assert!(widened.cancel_known_factor(&poly("1 + x^2")).num() == &p);
    }

    #[test]
    fn quotient_rule_laplacian() {
        assert!(rf("1", "x").laplacian().rf_equal(&rf("2", "x^3")));
        let p = poly("x^3*y - 2*x*y^2 + 7");
        assert!(RationalFn::from(p.clone())
            .laplacian()
            .rf_equal(&RationalFn::from(p.laplacian())));
        assert!(rf_add(&rf("1", "x"), &rf("-1", "x")).rf_equal(&RationalFn::zero()));
    }

    #[test]
    fn laplacian_matches_product_of_first_derivatives() {
        let f = rf("x^2 + y", "1 + x^2 + y^2");
        let via_first = f.diff_x().diff_x().add(&f.diff_y().diff_y());
        assert!(f.laplacian().rf_equal(&via_first));
    }

    #[test]
    fn evaluate_and_poles() {
        let f = rf("x", "x - 1");
        assert_eq!(f.evaluate(&int(2), &int(0)), Some(int(2)));
        assert_eq!(f.evaluate(&int(1), &int(0)), None);
    }

    #[test]
    fn scalar_ratio() {
        let a = rf("2*x", "1 + y^2");
        let b = rf("x*(1+x)", "(1+x)*(1+y^2)");
        assert_eq!(a.ratio_to(&b), Some(int(2)));
        assert_eq!(a.ratio_to(&rf("y", "1")), None);
    }
}
