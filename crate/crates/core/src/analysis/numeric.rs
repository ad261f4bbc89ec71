//! Floating-point cross-checks: a finite-difference residual and a quadrature estimate
//! of the `L2` norm.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::decay::decay_exponent;
use super::positivity::{certify_sign_definite, leading_form_positive, BranchAndBound};
use crate::error::{Error, Result};
use crate::polyalg::{int, to_f64, BivariatePoly, RationalFn};

fn pole_error(x: &BigRational, y: &BigRational) -> Error {
    Error::PoleTooClose {
        x: x.to_string(),
        y: y.to_string(),
    }
}

/// Value of `f` at a stencil point whose denominator must share the sign `sign` of the
/// center's denominator.
fn stencil_value(
    f: &RationalFn,
    x: &BigRational,
    y: &BigRational,
    sign: bool,
    at: (&BigRational, &BigRational),
) -> Result<BigRational> {
    let d = f.den().evaluate(x, y);
    if d.is_zero() || d.is_positive() != sign {
        return Err(pole_error(at.0, at.1));
    }
    Ok(f.num().evaluate(x, y) / d)
}

/// `max |−Δ_h ψ + u ψ|` over `grid`, using the 5-point stencil with spacing `h`.
///
/// Every stencil value is computed exactly and only the residual is rounded, so the
/// result shows the `O(h²)` truncation error without cancellation noise. Fails with
/// `PoleTooClose` if a denominator of `u` or `ψ` vanishes or changes sign across a
/// stencil.
pub fn numeric_residual(
    u: &RationalFn,
    psi: &RationalFn,
    grid: &[(BigRational, BigRational)],
    h: &BigRational,
) -> Result<f64> {
    if !h.is_positive() {
        return Err(Error::InvalidArgument("step h must be positive".into()));
    }
    let h2 = h * h;
    let mut worst = 0.0f64;
    for (x, y) in grid {
        let du = u.den().evaluate(x, y);
        let dp = psi.den().evaluate(x, y);
        if du.is_zero() || dp.is_zero() {
            return Err(pole_error(x, y));
        }
        let (su, sp) = (du.is_positive(), dp.is_positive());
        let center = psi.num().evaluate(x, y) / &dp;
        let mut sum = -(&center * int(4));
        for (px, py) in [
            (x + h, y.clone()),
            (x - h, y.clone()),
            (x.clone(), y + h),
            (x.clone(), y - h),
        ] {
            sum += stencil_value(psi, &px, &py, sp, (x, y))?;
            stencil_value(u, &px, &py, su, (x, y))?;
        }
        let r = -(sum / &h2) + u.num().evaluate(x, y) / du * center;
        worst = worst.max(to_f64(&r).abs());
    }
    Ok(worst)
}

/// Midpoint-rule resolution for [`numeric_l2_norm_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quadrature {
    /// Radial cells per unit of radius.
    pub radial_per_unit: usize,
    pub angular: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            radial_per_unit: 64,
            angular: 256,
        }
    }
}

/// `∫|ψ|²` over the disk of radius `R`, plus a rigorous bound on the integral outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L2Estimate {
    pub disk_estimate: f64,
    /// Upper bound of `∫_{r>R}|ψ|²`; infinite when `R` is too small for the bound.
    pub tail_bound: f64,
}

impl L2Estimate {
    pub fn total(&self) -> f64 {
        self.disk_estimate + self.tail_bound
    }
}

fn eval_f64(terms: &[(i32, i32, f64)], x: f64, y: f64) -> f64 {
    terms.iter().map(|(i, j, c)| c * x.powi(*i) * y.powi(*j)).sum()
}

pub fn numeric_l2_norm(psi: &RationalFn, outer_radius: &BigRational) -> Result<L2Estimate> {
    numeric_l2_norm_with(psi, outer_radius, Quadrature::default(), BranchAndBound::default())
}

/// Polar midpoint rule on the disk of radius `R` and the tail bound
/// `2π K² R^(2−2k) / (2k−2)` where `|ψ| ≤ K r^(−k)` for `r ≥ R`.
///
/// With `|num| ≤ S_num r^n` and `|den| ≥ r^d (m − S_low/r)` for `r ≥ 1`, where `m` bounds
/// the denominator's leading form on the circle and `S_low` is the coefficient mass of
/// its lower-order terms, `K = S_num / (m − S_low/R)`.
pub fn numeric_l2_norm_with(
    psi: &RationalFn,
    outer_radius: &BigRational,
    quad: Quadrature,
    limits: BranchAndBound,
) -> Result<L2Estimate> {
    if !outer_radius.is_positive() {
        return Err(Error::InvalidArgument("outer radius must be positive".into()));
    }
    let (sign, p) = certify_sign_definite(psi.den(), limits)?;
    if !p.is_certified() {
        return Err(Error::Inconclusive {
            max_depth: limits.max_depth,
        });
    }
    let report = decay_exponent(psi)?;
    if report.exponent < 2 {
        return Err(Error::InvalidArgument(format!(
            "decay exponent {} is too slow for an L2 function",
            report.exponent
        )));
    }

    let radius = to_f64(outer_radius);
    let num = psi.num().to_f64_poly();
    let den = psi.den().to_f64_poly();
    let nr = ((radius * quad.radial_per_unit as f64).ceil() as usize).max(16);
    let nt = quad.angular.max(8);
    let (dr, dt) = (radius / nr as f64, std::f64::consts::TAU / nt as f64);
    let angles: Vec<(f64, f64)> = (0..nt)
        .map(|j| {
            let t = (j as f64 + 0.5) * dt;
            (t.cos(), t.sin())
        })
        .collect();
    let mut disk = 0.0;
    for i in 0..nr {
        let r = (i as f64 + 0.5) * dr;
        let ring: f64 = angles
            .iter()
            .map(|(c, s)| {
                let v = eval_f64(&num, r * c, r * s) / eval_f64(&den, r * c, r * s);
                v * v
            })
            .sum();
        disk += ring * r;
    }
    disk *= dr * dt;

    let den_oriented: BivariatePoly = match sign {
        super::positivity::Sign::Positive => psi.den().clone(),
        super::positivity::Sign::Negative => -psi.den(),
    };
    let lead = den_oriented.leading_form()?;
    let m = leading_form_positive(&lead)?.ok_or(Error::NonPositiveLeadingForm)?;
    let r_eff = if outer_radius < &int(1) { int(1) } else { outer_radius.clone() };
    let margin = &m - (&den_oriented - &lead).l1_norm() / &r_eff;
    let tail_bound = if margin.is_positive() && outer_radius >= &int(1) {
        let k = report.exponent as i32;
        let kk = to_f64(&(psi.num().l1_norm() / margin));
        std::f64::consts::TAU * kk * kk * radius.powi(2 - 2 * k) / (2 * k - 2) as f64
    } else {
        f64::INFINITY
    };
    Ok(L2Estimate {
        disk_estimate: disk,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{poly, rat};

    const W1: &str =
        "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2";

    fn grid(n: i64, half_width: i64) -> Vec<(BigRational, BigRational)> {
        let step = rat(2 * half_width, n - 1);
        let lo = int(-half_width);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                out.push((&lo + &step * int(i), &lo + &step * int(j)));
            }
        }
        out
    }

    #[test]
    fn stencil_is_exact_on_quadratics() {
        let r = numeric_residual(
            &RationalFn::zero(),
            &RationalFn::from(poly("x^2 - y^2")),
            &grid(5, 2),
            &rat(1, 10),
        )
        .unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn reference_pair_converges_quadratically() {
        let u = RationalFn::new(
            poly("-5120*(1 + 8*x + 2*y + 17*x^2 + 17*y^2)"),
            poly(W1).pow(2),
        )
        .unwrap();
        let psi = RationalFn::new(poly("x + 2*x^2 + x*y - 2*y^2"), poly(W1)).unwrap();
        let g = grid(7, 3);
        let a = numeric_residual(&u, &psi, &g, &rat(1, 100)).unwrap();
        let b = numeric_residual(&u, &psi, &g, &rat(1, 200)).unwrap();
        assert!(a < 1e-3);
        assert!((3.5..=4.5).contains(&(a / b)), "ratio {}", a / b);
    }

    #[test]
    fn pole_detected() {
        let psi = RationalFn::new(poly("1"), poly("x")).unwrap();
        let err = numeric_residual(&RationalFn::zero(), &psi, &[(rat(1, 20), int(0))], &rat(1, 10));
        assert!(matches!(err, Err(Error::PoleTooClose { .. })));
    }

    #[test]
    fn radial_reference_integral() {
        let psi = RationalFn::new(poly("1"), poly("1 + x^2 + y^2")).unwrap();
        let e = numeric_l2_norm(&psi, &int(20)).unwrap();
        let pi = std::f64::consts::PI;
        assert!((e.disk_estimate - pi).abs() / pi < 0.01);
        assert!(e.total() >= pi * (1.0 - 1e-6));
        let far = numeric_l2_norm(&psi, &int(40)).unwrap();
        assert!(far.tail_bound < e.tail_bound);
    }

    #[test]
    fn slow_decay_rejected() {
        let psi = RationalFn::new(poly("x"), poly("1 + x^2 + y^2")).unwrap();
        assert!(numeric_l2_norm(&psi, &int(5)).is_err());
    }
}
