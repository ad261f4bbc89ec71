//! Double Moutard construction.
//!
//! Two seeds `ω1, ω2` in the kernel of `-Δ + u0` give potentials `u1 = M_{ω1}(u0)` and
//! `u2 = M_{ω2}(u0)`. Picking `θ1 = (F + C)/ω1` from the image family of `ω2` under
//! `ω1` and `θ2 = −(ω1/ω2)θ1`, the second-level transforms `M_{θ1}(u1)` and
//! `M_{θ2}(u2)` agree. With `W = ω1θ1 = F + C` everything closes up algebraically:
//!
//! ```text
//! u  = u0 − 2Δ log W
//! ψ1 = 1/θ1 =  ω1/W
//! ψ2 = 1/θ2 = −ω2/W
//! ```
//!
//! and `(−Δ + u)ψ1 = (−Δ + u)ψ2 = 0`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moutard::{
    log_laplacian_form, moutard_potential, moutard_potential_rational, moutard_solution,
    verify_solution,
};
use crate::polyalg::{rational_serde, BivariatePoly, Monomial, RationalFn};

/// Two linearly independent zero-energy solutions of `-Δ + u0`.
#[derive(Debug, Clone, Serialize)]
pub struct SeedPair {
    u0: RationalFn,
    omega1: BivariatePoly,
    omega2: BivariatePoly,
}

impl SeedPair {
    pub fn new(u0: RationalFn, omega1: BivariatePoly, omega2: BivariatePoly) -> Result<Self> {
        if omega1.is_zero() || omega2.is_zero() {
            return Err(Error::ZeroSeed);
        }
        for w in [&omega1, &omega2] {
            if !verify_solution(&u0, &RationalFn::from(w.clone())) {
                return Err(Error::SeedNotInKernel);
            }
        }
        if omega1.ratio_to(&omega2).is_some() {
            return Err(Error::ProportionalSeeds);
        }
        Ok(SeedPair { u0, omega1, omega2 })
    }

    /// Seeds over the free Laplacian (`u0 = 0`).
    pub fn harmonic(omega1: BivariatePoly, omega2: BivariatePoly) -> Result<Self> {
        SeedPair::new(RationalFn::zero(), omega1, omega2)
    }

    pub fn u0(&self) -> &RationalFn {
        &self.u0
    }

    pub fn omega1(&self) -> &BivariatePoly {
        &self.omega1
    }

    pub fn omega2(&self) -> &BivariatePoly {
        &self.omega2
    }

    /// `u1 = M_{ω1}(u0)`.
    pub fn u1(&self) -> Result<RationalFn> {
        moutard_potential(&self.u0, &self.omega1)
    }

    /// `u2 = M_{ω2}(u0)`.
    pub fn u2(&self) -> Result<RationalFn> {
        moutard_potential(&self.u0, &self.omega2)
    }

    /// The same pair with `ω2` replaced by `−ω2`; negates the antiderivative `F`.
    pub fn with_negated_omega2(&self) -> SeedPair {
        SeedPair {
            u0: self.u0.clone(),
            omega1: self.omega1.clone(),
            omega2: -&self.omega2,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedPairJson {
    #[serde(default)]
    u0: Option<RationalFn>,
    omega1: BivariatePoly,
    omega2: BivariatePoly,
}

impl<'de> Deserialize<'de> for SeedPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeedPairJson::deserialize(d)?;
        SeedPair::new(j.u0.unwrap_or_else(RationalFn::zero), j.omega1, j.omega2)
            .map_err(serde::de::Error::custom)
    }
}

/// Output of [`double_transform`].
#[derive(Debug, Clone)]
pub struct DoubleMoutardResult {
    w: BivariatePoly,
    c: BigRational,
    u: RationalFn,
    psi1: RationalFn,
    psi2: RationalFn,
    theta1: RationalFn,
    theta2: RationalFn,
}

impl DoubleMoutardResult {
    /// `W = F + C = ω1·θ1`.
    pub fn w(&self) -> &BivariatePoly {
        &self.w
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn u(&self) -> &RationalFn {
        &self.u
    }

    pub fn psi1(&self) -> &RationalFn {
        &self.psi1
    }

    pub fn psi2(&self) -> &RationalFn {
        &self.psi2
    }

    pub fn theta1(&self) -> &RationalFn {
        &self.theta1
    }

    pub fn theta2(&self) -> &RationalFn {
        &self.theta2
    }

    pub fn bundle(&self, verified: bool) -> ResultBundle {
        ResultBundle {
            w: self.w.clone(),
            c: self.c.clone(),
            u: self.u.clone(),
            psi1: self.psi1.clone(),
            psi2: self.psi2.clone(),
            verified,
        }
    }
}

/// JSON shape of a construction result.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultBundle {
    #[serde(rename = "W")]
    pub w: BivariatePoly,
    #[serde(rename = "C", with = "rational_serde")]
    pub c: BigRational,
    pub u: RationalFn,
    pub psi1: RationalFn,
    pub psi2: RationalFn,
    pub verified: bool,
}

/// `F` with `ω1·θ1 = F + C`: the quadrature of the Moutard image of `ω2` under `ω1`.
pub fn seed_antiderivative(seeds: &SeedPair) -> Result<BivariatePoly> {
    let family = moutard_solution(&seeds.u0, &seeds.omega1, &seeds.omega2)?;
    Ok(family.antiderivative().clone())
}

/// Builds every object of the construction from `F` and `C` without verifying.
pub fn assemble(seeds: &SeedPair, f: &BivariatePoly, c: &BigRational) -> Result<DoubleMoutardResult> {
    let mut w = f.clone();
    w.add_term(Monomial::ONE, c.clone());
    if w.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = log_laplacian_form(&seeds.u0, &w)?;
    let psi1 = RationalFn::new(seeds.omega1.clone(), w.clone())?;
    let psi2 = RationalFn::new(-&seeds.omega2, w.clone())?;
    let theta1 = RationalFn::new(w.clone(), seeds.omega1.clone())?;
    let theta2 = RationalFn::new(-&w, seeds.omega2.clone())?;
    Ok(DoubleMoutardResult {
        w,
        c: c.clone(),
        u,
        psi1,
        psi2,
        theta1,
        theta2,
    })
}

/// Runs the construction for a fixed `C` and re-verifies `(−Δ + u)ψ_k = 0` symbolically.
pub fn double_transform(seeds: &SeedPair, c: &BigRational) -> Result<DoubleMoutardResult> {
    let f = seed_antiderivative(seeds)?;
    let result = assemble(seeds, &f, c)?;
    if !verify_solution(&result.u, &result.psi1) {
        return Err(Error::InvariantViolated("(−Δ+u)ψ1 ≠ 0".into()));
    }
    if !verify_solution(&result.u, &result.psi2) {
        return Err(Error::InvariantViolated("(−Δ+u)ψ2 ≠ 0".into()));
    }
    Ok(result)
}

/// Checks the commuting-square identity through both intermediate potentials:
/// `M_{θ1}(u1) = M_{θ2}(u2) = u0 − 2Δ log W`, and that `1/θ1`, `1/θ2` solve `Lψ = 0`.
pub fn verify_lemma(seeds: &SeedPair, c: &BigRational) -> Result<bool> {
    let f = seed_antiderivative(seeds)?;
    let r = assemble(seeds, &f, c)?;

    // ω2θ2 = −ω1θ1 cleared of denominators
    if &(seeds.omega2() * r.theta2.num()) * r.theta1.den()
        != -&(&(seeds.omega1() * r.theta1.num()) * r.theta2.den())
    {
        return Ok(false);
    }

    let u1 = seeds.u1()?;
    let u2 = seeds.u2()?;
    let branch1 = match moutard_potential_rational(&u1, &r.theta1) {
        Ok(p) => p,
        Err(Error::SeedNotInKernel) => return Ok(false),
        Err(e) => return Err(e),
    };
    let branch2 = match moutard_potential_rational(&u2, &r.theta2) {
        Ok(p) => p,
        Err(Error::SeedNotInKernel) => return Ok(false),
        Err(e) => return Err(e),
    };
    if !branch1.rf_equal(&r.u) || !branch2.rf_equal(&r.u) {
        return Ok(false);
    }
    Ok(verify_solution(&r.u, &r.theta1.recip()?) && verify_solution(&r.u, &r.theta2.recip()?))
}

/// The unique `(λ, C)` with `λ·F + C = target`.
pub fn calibrate_against(
    f: &BivariatePoly,
    target: &BivariatePoly,
) -> Result<(BigRational, BigRational)> {
    if f.is_constant() {
        return Err(Error::InvalidArgument("F must be nonconstant".into()));
    }
    let (m, fm) = f.leading_term().expect("nonconstant");
    let lambda = target.coeff(m.x, m.y) / fm;
    let c = target.constant_term() - &lambda * f.constant_term();
    let mut candidate = f.scale(&lambda);
    candidate.add_term(Monomial::ONE, c.clone() - candidate.constant_term());
    if &candidate != target {
        return Err(Error::NoAffineMatch);
    }
    Ok((lambda, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, poly, rat};

    const OMEGA1: &str = "x + 2*(x^2 - y^2) + x*y";
    const OMEGA2: &str = "x + y + 3/2*(x^2 - y^2) + 5*x*y";
    const W_REFERENCE: &str =
        "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2";

    fn example1() -> SeedPair {
        SeedPair::harmonic(poly(OMEGA1), poly(OMEGA2)).unwrap()
    }

    #[test]
    fn seed_pair_validation() {
        assert_eq!(
            SeedPair::harmonic(poly(OMEGA1), poly(OMEGA1).scale(&int(2))).unwrap_err(),
            Error::ProportionalSeeds
        );
        assert_eq!(
            SeedPair::harmonic(poly("x^2"), poly("y")).unwrap_err(),
            Error::SeedNotInKernel
        );
        assert_eq!(
            SeedPair::harmonic(BivariatePoly::zero(), poly("y")).unwrap_err(),
            Error::ZeroSeed
        );
    }

    #[test]
    fn calibration_examples() {
        let f0 = poly("x^2 - 3*x*y + y");
        assert_eq!(
            calibrate_against(&f0.scale(&int(2)), &(f0.clone() + poly("5"))).unwrap(),
            (rat(1, 2), int(5))
        );
        assert_eq!(
            calibrate_against(&poly("x"), &poly("y")).unwrap_err(),
            Error::NoAffineMatch
        );
        let f = seed_antiderivative(&example1()).unwrap();
        let (lambda, c) = calibrate_against(&f, &poly(W_REFERENCE)).unwrap();
        assert_eq!((lambda.clone(), c.clone()), (int(-8), int(160)));
        let w = f.scale(&lambda) + BivariatePoly::constant(c);
        assert_eq!(w.evaluate(&int(0), &int(0)), int(160));
    }

    #[test]
    fn example_one_reproduces_reference_formulas() {
        let seeds = example1();
        // C* / λ = 160 / (−8)
        let r = double_transform(&seeds, &int(-20)).unwrap();
        let wp = poly(W_REFERENCE);
        let u_pub = RationalFn::new(
            poly("-5120*(1 + 8*x + 2*y + 17*x^2 + 17*y^2)"),
            wp.pow(2),
        )
        .unwrap();
        assert!(r.u().rf_equal(&u_pub));
        let psi1_pub = RationalFn::new(poly("x + 2*x^2 + x*y - 2*y^2"), wp.clone()).unwrap();
        let psi2_pub =
            RationalFn::new(poly("2*x + 2*y + 3*x^2 + 10*x*y - 3*y^2"), wp.clone()).unwrap();
        assert_eq!(r.psi1().ratio_to(&psi1_pub), Some(int(-8)));
        assert_eq!(r.psi2().ratio_to(&psi2_pub), Some(int(4)));
        assert!(verify_lemma(&seeds, &int(-20)).unwrap());
    }

    #[test]
    fn invariants_hold_when_w_has_real_zeros() {
        let seeds = SeedPair::harmonic(poly("x"), poly("y")).unwrap();
        let r = double_transform(&seeds, &int(1)).unwrap();
        assert_eq!(r.w(), &poly("1 - (x^2 + y^2)/2"));
        assert!(verify_solution(r.u(), r.psi1()));
        assert!(verify_solution(r.u(), r.psi2()));
        assert!(r.theta2().rf_equal(&r.theta1().mul(&RationalFn::new(poly("-x"), poly("y")).unwrap())));
        assert!(verify_lemma(&seeds, &int(1)).unwrap());
    }

    #[test]
    fn scaling_w_leaves_u_unchanged() {
        let seeds = example1();
        let f = seed_antiderivative(&seeds).unwrap();
        let a = assemble(&seeds, &f, &int(-20)).unwrap();
        let b = assemble(&seeds, &f.scale(&int(-8)), &int(160)).unwrap();
        assert!(a.u().rf_equal(b.u()));
        assert_eq!(a.psi1().ratio_to(b.psi1()), Some(int(-8)));
    }

    #[test]
    fn nonzero_background_potential() {
        // x² and x²y both solve (−Δ + 2/x²)ψ = 0
        let u0 = RationalFn::new(poly("2"), poly("x^2")).unwrap();
        let w1 = poly("x^2");
        let w2 = poly("x^2*y");
        let seeds = SeedPair::new(u0, w1, w2).unwrap();
        let r = double_transform(&seeds, &int(3)).unwrap();
        assert!(verify_solution(r.u(), r.psi1()));
        assert!(verify_lemma(&seeds, &int(3)).unwrap());
    }

    #[test]
    fn bundle_json_round_trip() {
        let r = double_transform(&example1(), &int(-20)).unwrap();
        let s = serde_json::to_string(&r.bundle(true)).unwrap();
        assert!(s.starts_with(r#"{"W":{"vars":["x","y"]"#));
        let back: ResultBundle = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        let seeds_json = serde_json::to_string(&example1()).unwrap();
        let seeds: SeedPair = serde_json::from_str(&seeds_json).unwrap();
        assert_eq!(seeds.omega2(), &poly(OMEGA2));
    }
}
