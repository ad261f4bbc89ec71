//! The one-dimensional reduction: Darboux transformations of `−d²/dx² + u + k²` and the
//! chain of rational potentials `n(n+1)/x²` they generate from `u = 0`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{int, rational_serde, Poly1D, RationalFn, RationalFn1D};

/// A potential `u` and a seed `f` with `(−d²/dx² + u + k²) f = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DarbouxStep {
    u: RationalFn1D,
    f: RationalFn1D,
    #[serde(with = "rational_serde")]
    k: BigRational,
}

/// `(−d²/dx² + u + k²) g`.
pub fn apply_operator(u: &RationalFn1D, k: &BigRational, g: &RationalFn1D) -> RationalFn1D {
    let shifted = u.add(&RationalFn1D::from_poly(Poly1D::constant(k * k)));
    shifted.mul(g).sub(&g.derivative().derivative())
}

impl DarbouxStep {
    pub fn new(u: RationalFn1D, f: RationalFn1D, k: BigRational) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroSeed);
        }
        if !apply_operator(&u, &k, &f).is_zero() {
            return Err(Error::SeedNotInKernel);
        }
        Ok(DarbouxStep { u, f, k })
    }

    pub fn u(&self) -> &RationalFn1D {
        &self.u
    }

    pub fn f(&self) -> &RationalFn1D {
        &self.f
    }

    pub fn k(&self) -> &BigRational {
        &self.k
    }

    /// `f′/f`, the coefficient in `A = −d/dx + f′/f`.
    pub fn log_derivative(&self) -> RationalFn1D {
        self.f
            .derivative()
            .div(&self.f)
            .expect("seed is nonzero by construction")
    }
}

impl<'de> Deserialize<'de> for DarbouxStep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            u: RationalFn1D,
            f: RationalFn1D,
            #[serde(with = "rational_serde")]
            k: BigRational,
        }
        let r = Raw::deserialize(d)?;
        DarbouxStep::new(r.u, r.f, r.k).map_err(D::Error::custom)
    }
}

/// `ũ = u − 2 (log f)″`.
pub fn darboux_step(step: &DarbouxStep) -> RationalFn1D {
    step.u.sub(&step.log_derivative().derivative().scale(&int(2)))
}

/// `A g = −g′ + (f′/f) g`, which solves the transformed equation whenever `g` solves the
/// original one.
pub fn transform_solution(step: &DarbouxStep, g: &RationalFn1D) -> Result<RationalFn1D> {
    if !apply_operator(&step.u, &step.k, g).is_zero() {
        return Err(Error::SeedNotInKernel);
    }
    Ok(step.log_derivative().mul(g).sub(&g.derivative()))
}

/// The first `n` potentials of the chain from `u₀ = 0`, using the seed `x^(i+1)` at
/// level `i`.
pub fn rational_chain(n: usize) -> Result<Vec<RationalFn1D>> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain length must be at least 1".into()));
    }
    let mut u = RationalFn1D::zero();
    let mut out = Vec::with_capacity(n);
    for level in 0..n {
        let seed = RationalFn1D::from_poly(Poly1D::monomial(int(1), level + 1));
        let step = DarbouxStep::new(u, seed, BigRational::zero())?;
        u = darboux_step(&step);
        out.push(u.clone());
    }
    Ok(out)
}

/// `n(n+1)/x²`.
pub fn chain_closed_form(n: usize) -> RationalFn1D {
    let c = int((n * (n + 1)) as i64);
    RationalFn1D::new(Poly1D::constant(c), Poly1D::monomial(int(1), 2))
        .expect("x² is nonzero")
}

/// The same function viewed as a `y`-independent function of two variables.
pub fn to_bivariate(f: &RationalFn1D) -> RationalFn {
    RationalFn::new(f.num().to_bivariate_in_x(), f.den().to_bivariate_in_x())
        .expect("denominator is nonzero")
}
