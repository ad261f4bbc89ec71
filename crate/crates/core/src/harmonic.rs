//! Harmonic polynomial seeds spanned by `Re zⁿ` and `Im zⁿ`, `z = x + iy`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{int, BivariatePoly, RationalJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Re,
    Im,
}

/// `(Re zⁿ, Im zⁿ)`, built by the recurrence
/// `Re z^{k+1} = x·Re z^k − y·Im z^k`, `Im z^{k+1} = x·Im z^k + y·Re z^k`.
pub fn harmonic_basis(n: u32) -> Result<(BivariatePoly, BivariatePoly)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "harmonic basis degree must be at least 1".into(),
        ));
    }
    let (x, y) = (BivariatePoly::x(), BivariatePoly::y());
    let (mut re, mut im) = (x.clone(), y.clone());
    for _ in 1..n {
        let next_re = &(&x * &re) - &(&y * &im);
        let next_im = &(&x * &im) + &(&y * &re);
        re = next_re;
        im = next_im;
    }
    Ok((re, im))
}

pub fn is_harmonic(p: &BivariatePoly) -> bool {
    p.laplacian().is_zero()
}

/// A rational combination `c₀ + Σ a_n Re zⁿ + b_n Im zⁿ` and its expansion.
///
/// The constant `c₀` is stored under `(0, Re)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicCombo {
    coefficients: BTreeMap<(u32, Part), BigRational>,
    realized: BivariatePoly,
}

impl HarmonicCombo {
    pub fn new(coefficients: BTreeMap<(u32, Part), BigRational>) -> Result<Self> {
        let mut realized = BivariatePoly::zero();
        let mut kept = BTreeMap::new();
        for ((n, part), c) in coefficients {
            if c.is_zero() {
                continue;
            }
            let term = match (n, part) {
                (0, Part::Re) => BivariatePoly::one(),
                (0, Part::Im) => {
                    return Err(Error::InvalidArgument("Im z^0 is identically zero".into()))
                }
                (n, Part::Re) => harmonic_basis(n)?.0,
                (n, Part::Im) => harmonic_basis(n)?.1,
            };
            realized += &term.scale(&c);
            kept.insert((n, part), c);
        }
        debug_assert!(is_harmonic(&realized));
        Ok(HarmonicCombo {
            coefficients: kept,
            realized,
        })
    }

    pub fn coefficients(&self) -> &BTreeMap<(u32, Part), BigRational> {
        &self.coefficients
    }

    pub fn realized(&self) -> &BivariatePoly {
        &self.realized
    }

    pub fn into_realized(self) -> BivariatePoly {
        self.realized
    }
}

/// Options for [`random_combo_with`].
#[derive(Debug, Clone, Copy)]
pub struct ComboOptions {
    pub include_constant: bool,
}

impl Default for ComboOptions {
    fn default() -> Self {
        ComboOptions {
            include_constant: false,
        }
    }
}

/// Random integer combination of `Re zⁿ, Im zⁿ` for `1 ≤ n ≤ max_degree`, coefficients in
/// `[−bound, bound]`. The top degree always carries a nonzero coefficient, so the
/// realized polynomial has degree exactly `max_degree`.
pub fn random_combo(max_degree: u32, rng_seed: u64, coefficient_bound: u32) -> Result<HarmonicCombo> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    random_combo_with(&mut rng, max_degree, coefficient_bound, ComboOptions::default())
}

pub fn random_combo_with<R: Rng>(
    rng: &mut R,
    max_degree: u32,
    coefficient_bound: u32,
    options: ComboOptions,
) -> Result<HarmonicCombo> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    if coefficient_bound == 0 {
        return Err(Error::InvalidArgument(
            "coefficient_bound must be at least 1".into(),
        ));
    }
    let b = coefficient_bound as i64;
    let mut coefficients = BTreeMap::new();
    if options.include_constant {
        coefficients.insert((0, Part::Re), int(rng.gen_range(-b..=b)));
    }
    for n in 1..=max_degree {
        loop {
            let re = rng.gen_range(-b..=b);
            let im = rng.gen_range(-b..=b);
            if n < max_degree || re != 0 || im != 0 {
                coefficients.insert((n, Part::Re), int(re));
                coefficients.insert((n, Part::Im), int(im));
                break;
            }
        }
    }
    HarmonicCombo::new(coefficients)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComboTermJson {
    n: u32,
    part: Part,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComboJson {
    terms: Vec<ComboTermJson>,
}

impl Serialize for HarmonicCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComboJson {
            terms: self
                .coefficients
                .iter()
                .map(|((n, part), c)| {
                    let r = RationalJson::from(c);
                    ComboTermJson {
                        n: *n,
                        part: *part,
                        num: r.num,
                        den: r.den,
                    }
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HarmonicCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ComboJson::deserialize(d)?;
        let mut coefficients = BTreeMap::new();
        for t in j.terms {
            let c = crate::polyalg::from_parts(&t.num, &t.den).map_err(D::Error::custom)?;
            if coefficients.insert((t.n, t.part), c).is_some() {
                return Err(D::Error::custom(format!("duplicate term n={}", t.n)));
            }
        }
        HarmonicCombo::new(coefficients).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly;
    use proptest::prelude::*;

    #[test]
    fn low_degree_basis() {
        assert_eq!(harmonic_basis(1).unwrap(), (poly("x"), poly("y")));
        assert_eq!(harmonic_basis(2).unwrap(), (poly("x^2 - y^2"), poly("2*x*y")));
        let (re3, im3) = harmonic_basis(3).unwrap();
        assert_eq!(re3, poly("x^3 - 3*x*y^2"));
        assert_eq!(im3, poly("3*x^2*y - y^3"));
        let omega2 = poly("x + y + (x^2 - y^2)/2 - x*y/5 - 4*(3*x^2*y - y^3)");
        assert_eq!(omega2.homogeneous_part(3), im3.scale(&int(-4)));
        assert!(harmonic_basis(0).is_err());
    }

    #[test]
    fn harmonicity_checks() {
        assert!(is_harmonic(&poly("x + 2*(x^2 - y^2) + x*y")));
        assert!(!is_harmonic(&poly("x^2")));
        assert!(is_harmonic(&BivariatePoly::zero()));
    }

    #[test]
    fn random_combo_shape() {
        let c = random_combo(2, 11, 5).unwrap();
        assert!(is_harmonic(c.realized()));
        assert_eq!(c.realized().degree().finite(), Some(2));
        for ((n, _), v) in c.coefficients() {
            assert!((1..=2).contains(n));
            assert!(*v >= int(-5) && *v <= int(5));
        }
        assert_eq!(random_combo(2, 11, 5).unwrap(), c);
        assert!(random_combo(0, 1, 5).is_err());
    }

    #[test]
    fn constant_option() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let with = random_combo_with(&mut rng, 2, 3, ComboOptions { include_constant: true }).unwrap();
        assert!(with.coefficients().keys().all(|(n, p)| *n > 0 || *p == Part::Re));
        assert!(is_harmonic(with.realized()));
    }

    #[test]
    fn combo_json_round_trip() {
        let c = random_combo(3, 5, 10).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"terms":[{"n":1,"part":"re""#));
        let back: HarmonicCombo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    proptest! {
        #[test]
        fn basis_elements_are_harmonic_and_homogeneous(n in 1u32..9) {
            let (re, im) = harmonic_basis(n).unwrap();
            prop_assert!(is_harmonic(&re) && is_harmonic(&im));
            prop_assert!(re.is_homogeneous() && im.is_homogeneous());
            prop_assert_eq!(re.degree().finite(), Some(n));
        }

        #[test]
        fn random_combos_are_harmonic(deg in 1u32..6, seed in any::<u64>(), bound in 1u32..20) {
            let c = random_combo(deg, seed, bound).unwrap();
            prop_assert!(is_harmonic(c.realized()));
        }
    }
}
