//! JSON wire formats.
//!
//! ```text
//! poly:       {"vars":["x","y"],"terms":[{"i":1,"j":0,"num":"3","den":"2"}, ...]}
//! rationalfn: {"num":poly,"den":poly}
//! rational:   {"num":"-20","den":"1"}
//! poly1d:     {"vars":["x"],"terms":[{"i":2,"num":"1","den":"1"}, ...]}
//! ```
//!
//! Terms are written in canonical graded-lex order with reduced coefficients, so
//! serialize → parse → serialize is byte-identical.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{BivariatePoly, Monomial};
use super::ratfn::RationalFn;
use super::rational::from_parts;
use super::univariate::{Poly1D, RationalFn1D};
use crate::error::Error;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl TryFrom<RationalJson> for BigRational {
    type Error = Error;
    fn try_from(r: RationalJson) -> Result<Self, Error> {
        from_parts(&r.num, &r.den)
    }
}

/// `#[serde(with = "rational")]` adapter for `BigRational` fields.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let r = RationalJson::deserialize(d)?;
        BigRational::try_from(r).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rational`] for `Option<BigRational>`.
pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(RationalJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<RationalJson>::deserialize(d)?
            .map(BigRational::try_from)
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub i: u32,
    pub j: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl From<BivariatePoly> for PolyJson {
    fn from(p: BivariatePoly) -> Self {
        PolyJson::from(&p)
    }
}

impl From<&BivariatePoly> for PolyJson {
    fn from(p: &BivariatePoly) -> Self {
        PolyJson {
            vars: vec!["x".into(), "y".into()],
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    i: m.x,
                    j: m.y,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for BivariatePoly {
    type Error = Error;
    fn try_from(pj: PolyJson) -> Result<Self, Error> {
        if pj.vars != ["x", "y"] {
            return Err(Error::Parse(format!(
                "expected vars [\"x\",\"y\"], got {:?}",
                pj.vars
            )));
        }
        let mut seen = BTreeSet::new();
        let mut p = BivariatePoly::zero();
        for t in pj.terms {
            if !seen.insert((t.i, t.j)) {
                return Err(Error::Parse(format!("duplicate term x^{} y^{}", t.i, t.j)));
            }
            p.add_term(Monomial::new(t.i, t.j), from_parts(&t.num, &t.den)?);
        }
        Ok(p)
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pj = PolyJson::deserialize(d)?;
        BivariatePoly::try_from(pj).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFnJson {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl Serialize for RationalFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalFnJson {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RationalFnJson::deserialize(d)?;
        RationalFn::new(j.num, j.den).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term1DJson {
    i: u32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Poly1DJson {
    vars: Vec<String>,
    terms: Vec<Term1DJson>,
}

impl Serialize for Poly1D {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Poly1DJson {
            vars: vec!["x".into()],
            terms: self
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(k, c)| Term1DJson {
                    i: k as u32,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly1D {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = Poly1DJson::deserialize(d)?;
        if j.vars != ["x"] {
            return Err(D::Error::custom("expected vars [\"x\"]"));
        }
        let mut seen = BTreeSet::new();
        let mut p = BivariatePoly::zero();
        for t in j.terms {
            if !seen.insert(t.i) {
                return Err(D::Error::custom(format!("duplicate term x^{}", t.i)));
            }
            let c = from_parts(&t.num, &t.den).map_err(D::Error::custom)?;
            p.add_term(Monomial::new(t.i, 0), c);
        }
        Poly1D::from_bivariate_in_x(&p).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFn1DJson {
    num: Poly1D,
    den: Poly1D,
}

impl Serialize for RationalFn1D {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalFn1DJson {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFn1D {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RationalFn1DJson::deserialize(d)?;
        RationalFn1D::new(j.num, j.den).map_err(serde::de::Error::custom)
    }
}
