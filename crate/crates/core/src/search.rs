//! Seed sweeps, the smallest admissible constant `C`, and the two worked examples.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    certify_sign_definite, decay_exponent, global_positivity, leading_form_positive,
    BranchAndBound, DecayReport, Positivity, PositivityCertificate, Sign,
};
use crate::construct::{
    calibrate_against, double_transform, seed_antiderivative, ResultBundle, SeedPair,
};
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicCombo, Part};
use crate::moutard::verify_solution;
use crate::polyalg::{int, opt_rational_serde, poly, pow2, rational_serde, BivariatePoly, RationalFn};

/// Smallest offset tried below the value at the origin.
pub const DEFAULT_FLOOR_EXPONENT: i32 = -16;
/// Largest offset tried, as a power of two.
pub const DEFAULT_CAP_EXPONENT: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PositivityStatus {
    Certified,
    Refuted,
    Inconclusive,
}

/// How a sweep draws its seed pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedFamily {
    /// `ω1 = Re f`, `ω2 = Re(κf)` for a random polynomial `f` in `z` and a non-real `κ`.
    Conjugate,
    /// `ω1`, `ω2` drawn independently.
    Independent,
    /// Alternates the two by trial index, starting with `Conjugate`.
    Mixed,
}

/// Settings for [`sweep_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub family: SeedFamily,
    pub coefficient_bound: u32,
    pub limits: BranchAndBound,
    pub floor_exponent: i32,
    pub cap_exponent: i32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            family: SeedFamily::Mixed,
            coefficient_bound: 5,
            limits: BranchAndBound::default(),
            floor_exponent: DEFAULT_FLOOR_EXPONENT,
            cap_exponent: DEFAULT_CAP_EXPONENT,
        }
    }
}

/// One analysed seed pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRecord {
    pub trial: u64,
    pub family: SeedFamily,
    pub seeds: SeedPairRecord,
    #[serde(rename = "C", with = "opt_rational_serde")]
    pub c: Option<BigRational>,
    pub u_decay: Option<i64>,
    pub psi_decay: Option<i64>,
    pub positivity: PositivityStatus,
    #[serde(rename = "W_degree")]
    pub w_degree: Option<u32>,
    /// Both decay reports carry `bound_valid`.
    pub valid: bool,
    pub error: Option<String>,
}

/// The seeds as stored in a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedPairRecord {
    pub omega1: BivariatePoly,
    pub omega2: BivariatePoly,
}

impl From<&SeedPair> for SeedPairRecord {
    fn from(s: &SeedPair) -> Self {
        SeedPairRecord {
            omega1: s.omega1().clone(),
            omega2: s.omega2().clone(),
        }
    }
}

impl SearchRecord {
    pub fn is_certified(&self) -> bool {
        self.positivity == PositivityStatus::Certified && self.valid
    }
}

/// A constant `C` with `F + C > 0` certified, and the certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleConstant {
    pub c: BigRational,
    pub certificate: PositivityCertificate,
}

fn shifted(f: &BivariatePoly, c: &BigRational) -> BivariatePoly {
    f + &BivariatePoly::constant(c.clone())
}

/// A constant `C` for which `F + C > 0` is certified, within a factor 2 of the least
/// such value among `C = −F(0,0) + 2^k`.
///
/// Any admissible `C` exceeds `−F(0,0)`, so the search runs over the offset `δ = 2^k`
/// above it. If `δ = 1` certifies, the exponent is bisected down towards
/// `floor_exponent`; otherwise `δ` doubles up to `2^cap_exponent`.
pub fn min_positive_constant(f: &BivariatePoly) -> Result<AdmissibleConstant> {
    min_positive_constant_with(
        f,
        BranchAndBound::default(),
        DEFAULT_FLOOR_EXPONENT,
        DEFAULT_CAP_EXPONENT,
    )
}

pub fn min_positive_constant_with(
    f: &BivariatePoly,
    limits: BranchAndBound,
    floor_exponent: i32,
    cap_exponent: i32,
) -> Result<AdmissibleConstant> {
    if f.is_constant() {
        return Err(Error::InvalidArgument("F must be nonconstant".into()));
    }
    let lead = f.leading_form()?;
    match leading_form_positive(&lead) {
        Ok(Some(_)) => {}
        Ok(None) | Err(Error::OddDegree(_)) => return Err(Error::NonPositiveLeadingForm),
        Err(e) => return Err(e),
    }
    let base = -f.constant_term();
    let attempt = |k: i32| -> Result<Option<AdmissibleConstant>> {
        let c = &base + pow2(k);
        match global_positivity(&shifted(f, &c), limits)? {
            Positivity::Certified(certificate) => Ok(Some(AdmissibleConstant { c, certificate })),
            Positivity::Refuted { .. } => Ok(None),
        }
    };

    let mut k = 0;
    match attempt(0) {
        Ok(Some(mut best)) => {
            // bisect on the exponent between a failing `lo` and the certified `k`
            let mut lo = floor_exponent;
            if lo >= k {
                return Ok(best);
            }
            match attempt(lo) {
                Ok(Some(found)) => return Ok(found),
                Ok(None) | Err(Error::Inconclusive { .. }) => {}
                Err(e) => return Err(e),
            }
            while k - lo > 1 {
                let mid = lo + (k - lo) / 2;
                match attempt(mid) {
                    Ok(Some(next)) => {
                        best = next;
                        k = mid;
                    }
                    Ok(None) | Err(Error::Inconclusive { .. }) => lo = mid,
                    Err(e) => return Err(e),
                }
            }
            Ok(best)
        }
        Ok(None) | Err(Error::Inconclusive { .. }) => {
            let mut inconclusive = false;
            while k < cap_exponent {
                k += 1;
                match attempt(k) {
                    Ok(Some(found)) => return Ok(found),
                    Ok(None) => {}
                    Err(Error::Inconclusive { .. }) => inconclusive = true,
                    Err(e) => return Err(e),
                }
            }
            if inconclusive {
                Err(Error::Inconclusive {
                    max_depth: limits.max_depth,
                })
            } else {
                Err(Error::InvariantViolated(format!(
                    "no certifiable constant up to 2^{cap_exponent}"
                )))
            }
        }
        Err(e) => Err(e),
    }
}

fn trial_rng(rng_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(trial);
    rng
}

/// `Re(c·zᵏ)` coefficients for a Gaussian integer `c = a + ib`.
fn insert_gaussian(map: &mut BTreeMap<(u32, Part), BigRational>, k: u32, a: i64, b: i64) {
    map.insert((k, Part::Re), int(a));
    map.insert((k, Part::Im), int(-b));
}

/// Draws a seed pair of exact degree `degree` from `family`.
pub fn random_seed_pair<R: Rng>(
    rng: &mut R,
    degree: u32,
    family: SeedFamily,
    coefficient_bound: u32,
) -> Result<SeedPair> {
    if degree == 0 || coefficient_bound == 0 {
        return Err(Error::InvalidArgument("degree and bound must be positive".into()));
    }
    let b = coefficient_bound as i64;
    loop {
        let pair = match family {
            SeedFamily::Independent | SeedFamily::Mixed => {
                let mut cfg = crate::harmonic::ComboOptions::default();
                cfg.include_constant = false;
                let w1 = crate::harmonic::random_combo_with(rng, degree, coefficient_bound, cfg)?;
                let w2 = crate::harmonic::random_combo_with(rng, degree, coefficient_bound, cfg)?;
                SeedPair::harmonic(w1.into_realized(), w2.into_realized())
            }
            SeedFamily::Conjugate => {
                let (p, q) = loop {
                    let p = rng.gen_range(-3i64..=3);
                    let q = rng.gen_range(-3i64..=3);
                    if q != 0 {
                        break (p, q);
                    }
                };
                let mut f1 = BTreeMap::new();
                let mut f2 = BTreeMap::new();
                for k in 1..=degree {
                    let (a, c) = loop {
                        let a = rng.gen_range(-b..=b);
                        let c = rng.gen_range(-b..=b);
                        if k < degree || a != 0 || c != 0 {
                            break (a, c);
                        }
                    };
                    insert_gaussian(&mut f1, k, a, c);
                    insert_gaussian(&mut f2, k, p * a - q * c, p * c + q * a);
                }
                SeedPair::harmonic(
                    HarmonicCombo::new(f1)?.into_realized(),
                    HarmonicCombo::new(f2)?.into_realized(),
                )
            }
        };
        match pair {
            Ok(p) => return Ok(p),
            Err(Error::ProportionalSeeds) | Err(Error::ZeroSeed) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Classifies a homogeneous form that is neither positive nor negative definite.
fn indefinite_status(lead: &BivariatePoly) -> PositivityStatus {
    let mut pos = false;
    let mut neg = false;
    let mut probe = |x: BigRational, y: BigRational| {
        let v = lead.evaluate(&x, &y);
        pos |= v.is_positive();
        neg |= v.is_negative();
    };
    probe(int(0), int(1));
    for n in -64..=64 {
        probe(int(1), crate::polyalg::rat(n, 8));
    }
    if pos && neg {
        PositivityStatus::Refuted
    } else {
        PositivityStatus::Inconclusive
    }
}

fn failed_record(trial: u64, family: SeedFamily, seeds: &SeedPair, status: PositivityStatus, w_degree: Option<u32>, error: Option<String>) -> SearchRecord {
    SearchRecord {
        trial,
        family,
        seeds: seeds.into(),
        c: None,
        u_decay: None,
        psi_decay: None,
        positivity: status,
        w_degree,
        valid: false,
        error,
    }
}

/// Runs the construction on one pair: orients `F`, finds `C`, transforms and analyses.
pub fn analyse_pair(trial: u64, family: SeedFamily, seeds: &SeedPair, config: &SweepConfig) -> SearchRecord {
    let f = match seed_antiderivative(seeds) {
        Ok(f) => f,
        Err(e) => return failed_record(trial, family, seeds, PositivityStatus::Inconclusive, None, Some(e.to_string())),
    };
    let w_degree = f.degree().finite();
    let lead = match f.leading_form() {
        Ok(l) => l,
        Err(e) => return failed_record(trial, family, seeds, PositivityStatus::Refuted, w_degree, Some(e.to_string())),
    };
    let definite = |p: &BivariatePoly| matches!(leading_form_positive(p), Ok(Some(_)));
    let (seeds, f) = if definite(&lead) {
        (seeds.clone(), f)
    } else if definite(&-&lead) {
        (seeds.with_negated_omega2(), -&f)
    } else {
        let status = if w_degree.map_or(false, |d| d % 2 == 1) {
            PositivityStatus::Refuted
        } else {
            indefinite_status(&lead)
        };
        return failed_record(trial, family, seeds, status, w_degree, None);
    };
    let admissible = match min_positive_constant_with(&f, config.limits, config.floor_exponent, config.cap_exponent) {
        Ok(a) => a,
        Err(Error::Inconclusive { .. }) => {
            return failed_record(trial, family, &seeds, PositivityStatus::Inconclusive, w_degree, None)
        }
        Err(e) => return failed_record(trial, family, &seeds, PositivityStatus::Inconclusive, w_degree, Some(e.to_string())),
    };
    let result = match double_transform(&seeds, &admissible.c) {
        Ok(r) => r,
        Err(e) => return failed_record(trial, family, &seeds, PositivityStatus::Certified, w_degree, Some(e.to_string())),
    };
    let reports = (
        decay_exponent(result.u()),
        decay_exponent(result.psi1()),
        decay_exponent(result.psi2()),
    );
    let (u_rep, p1, p2) = match reports {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => {
            return failed_record(trial, family, &seeds, PositivityStatus::Certified, w_degree, Some("undefined decay".into()))
        }
    };
    SearchRecord {
        trial,
        family,
        seeds: (&seeds).into(),
        c: Some(admissible.c),
        u_decay: Some(u_rep.exponent),
        psi_decay: Some(p1.exponent.min(p2.exponent)),
        positivity: PositivityStatus::Certified,
        w_degree,
        valid: u_rep.bound_valid && p1.bound_valid && p2.bound_valid,
        error: None,
    }
}

/// `trials` random pairs of the given degree, sorted by `u_decay` descending, then
/// `W_degree` ascending, then trial index.
pub fn sweep(degree: u32, rng_seed: u64, trials: u64) -> Result<Vec<SearchRecord>> {
    sweep_with(degree, rng_seed, trials, &SweepConfig::default())
}

pub fn sweep_with(degree: u32, rng_seed: u64, trials: u64, config: &SweepConfig) -> Result<Vec<SearchRecord>> {
    if degree < 2 {
        return Err(Error::InvalidArgument("sweep degree must be at least 2".into()));
    }
    let mut records: Vec<SearchRecord> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let family = match config.family {
                SeedFamily::Mixed if trial % 2 == 0 => SeedFamily::Conjugate,
                SeedFamily::Mixed => SeedFamily::Independent,
                other => other,
            };
            let mut rng = trial_rng(rng_seed, trial);
            match random_seed_pair(&mut rng, degree, family, config.coefficient_bound) {
                Ok(seeds) => analyse_pair(trial, family, &seeds, config),
                Err(e) => SearchRecord {
                    trial,
                    family,
                    seeds: SeedPairRecord {
                        omega1: BivariatePoly::zero(),
                        omega2: BivariatePoly::zero(),
                    },
                    c: None,
                    u_decay: None,
                    psi_decay: None,
                    positivity: PositivityStatus::Inconclusive,
                    w_degree: None,
                    valid: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    records.sort_by(|a, b| {
        let key = |r: &SearchRecord| (std::cmp::Reverse(r.u_decay.map_or(i64::MIN, |d| d)), r.w_degree.unwrap_or(u32::MAX), r.trial);
        key(a).cmp(&key(b))
    });
    Ok(records)
}

/// One JSON object per line.
pub fn to_json_lines(records: &[SearchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn from_json_lines(s: &str) -> Result<Vec<SearchRecord>> {
    s.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

pub const EXAMPLE1_OMEGA1: &str = "x + 2*(x^2 - y^2) + x*y";
pub const EXAMPLE1_OMEGA2: &str = "x + y + 3/2*(x^2 - y^2) + 5*x*y";
pub const EXAMPLE1_W: &str =
    "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2 + y^2)^2";
pub const EXAMPLE1_U_NUM: &str = "-5120*(1 + 8*x + 2*y + 17*x^2 + 17*y^2)";
pub const EXAMPLE1_PSI1_NUM: &str = "x + 2*x^2 + x*y - 2*y^2";
pub const EXAMPLE1_PSI2_NUM: &str = "2*x + 2*y + 3*x^2 + 10*x*y - 3*y^2";
pub const EXAMPLE2_OMEGA1: &str = "x + (x^2 - y^2 - 3*x*y)/5 + 2*(-x^3 - 3*x^2*y + 3*x*y^2 + y^3)";
pub const EXAMPLE2_OMEGA2: &str = "x + y + (x^2 - y^2)/2 - x*y/5 - 4*(3*x^2*y - y^3)";

/// The reference potential of the first example.
pub fn example1_potential() -> RationalFn {
    RationalFn::new(poly(EXAMPLE1_U_NUM), poly(EXAMPLE1_W).pow(2)).expect("nonzero")
}

/// The reference eigenfunctions of the first example.
pub fn example1_eigenfunctions() -> (RationalFn, RationalFn) {
    let w = poly(EXAMPLE1_W);
    (
        RationalFn::new(poly(EXAMPLE1_PSI1_NUM), w.clone()).expect("nonzero"),
        RationalFn::new(poly(EXAMPLE1_PSI2_NUM), w).expect("nonzero"),
    )
}

pub fn example_seeds(id: u8) -> Result<SeedPair> {
    let (a, b) = match id {
        1 => (EXAMPLE1_OMEGA1, EXAMPLE1_OMEGA2),
        2 => (EXAMPLE2_OMEGA1, EXAMPLE2_OMEGA2),
        _ => return Err(Error::InvalidArgument(format!("no example {id}; expected 1 or 2"))),
    };
    SeedPair::harmonic(poly(a), poly(b))
}

/// The constant used for each example: `W = F + C` is negative definite for both.
pub fn example_constant(id: u8) -> Result<BigRational> {
    match id {
        1 => Ok(int(-20)),
        2 => Ok(int(-1)),
        _ => Err(Error::InvalidArgument(format!("no example {id}; expected 1 or 2"))),
    }
}

/// Affine relation between the computed and the reference denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Calibration {
    #[serde(with = "rational_serde")]
    pub lambda: BigRational,
    #[serde(rename = "C", with = "rational_serde")]
    pub c: BigRational,
    #[serde(with = "rational_serde")]
    pub psi1_ratio: BigRational,
    #[serde(with = "rational_serde")]
    pub psi2_ratio: BigRational,
}

/// Everything computed for a worked example.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleReport {
    pub example: u8,
    pub record: SearchRecord,
    pub bundle: ResultBundleEq,
    pub u_decay: DecayReport,
    pub psi1_decay: DecayReport,
    pub psi2_decay: DecayReport,
    pub sign: Sign,
    pub certificate: PositivityCertificate,
    pub calibration: Option<Calibration>,
}

/// [`ResultBundle`] compared by its serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResultBundleEq(pub ResultBundle);

impl PartialEq for ResultBundleEq {
    fn eq(&self, other: &Self) -> bool {
        serde_json::to_string(self).ok() == serde_json::to_string(other).ok()
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvariantViolated(what.to_string()))
    }
}

/// Runs the whole pipeline on an example's reference seeds and checks every claim:
/// the kernel identities, sign-definiteness of `W`, the decay rates, and for the first
/// example equality with the reference formulas.
pub fn example_report(id: u8, limits: BranchAndBound) -> Result<ExampleReport> {
    let seeds = example_seeds(id)?;
    let c = example_constant(id)?;
    let result = double_transform(&seeds, &c)?;
    check(verify_solution(result.u(), result.psi1()), "(−Δ+u)ψ1 = 0")?;
    check(verify_solution(result.u(), result.psi2()), "(−Δ+u)ψ2 = 0")?;

    let (sign, positivity) = certify_sign_definite(result.w(), limits)?;
    let certificate = match positivity {
        Positivity::Certified(cert) => cert,
        Positivity::Refuted { .. } => return Err(Error::InvariantViolated("W has a real zero".into())),
    };
    let u_decay = decay_exponent(result.u())?;
    let psi1_decay = decay_exponent(result.psi1())?;
    let psi2_decay = decay_exponent(result.psi2())?;
    let (want_u, want_psi) = if id == 1 { (6, 2) } else { (8, 3) };
    check(u_decay.bound_valid && u_decay.exponent == want_u, &format!("u decays as r^-{want_u}"))?;
    for p in [&psi1_decay, &psi2_decay] {
        check(p.bound_valid && p.exponent == want_psi, &format!("ψ decays as r^-{want_psi}"))?;
    }

    let calibration = if id == 1 {
        let f = seed_antiderivative(&seeds)?;
        let (lambda, c_pub) = calibrate_against(&f, &poly(EXAMPLE1_W))?;
        check(result.u().rf_equal(&example1_potential()), "u equals the reference potential")?;
        let (p1, p2) = example1_eigenfunctions();
        let psi1_ratio = result
            .psi1()
            .ratio_to(&p1)
            .ok_or_else(|| Error::InvariantViolated("ψ1 proportional to the reference ψ1".into()))?;
        let psi2_ratio = result
            .psi2()
            .ratio_to(&p2)
            .ok_or_else(|| Error::InvariantViolated("ψ2 proportional to the reference ψ2".into()))?;
        Some(Calibration {
            lambda,
            c: c_pub,
            psi1_ratio,
            psi2_ratio,
        })
    } else {
        None
    };

    let record = SearchRecord {
        trial: 0,
        family: SeedFamily::Independent,
        seeds: (&seeds).into(),
        c: Some(c),
        u_decay: Some(u_decay.exponent),
        psi_decay: Some(psi1_decay.exponent.min(psi2_decay.exponent)),
        positivity: PositivityStatus::Certified,
        w_degree: result.w().degree().finite(),
        valid: true,
        error: None,
    };
    Ok(ExampleReport {
        example: id,
        record,
        bundle: ResultBundleEq(result.bundle(true)),
        u_decay,
        psi1_decay,
        psi2_decay,
        sign,
        certificate,
        calibration,
    })
}

/// The certified record for an example.
pub fn verify_example(id: u8) -> Result<SearchRecord> {
    Ok(example_report(id, BranchAndBound::default())?.record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn min_constant_simple() {
        let a = min_positive_constant(&poly("x^2 + y^2 - 1")).unwrap();
        assert!(a.c > int(1) && a.c <= int(2));
        assert_eq!(min_positive_constant(&poly("x")).unwrap_err(), Error::NonPositiveLeadingForm);
        assert_eq!(
            min_positive_constant(&poly("x^2 - y^2")).unwrap_err(),
            Error::NonPositiveLeadingForm
        );
    }

    #[test]
    fn min_constant_for_first_example() {
        let seeds = example_seeds(1).unwrap();
        let f = seed_antiderivative(&seeds).unwrap().scale(&int(-8));
        let a = min_positive_constant(&f).unwrap();
        assert!(a.c <= int(160) && a.c.is_positive());
    }

    #[test]
    fn min_constant_shifts_with_f() {
        let f = poly("(x^2 + y^2)^2 - 3*x*y + x");
        let a = min_positive_constant(&f).unwrap();
        let b = min_positive_constant(&(&f + &BivariatePoly::constant(rat(5, 2)))).unwrap();
        assert_eq!(&a.c - &b.c, rat(5, 2));
    }

    #[test]
    fn examples_verify() {
        let r1 = verify_example(1).unwrap();
        assert_eq!((r1.u_decay, r1.psi_decay), (Some(6), Some(2)));
        assert_eq!(r1.positivity, PositivityStatus::Certified);
        let rep = example_report(1, BranchAndBound::default()).unwrap();
        let cal = rep.calibration.unwrap();
        assert_eq!((cal.lambda, cal.c), (int(-8), int(160)));
        assert_eq!((cal.psi1_ratio, cal.psi2_ratio), (int(-8), int(4)));
        let r2 = verify_example(2).unwrap();
        assert_eq!((r2.u_decay, r2.psi_decay), (Some(8), Some(3)));
        assert_eq!(verify_example(2).unwrap(), r2);
        assert!(verify_example(3).is_err());
    }

    #[test]
    fn conjugate_pairs_reach_fast_decay() {
        let mut rng = trial_rng(1, 0);
        let seeds = random_seed_pair(&mut rng, 2, SeedFamily::Conjugate, 5).unwrap();
        let rec = analyse_pair(0, SeedFamily::Conjugate, &seeds, &SweepConfig::default());
        assert!(rec.is_certified(), "{rec:?}");
        assert_eq!(rec.u_decay, Some(6));
        assert_eq!(rec.psi_decay, Some(2));
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = sweep(2, 7, 6).unwrap();
        let b = sweep(2, 7, 6).unwrap();
        assert_eq!(to_json_lines(&a), to_json_lines(&b));
        assert_eq!(from_json_lines(&to_json_lines(&a)).unwrap(), a);
        assert!(a.iter().any(|r| r.is_certified() && r.u_decay == Some(6)));
        assert!(sweep(1, 7, 1).is_err());
    }
}
