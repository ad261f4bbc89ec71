//! Exact certificates that a bivariate polynomial has no real zeros.
//!
//! Far from the origin the leading form dominates: if `L ≥ m r^d` on the plane and the
//! lower-order terms have coefficient mass `S`, then `W > 0` for `r > S/m` (`r ≥ 1`).
//! Inside that disk a quadtree branch-and-bound bounds `W` from below on each box by
//! re-expanding it around the box center and taking the worst case of every monomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{int, rat, rational_serde, BivariatePoly, Poly1D};

pub const DEFAULT_MAX_DEPTH: u32 = 40;
pub const DEFAULT_MAX_BOXES: usize = 400_000;

/// Limits for the branch-and-bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchAndBound {
    pub max_depth: u32,
    pub max_boxes: usize,
}

impl Default for BranchAndBound {
    fn default() -> Self {
        BranchAndBound {
            max_depth: DEFAULT_MAX_DEPTH,
            max_boxes: DEFAULT_MAX_BOXES,
        }
    }
}

/// Closed axis-aligned box `[x_lo, x_hi] × [y_lo, y_hi]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    #[serde(with = "rational_serde")]
    pub x_lo: BigRational,
    #[serde(with = "rational_serde")]
    pub x_hi: BigRational,
    #[serde(with = "rational_serde")]
    pub y_lo: BigRational,
    #[serde(with = "rational_serde")]
    pub y_hi: BigRational,
}

impl Cell {
    fn square(r: &BigRational) -> Cell {
        Cell {
            x_lo: -r.clone(),
            x_hi: r.clone(),
            y_lo: -r.clone(),
            y_hi: r.clone(),
        }
    }

    fn center(&self) -> (BigRational, BigRational) {
        let half = rat(1, 2);
        (
            (&self.x_lo + &self.x_hi) * &half,
            (&self.y_lo + &self.y_hi) * &half,
        )
    }

    fn split(&self) -> [Cell; 4] {
        let (cx, cy) = self.center();
        [
            Cell {
                x_lo: self.x_lo.clone(),
                x_hi: cx.clone(),
                y_lo: self.y_lo.clone(),
                y_hi: cy.clone(),
            },
            Cell {
                x_lo: cx.clone(),
                x_hi: self.x_hi.clone(),
                y_lo: self.y_lo.clone(),
                y_hi: cy.clone(),
            },
            Cell {
                x_lo: self.x_lo.clone(),
                x_hi: cx.clone(),
                y_lo: cy.clone(),
                y_hi: self.y_hi.clone(),
            },
            Cell {
                x_lo: cx,
                x_hi: self.x_hi.clone(),
                y_lo: cy,
                y_hi: self.y_hi.clone(),
            },
        ]
    }

    /// Squared distance from the origin to the nearest point of the box.
    fn min_dist_sq(&self) -> BigRational {
        let axis = |lo: &BigRational, hi: &BigRational| {
            if lo.is_positive() {
                lo.clone()
            } else if hi.is_negative() {
                -hi.clone()
            } else {
                BigRational::zero()
            }
        };
        let dx = axis(&self.x_lo, &self.x_hi);
        let dy = axis(&self.y_lo, &self.y_hi);
        &dx * &dx + &dy * &dy
    }

    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        &self.x_lo <= x && x <= &self.x_hi && &self.y_lo <= y && y <= &self.y_hi
    }
}

/// A box together with an exact positive lower bound of the polynomial on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedCell {
    #[serde(rename = "box")]
    pub cell: Cell,
    #[serde(with = "rational_serde")]
    pub lower_bound: BigRational,
}

/// Evidence that `W > 0` on all of `R²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityCertificate {
    /// Exact lower bound of the leading form on the unit circle.
    #[serde(with = "rational_serde")]
    pub leading_form_min_bound: BigRational,
    /// `W > 0` for every `r ≥ cutoff_radius`.
    #[serde(with = "rational_serde")]
    pub cutoff_radius: BigRational,
    /// Boxes covering the disk of radius `cutoff_radius`, in canonical order.
    #[serde(rename = "cell_tree_summary")]
    pub cells: Vec<CertifiedCell>,
    pub max_depth_used: u32,
}

impl PositivityCertificate {
    /// Evaluates `w` at `samples` random rational points spread over the certified boxes
    /// and the exterior region, returning the first point where `w ≤ 0` (or where a cell
    /// bound is violated).
    pub fn spot_check(
        &self,
        w: &BivariatePoly,
        samples: usize,
        seed: u64,
    ) -> Option<(BigRational, BigRational)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let denom: i64 = 1 << 20;
        let unit = |rng: &mut ChaCha8Rng| rat(rng.gen_range(0..=denom), denom);
        for k in 0..samples {
            if self.cells.is_empty() || k % 4 == 3 {
                // exterior: radius in [R, 4R] along a rational direction
                let r = &self.cutoff_radius * (int(1) + unit(&mut rng) * int(3));
                let (cx, cy) = (unit(&mut rng) * int(2) - int(1), unit(&mut rng) * int(2) - int(1));
                let norm = if cx.abs() > cy.abs() { cx.abs() } else { cy.abs() };
                if norm.is_zero() {
                    continue;
                }
                // max-norm scaling keeps the point at Euclidean radius ≥ r
                let (x, y) = (&cx / &norm * &r, &cy / &norm * &r);
                if !w.evaluate(&x, &y).is_positive() {
                    return Some((x, y));
                }
            } else {
                let c = &self.cells[rng.gen_range(0..self.cells.len())];
                let x = &c.cell.x_lo + (&c.cell.x_hi - &c.cell.x_lo) * unit(&mut rng);
                let y = &c.cell.y_lo + (&c.cell.y_hi - &c.cell.y_lo) * unit(&mut rng);
                let v = w.evaluate(&x, &y);
                if !v.is_positive() || v < c.lower_bound {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Result of [`global_positivity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Positivity {
    Certified(PositivityCertificate),
    Refuted {
        #[serde(with = "rational_serde")]
        x: BigRational,
        #[serde(with = "rational_serde")]
        y: BigRational,
        #[serde(with = "rational_serde")]
        value: BigRational,
    },
}

impl Positivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Positivity::Certified(_))
    }

    pub fn certificate(&self) -> Option<&PositivityCertificate> {
        match self {
            Positivity::Certified(c) => Some(c),
            Positivity::Refuted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

/// `p(1, t)` for a homogeneous `p`.
fn dehomogenize(p: &BivariatePoly, d: u32) -> Poly1D {
    let mut v = vec![BigRational::zero(); d as usize + 1];
    for (m, c) in p.terms() {
        v[m.y as usize] = c.clone();
    }
    Poly1D::new(v)
}

/// Whether a homogeneous form of even degree `d` is strictly positive off the origin.
fn is_positive_definite_form(p: &BivariatePoly, d: u32) -> bool {
    if !p.coeff(0, d).is_positive() || !p.coeff(d, 0).is_positive() {
        return false;
    }
    let q = dehomogenize(p, d);
    q.count_real_roots().map(|n| n == 0).unwrap_or(false)
}

/// `(x² + y²)^k`.
fn radial_power(k: u32) -> BivariatePoly {
    let r2 = &BivariatePoly::x().pow(2) + &BivariatePoly::y().pow(2);
    r2.pow(k)
}

/// An exact positive lower bound of a homogeneous even-degree form on the unit circle,
/// or `None` when the form is not positive there.
///
/// The bound is the largest `m` tried for which `p − m(x²+y²)^{d/2}` is still positive
/// definite (decided by a Sturm count on `p(1, t)`), or vanishes identically.
pub fn leading_form_positive(p: &BivariatePoly) -> Result<Option<BigRational>> {
    let d = p.degree().finite().ok_or(Error::ZeroPolynomial)?;
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if d == 0 {
        let c = p.constant_term();
        return Ok(c.is_positive().then_some(c));
    }
    if !is_positive_definite_form(p, d) {
        return Ok(None);
    }
    let rd = radial_power(d / 2);
    let accepts = |m: &BigRational| {
        let h = p - &rd.scale(m);
        h.is_zero() || is_positive_definite_form(&h, d)
    };
    // p(v)/|v|^d at a few directions is an upper bound on the minimum
    let scale = num_traits::pow(int(2), (d / 2) as usize);
    let mut upper = p.coeff(d, 0).min(p.coeff(0, d));
    for (a, b) in [(1, 1), (1, -1)] {
        upper = upper.min(p.evaluate(&int(a), &int(b)) / &scale);
    }
    let mut m = upper;
    let mut rejected: Option<BigRational> = None;
    for _ in 0..512 {
        if accepts(&m) {
            break;
        }
        rejected = Some(m.clone());
        m /= int(2);
    }
    if let Some(mut hi) = rejected {
        for _ in 0..8 {
            let mid = (&m + &hi) / int(2);
            if accepts(&mid) {
                m = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(Some(m))
}

/// Box-local expansion `P(s, t) = scale · W(cx + hx·s, cy + hy·t)` for `|s|, |t| ≤ 1`,
/// with integer coefficients stored densely as `coeffs[i][j]` for `s^i t^j`.
#[derive(Clone)]
struct LocalPoly {
    coeffs: Vec<Vec<BigInt>>,
    scale: BigRational,
}

impl LocalPoly {
    /// `L · W(R s, R t)` with `L` the common denominator of `W`.
    fn root(w: &BivariatePoly, d: u32, radius: &BigInt) -> LocalPoly {
        let lcm = w
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let n = d as usize + 1;
        let mut coeffs = vec![vec![BigInt::zero(); n]; n];
        for (m, c) in w.terms() {
            let r = num_traits::pow(radius.clone(), (m.x + m.y) as usize);
            coeffs[m.x as usize][m.y as usize] = c.numer() * (&lcm / c.denom()) * r;
        }
        LocalPoly {
            coeffs,
            scale: BigRational::from_integer(lcm),
        }
    }

    fn value_at_center(&self) -> &BigInt {
        &self.coeffs[0][0]
    }

    /// Lower bound of `P` on `[−1, 1]²`. Terms `s^i t^j` with both exponents even and a
    /// positive coefficient are nonnegative and dropped; the rest count at worst case.
    fn lower_bound(&self) -> BigInt {
        let mut lb = self.coeffs[0][0].clone();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if (i == 0 && j == 0) || c.is_zero() {
                    continue;
                }
                if i % 2 == 0 && j % 2 == 0 && c.is_positive() {
                    continue;
                }
                lb -= c.abs();
            }
        }
        lb
    }

    /// Expansion on the quadrant `(sx, sy) ∈ {−1, 1}²` of the box:
    /// `2^d · P((sx + s)/2, (sy + t)/2)`, divided by the content of the coefficients.
    fn child(&self, d: u32, sx: i32, sy: i32) -> LocalPoly {
        let n = d as usize + 1;
        let mut q = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n - i {
                let c = &self.coeffs[i][j];
                if !c.is_zero() {
                    q[i][j] = c << (d as usize - i - j);
                }
            }
        }
        // Taylor shift by sx in s, row by row over fixed j
        for j in 0..n {
            let top = n - j;
            for k in 0..top {
                for i in (k..top - 1).rev() {
                    let v = &q[i + 1][j] * sx;
                    q[i][j] += v;
                }
            }
        }
        for i in 0..n {
            let top = n - i;
            for k in 0..top {
                for j in (k..top - 1).rev() {
                    let v = &q[i][j + 1] * sy;
                    q[i][j] += v;
                }
            }
        }
        let mut g = BigInt::zero();
        for row in &q {
            for c in row {
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
        }
        let mut scale = &self.scale * BigRational::from_integer(BigInt::one() << d as usize);
        if g > BigInt::one() {
            for row in q.iter_mut() {
                for c in row.iter_mut() {
                    *c = &*c / &g;
                }
            }
            scale /= BigRational::from_integer(g);
        }
        LocalPoly { coeffs: q, scale }
    }
}

/// Decides `W > 0` on `R²` exactly: a certificate, a rational point with `W ≤ 0`, or
/// `Inconclusive` when the limits are exhausted.
pub fn global_positivity(w: &BivariatePoly, limits: BranchAndBound) -> Result<Positivity> {
    let d = w.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let lead = w.leading_form()?;
    if d % 2 == 1 {
        return Err(Error::NonPositiveLeadingForm);
    }
    let m = leading_form_positive(&lead)?.ok_or(Error::NonPositiveLeadingForm)?;
    let tail_mass = (w - &lead).l1_norm();
    let radius_int = ((&tail_mass / &m).floor().to_integer() + BigInt::one()).max(BigInt::one());
    let radius = BigRational::from_integer(radius_int.clone());
    let radius_sq = &radius * &radius;

    let mut stack = vec![(Cell::square(&radius), 0u32, LocalPoly::root(w, d, &radius_int))];
    let mut cells = Vec::new();
    let mut processed = 0usize;
    let mut max_depth_used = 0;
    while let Some((cell, depth, local)) = stack.pop() {
        processed += 1;
        if processed > limits.max_boxes {
            return Err(Error::Inconclusive {
                max_depth: limits.max_depth,
            });
        }
        if cell.min_dist_sq() >= radius_sq {
            continue;
        }
        if !local.value_at_center().is_positive() {
            let (x, y) = cell.center();
            let value = w.evaluate(&x, &y);
            return Ok(Positivity::Refuted { x, y, value });
        }
        let lb = local.lower_bound();
        if lb.is_positive() {
            max_depth_used = max_depth_used.max(depth);
            cells.push(CertifiedCell {
                cell,
                lower_bound: BigRational::from_integer(lb) / &local.scale,
            });
            continue;
        }
        if depth >= limits.max_depth {
            return Err(Error::Inconclusive {
                max_depth: limits.max_depth,
            });
        }
        let [q00, q10, q01, q11] = cell.split();
        for (child, sx, sy) in [(q11, 1, 1), (q01, -1, 1), (q10, 1, -1), (q00, -1, -1)] {
            let next = local.child(d, sx, sy);
            stack.push((child, depth + 1, next));
        }
    }
    cells.sort_by(|a, b| a.cell.cmp(&b.cell));
    Ok(Positivity::Certified(PositivityCertificate {
        leading_form_min_bound: m,
        cutoff_radius: radius,
        cells,
        max_depth_used,
    }))
}


/// Certifies that `w` has no real zeros, trying `w` and then `−w`.
pub fn certify_sign_definite(w: &BivariatePoly, limits: BranchAndBound) -> Result<(Sign, Positivity)> {
    let lead = w.leading_form()?;
    let negative = match leading_form_positive(&(-&lead)) {
        Ok(Some(_)) => true,
        Ok(None) | Err(Error::OddDegree(_)) => false,
        Err(e) => return Err(e),
    };
    if negative {
        Ok((Sign::Negative, global_positivity(&-w, limits)?))
    } else {
        Ok((Sign::Positive, global_positivity(w, limits)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly;

    const W_REFERENCE: &str =
        "160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2";

    #[test]
    fn leading_form_bounds() {
        assert_eq!(
            leading_form_positive(&poly("17*(x^2 + y^2)^2")).unwrap(),
            Some(int(17))
        );
        assert_eq!(leading_form_positive(&poly("x^2 - y^2")).unwrap(), None);
        assert_eq!(leading_form_positive(&poly("x^2")).unwrap(), None);
        assert_eq!(
            leading_form_positive(&poly("x^3")).unwrap_err(),
            Error::OddDegree(3)
        );
        assert_eq!(
            leading_form_positive(&poly("x^2 + y")).unwrap_err(),
            Error::NotHomogeneous
        );
        let b = leading_form_positive(&poly("x^2 + x*y + y^2")).unwrap().unwrap();
        // true minimum on the circle is 1/2
        assert!(b.is_positive() && b <= rat(1, 2) && b > rat(1, 4));
        let b = leading_form_positive(&poly("x^4 + y^4")).unwrap().unwrap();
        assert!(b.is_positive() && b <= rat(1, 2));
    }

    #[test]
    fn reference_quartic_is_certified() {
        let w = poly(W_REFERENCE);
        let p = global_positivity(&w, BranchAndBound::default()).unwrap();
        let cert = p.certificate().expect("certified");
        assert_eq!(cert.leading_form_min_bound, int(17));
        assert!(cert.max_depth_used <= 40);
        assert_eq!(cert.spot_check(&w, 1000, 9), None);
    }

    #[test]
    fn refutation_at_origin() {
        let p = global_positivity(&poly("x^2 + y^2"), BranchAndBound::default()).unwrap();
        assert_eq!(
            p,
            Positivity::Refuted {
                x: int(0),
                y: int(0),
                value: int(0)
            }
        );
    }

    #[test]
    fn lowered_constant_is_refuted() {
        let w = poly(W_REFERENCE) - poly("200");
        match global_positivity(&w, BranchAndBound::default()).unwrap() {
            Positivity::Refuted { x, y, value } => {
                assert!(!value.is_positive());
                assert_eq!(w.evaluate(&x, &y), value);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn indefinite_leading_forms_are_rejected() {
        assert_eq!(
            global_positivity(&poly("x^2 - y^2 + 5"), BranchAndBound::default()).unwrap_err(),
            Error::NonPositiveLeadingForm
        );
        assert_eq!(
            global_positivity(&poly("x^3 + 5"), BranchAndBound::default()).unwrap_err(),
            Error::NonPositiveLeadingForm
        );
    }

    #[test]
    fn depth_limit_gives_inconclusive() {
        // min 1/2^30 at (1/3, 1/3), which no dyadic box center reaches
        let w = poly("(3*x - 1)^2 + (3*y - 1)^2") + BivariatePoly::constant(crate::polyalg::pow2(-30));
        let limits = BranchAndBound {
            max_depth: 3,
            max_boxes: 10_000,
        };
        assert_eq!(
            global_positivity(&w, limits).unwrap_err(),
            Error::Inconclusive { max_depth: 3 }
        );
    }

    #[test]
    fn negative_definite_is_certified_by_sign() {
        let w = -poly(W_REFERENCE);
        let (sign, p) = certify_sign_definite(&w, BranchAndBound::default()).unwrap();
        assert_eq!(sign, Sign::Negative);
        assert!(p.is_certified());
    }

    #[test]
    fn constants() {
        let p = global_positivity(&poly("3"), BranchAndBound::default()).unwrap();
        assert!(p.is_certified());
        let p = global_positivity(&poly("-3"), BranchAndBound::default());
        assert_eq!(p.unwrap_err(), Error::NonPositiveLeadingForm);
    }

    #[test]
    fn certificate_json_round_trip() {
        let p = global_positivity(&poly(W_REFERENCE), BranchAndBound::default()).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"outcome":"certified""#));
        let back: Positivity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
