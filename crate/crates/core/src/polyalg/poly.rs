//! Sparse bivariate polynomials over `Q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `x^x * y^y`.
///
/// Ordered graded-lexicographically: total degree first, then by descending power of
/// `x`, so degree-2 monomials iterate as `x^2, xy, y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial in `x, y` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    /// Builds from `(i, j, coefficient)` triples; repeated monomials are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigRational)>,
    {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= Degree::Finite(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Greatest monomial in graded-lex order with its coefficient.
    pub fn leading_term(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// The homogeneous part of top degree.
    pub fn leading_form(&self) -> Result<BivariatePoly> {
        let d = self.degree().finite().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    pub fn homogeneous_part(&self, d: u32) -> BivariatePoly {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Sum of the absolute values of all coefficients.
    pub fn l1_norm(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c.abs())
    }

    pub fn scale(&self, c: &BigRational) -> BivariatePoly {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> BivariatePoly {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn diff_x(&self) -> BivariatePoly {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.x > 0)
                .map(|(m, c)| (Monomial::new(m.x - 1, m.y), c * BigInt::from(m.x)))
                .collect(),
        }
    }

    pub fn diff_y(&self) -> BivariatePoly {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.y > 0)
                .map(|(m, c)| (Monomial::new(m.x, m.y - 1), c * BigInt::from(m.y)))
                .collect(),
        }
    }

    pub fn laplacian(&self) -> BivariatePoly {
        self.diff_x().diff_x() + self.diff_y().diff_y()
    }

    /// `|∇p|^2 = p_x^2 + p_y^2`.
    pub fn grad_norm_sq(&self) -> BivariatePoly {
        let px = self.diff_x();
        let py = self.diff_y();
        &px * &px + &py * &py
    }

    /// Termwise antiderivative in `x` with zero integration constant.
    pub fn integrate_x(&self) -> BivariatePoly {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x + 1, m.y), c / BigInt::from(m.x + 1)))
                .collect(),
        }
    }

    /// Termwise antiderivative in `y` with zero integration constant.
    pub fn integrate_y(&self) -> BivariatePoly {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, m.y + 1), c / BigInt::from(m.y + 1)))
                .collect(),
        }
    }

    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let xs = powers(x0, max_x);
        let ys = powers(y0, max_y);
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            acc + c * &xs[m.x as usize] * &ys[m.y as usize]
        })
    }

    /// Floating-point evaluation; coefficients are rounded once.
    pub fn to_f64_poly(&self) -> Vec<(i32, i32, f64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.x as i32, m.y as i32, super::rational::to_f64(c)))
            .collect()
    }

    /// Re-expands `p(cx + s, cy + t)` as a polynomial in `(s, t)`.
    pub fn shift(&self, cx: &BigRational, cy: &BigRational) -> BivariatePoly {
        let max_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0);
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let xs = powers(cx, max_x);
        let ys = powers(cy, max_y);
        let binom = binomial_table(max_x.max(max_y));
        let mut out = BivariatePoly::zero();
        for (m, c) in &self.terms {
            for a in 0..=m.x {
                let cxa = c * &xs[(m.x - a) as usize] * &binom[m.x as usize][a as usize];
                if cxa.is_zero() {
                    continue;
                }
                for b in 0..=m.y {
                    let v = &cxa * &ys[(m.y - b) as usize] * &binom[m.y as usize][b as usize];
                    out.add_term(Monomial::new(a, b), v);
                }
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// Used to strip factors known by construction (e.g. powers of a seed) without a
    /// general multivariate gcd.
    pub fn div_exact(&self, divisor: &BivariatePoly) -> Option<BivariatePoly> {
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = BivariatePoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if m.x < lm.x || m.y < lm.y {
                return None;
            }
            let t = BivariatePoly::monomial(c / lc, m.x - lm.x, m.y - lm.y);
            rem = &rem - &(&t * divisor);
            quot = quot + t;
        }
        Some(quot)
    }

    /// `Some(s)` with `self = s * other`, if the two are rational multiples of each other.
    pub fn ratio_to(&self, other: &BivariatePoly) -> Option<BigRational> {
        match (self.leading_term(), other.leading_term()) {
            (None, None) => Some(BigRational::one()),
            (Some((m, a)), Some((n, b))) if m == n => {
                let s = a / b;
                (other.scale(&s) == *self).then_some(s)
            }
            _ => None,
        }
    }
}

fn powers(base: &BigRational, n: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigRational::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

fn binomial_table(n: u32) -> Vec<Vec<BigRational>> {
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for k in 1..=n as usize {
        let prev = &rows[k - 1];
        let mut row = vec![BigRational::one(); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

impl From<BigRational> for BivariatePoly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BivariatePoly> for BivariatePoly {
    fn sub_assign(&mut self, rhs: &BivariatePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<'a> Sub<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        -&self
    }
}

impl BivariatePoly {
    /// `(L, {m: L·c_m})` with `L` the least common denominator.
    fn integer_form(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&lcm / c.denom())))
            .collect();
        (lcm, terms)
    }
}

impl<'a> Mul<&'a BivariatePoly> for &'a BivariatePoly {
    type Output = BivariatePoly;
    /// Multiplies over the integers and divides by the common denominator once per term.
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePoly::zero();
        }
        let (la, ta) = self.integer_form();
        let (lb, tb) = rhs.integer_form();
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &ta {
            for (mb, cb) in &tb {
                let m = Monomial::new(ma.x + mb.x, ma.y + mb.y);
                let v = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += v,
                }
            }
        }
        let den = la * lb;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, BigRational::new(c, den.clone())))
            .collect();
        BivariatePoly { terms }
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

impl fmt::Display for BivariatePoly {
    /// Human-readable form, highest degree first: `17*x^4 + 34*x^2*y^2 - 1/2*y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let a = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !a.is_one() || *m == Monomial::ONE {
                factors.push(a.to_string());
            }
            match m.x {
                0 => {}
                1 => factors.push("x".to_string()),
                e => factors.push(format!("x^{e}")),
            }
            match m.y {
                0 => {}
                1 => factors.push("y".to_string()),
                e => factors.push(format!("y^{e}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, poly, rat};

    #[test]
    fn graded_lex_order() {
        let p = poly("y^2 + x*y + x^2 + y + x + 1");
        let order: Vec<_> = p.terms().map(|(m, _)| (m.x, m.y)).collect();
        assert_eq!(order, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let s = poly("x") + poly("-x");
        assert!(s.is_zero());
        assert_eq!(s.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn addition_examples() {
        assert_eq!(poly("x^2 - y^2") + poly("2*x*y"), poly("x^2 + 2*x*y - y^2"));
        let a = poly("x + 2*x^2 + x*y - 2*y^2");
        let b = poly("2*x + 2*y + 3*x^2 + 10*x*y - 3*y^2");
        assert_eq!(a + b, poly("3*x + 2*y + 5*x^2 + 11*x*y - 5*y^2"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(poly("x + y") * poly("x - y"), poly("x^2 - y^2"));
        let r2 = poly("x^2 + y^2");
        assert_eq!(&r2 * &r2, poly("x^4 + 2*x^2*y^2 + y^4"));
        assert_eq!(
            (&r2 * &r2).scale(&int(17)),
            poly("17*x^4 + 34*x^2*y^2 + 17*y^4")
        );
        assert!(BivariatePoly::zero().scale(&rat(3, 7)).is_zero());
    }

    #[test]
    fn derivatives() {
        assert!(poly("x^2 - y^2").laplacian().is_zero());
        assert_eq!(poly("x^2 + y^2").laplacian(), poly("4"));
        let omega1 = poly("x + 2*(x^2 - y^2) + x*y");
        assert_eq!(omega1.diff_x(), poly("1 + 4*x + y"));
        assert_eq!(omega1.diff_y(), poly("x - 4*y"));
    }

    #[test]
    fn evaluation() {
        let w = poly("160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2");
        assert_eq!(w.evaluate(&int(0), &int(0)), int(160));
        assert_eq!(poly("2*x*y").evaluate(&int(0), &int(5)), int(0));
        let omega1 = poly("x + 2*(x^2 - y^2) + x*y");
        assert_eq!(omega1.evaluate(&int(1), &int(1)), int(2));
    }

    #[test]
    fn leading_forms() {
        let w = poly("160 + 4*x^2 + 4*y^2 + 16*x^3 + 4*x^2*y + 16*x*y^2 + 4*y^3 + 17*(x^2+y^2)^2");
        assert_eq!(w.leading_form().unwrap(), poly("17*(x^2 + y^2)^2"));
        assert_eq!(poly("x + 1").leading_form().unwrap(), poly("x"));
        let omega2 = poly("x + y + (x^2 - y^2)/2 - x*y/5 - 4*(3*x^2*y - y^3)");
        assert_eq!(omega2.leading_form().unwrap(), poly("-4*(3*x^2*y - y^3)"));
        assert_eq!(
            BivariatePoly::zero().leading_form(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn shift_matches_substitution() {
        let p = poly("x^3 - 2*x*y + 5*y^2 - 7");
        let q = p.shift(&rat(1, 2), &int(-3));
        for (s, t) in [(int(0), int(0)), (rat(1, 3), int(2)), (int(-1), rat(5, 4))] {
            assert_eq!(
                q.evaluate(&s, &t),
                p.evaluate(&(rat(1, 2) + &s), &(int(-3) + &t))
            );
        }
    }

    #[test]
    fn exact_division() {
        let a = poly("x^2 + 3*y - 1");
        let b = poly("x*y - y^3 + 2");
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(poly("x^2 + 1").div_exact(&poly("x")), None);
        assert_eq!(poly("x^2 + y").ratio_to(&poly("2*x^2 + 2*y")), Some(rat(1, 2)));
        assert_eq!(poly("x^2 + y").ratio_to(&poly("x^2 - y")), None);
    }

    #[test]
    fn display() {
        assert_eq!(poly("-x^2/2 + 3*y - 1").to_string(), "-1/2*x^2 + 3*y - 1");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
    }
}
