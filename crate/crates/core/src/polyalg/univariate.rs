//! Dense univariate polynomials over `Q`, reduced univariate rational functions, and
//! Sturm sequences for exact real-root counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::BivariatePoly;
use crate::error::{Error, Result};

/// `c[0] + c[1] t + ... + c[n] t^n` with a nonzero top coefficient (or empty for zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1D {
    coeffs: Vec<BigRational>,
}

impl Poly1D {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1D { coeffs }
    }

    pub fn zero() -> Self {
        Poly1D::default()
    }

    pub fn one() -> Self {
        Poly1D::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly1D::new(vec![c])
    }

    /// `c · t^n`.
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut v = vec![BigRational::zero(); n + 1];
        v[n] = c;
        Poly1D::new(v)
    }

    /// `t`.
    pub fn t() -> Self {
        Poly1D::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Poly1D {
        Poly1D::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly1D {
        Poly1D::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly1D) -> Result<(Poly1D, Poly1D)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = d.leading_coeff().unwrap().clone();
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Poly1D::zero(), Poly1D::zero()));
        };
        if n < dd {
            return Ok((Poly1D::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly1D::new(q), Poly1D::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly1D) -> Poly1D {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly1D {
        match self.leading_coeff() {
            None => Poly1D::zero(),
            Some(lc) => self.scale(&(BigRational::one() / lc)),
        }
    }

    /// Sign of `p(t)` as `t → +∞` (or `−∞` when `negative_infinity`).
    fn sign_at_infinity(&self, negative_infinity: bool) -> i32 {
        match (self.degree(), self.leading_coeff()) {
            (Some(d), Some(lc)) => {
                let s = if lc.is_positive() { 1 } else { -1 };
                if negative_infinity && d % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
            _ => 0,
        }
    }

    /// Canonical Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly1D> {
        let mut seq = Vec::new();
        if self.is_zero() {
            return seq;
        }
        seq.push(self.clone());
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots. Zero polynomial is rejected.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let at = |neg: bool| sign_variations(seq.iter().map(|p| p.sign_at_infinity(neg)));
        Ok(at(true) - at(false))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let at = |t: &BigRational| sign_variations(seq.iter().map(|p| sign(&p.evaluate(t))));
        Ok(at(a).saturating_sub(at(b)))
    }

    /// Substitutes `t ↦ x` into a bivariate polynomial.
    pub fn to_bivariate_in_x(&self) -> BivariatePoly {
        BivariatePoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u32, 0, c.clone())),
        )
    }

    /// Inverse of [`Poly1D::to_bivariate_in_x`]; fails if `p` depends on `y`.
    pub fn from_bivariate_in_x(p: &BivariatePoly) -> Result<Poly1D> {
        let deg = p.degree().finite().unwrap_or(0) as usize;
        let mut v = vec![BigRational::zero(); deg + 1];
        for (m, c) in p.terms() {
            if m.y != 0 {
                return Err(Error::InvalidArgument(
                    "polynomial depends on y".to_string(),
                ));
            }
            v[m.x as usize] = c.clone();
        }
        Ok(Poly1D::new(v))
    }
}

fn sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &Poly1D {
    type Output = Poly1D;
    fn add(self, rhs: &Poly1D) -> Poly1D {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1D::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly1D {
    type Output = Poly1D;
    fn sub(self, rhs: &Poly1D) -> Poly1D {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1D::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly1D {
    type Output = Poly1D;
    fn mul(self, rhs: &Poly1D) -> Poly1D {
        if self.is_zero() || rhs.is_zero() {
            return Poly1D::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly1D::new(v)
    }
}

impl Neg for Poly1D {
    type Output = Poly1D;
    fn neg(self) -> Poly1D {
        Poly1D::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bivariate_in_x())
    }
}

/// A univariate rational function kept in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn1D {
    num: Poly1D,
    den: Poly1D,
}

impl RationalFn1D {
    pub fn new(num: Poly1D, den: Poly1D) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFn1D {
                num,
                den: Poly1D::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc = den.leading_coeff().unwrap().clone();
        let inv = BigRational::one() / lc;
        Ok(RationalFn1D {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly1D) -> Self {
        RationalFn1D {
            num: p,
            den: Poly1D::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFn1D::from_poly(Poly1D::zero())
    }

    pub fn num(&self) -> &Poly1D {
        &self.num
    }

    pub fn den(&self) -> &Poly1D {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn build(num: Poly1D, den: Poly1D) -> Self {
        RationalFn1D::new(num, den).expect("denominator of a product of nonzero polynomials")
    }

    pub fn add(&self, other: &RationalFn1D) -> RationalFn1D {
        Self::build(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &RationalFn1D) -> RationalFn1D {
        Self::build(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &RationalFn1D) -> RationalFn1D {
        Self::build(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &RationalFn1D) -> Result<RationalFn1D> {
        RationalFn1D::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn scale(&self, c: &BigRational) -> RationalFn1D {
        Self::build(self.num.scale(c), self.den.clone())
    }

    pub fn derivative(&self) -> RationalFn1D {
        Self::build(
            &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            &self.den * &self.den,
        )
    }

    pub fn evaluate(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.evaluate(t);
        (!d.is_zero()).then(|| self.num.evaluate(t) / d)
    }
}

impl fmt::Display for RationalFn1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{int, rat};

    fn p(c: &[i64]) -> Poly1D {
        Poly1D::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t^2 - 1
        let b = p(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p(&[-2, 0, 1]).count_real_roots().unwrap(), 2);
        assert_eq!(p(&[1, 0, 1]).count_real_roots().unwrap(), 0);
        // (t-1)^2 (t+2): two distinct roots
        let q = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(q.count_real_roots().unwrap(), 2);
        assert_eq!(q.count_roots_in(&int(0), &int(5)).unwrap(), 1);
        assert_eq!(p(&[5]).count_real_roots().unwrap(), 0);
        assert!(Poly1D::zero().count_real_roots().is_err());
        assert_eq!(
            p(&[-2, 0, 1]).count_roots_in(&rat(1, 1), &rat(3, 2)).unwrap(),
            1
        );
    }

    #[test]
    fn reduced_rational_functions() {
        let f = RationalFn1D::new(p(&[0, 0, 2]), p(&[0, 0, 0, 1])).unwrap();
        assert_eq!(f.num(), &p(&[2]));
        assert_eq!(f.den(), &p(&[0, 1]));
        let g = RationalFn1D::new(p(&[0, 3]), p(&[0, 0, 0, 6])).unwrap();
        assert_eq!(g.num(), &Poly1D::constant(rat(1, 2)));
        assert_eq!(g.den(), &p(&[0, 0, 1]));
        // d/dt (1/t) = -1/t^2
        let inv = RationalFn1D::new(p(&[1]), p(&[0, 1])).unwrap();
        assert_eq!(
            inv.derivative(),
            RationalFn1D::new(p(&[-1]), p(&[0, 0, 1])).unwrap()
        );
    }
}
