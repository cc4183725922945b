//! Exact scalars and univariate polynomials in the edge failure probability.
//!
//! Every probability computed by this crate is carried as a [`Rational`]
//! until it reaches an output boundary. Polynomials in ε are dense
//! coefficient vectors ([`EpsPolynomial`]).

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(a, b)` with the out-of-range-zero convention.
///
/// Returns 0 when `b < 0` or `b > a`. Negative `a` is a domain error.
pub fn binom(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::Domain(format!("binom: negative top argument {a}")));
    }
    Ok(BigInt::from(choose(a as u64, b)))
}

/// `C(a, b)` for a nonnegative top argument; 0 outside `0 ≤ b ≤ a`.
pub fn choose(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` in machine integers, for the small counts used by enumerators.
///
/// Panics on overflow of `u64`, which cannot happen for `a ≤ 62`.
pub fn choose_u64(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b as u128 {
        acc = acc * (a as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    /// `num / den` for machine integers. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    /// Nearest `f64`; only used at output boundaries.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Parses a decimal literal such as `0.001`, `-2.5e-3` or `7` exactly.
    pub fn from_decimal_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(pos) => {
                let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
                (&s[..pos], exp)
            }
            None => (s, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let value = if scale >= 0 {
            BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Rational(value))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `a`, `a/b`, or a decimal literal.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let bad = || Error::Domain(format!("not a fraction: {s:?}"));
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Rational::from_decimal_str(s),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigUint> for Rational {
    fn from(v: BigUint) -> Self {
        Rational::from_integer(BigInt::from_biguint(Sign::Plus, v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $assign_trait for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
        impl<'a> $assign_trait<&'a Rational> for Rational {
            fn $assign_method(&mut self, rhs: &'a Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Rational {
    type Output = Rational;
    /// Panics on division by zero.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Dense univariate polynomial in ε with exact rational coefficients.
///
/// `coeffs[j]` is the coefficient of ε^j. Trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsPolynomial {
    coeffs: Vec<Rational>,
}

impl EpsPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = EpsPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        EpsPolynomial::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        EpsPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        EpsPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        EpsPolynomial::constant(Rational::one())
    }

    /// The monomial `c·ε^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        EpsPolynomial::new(coeffs)
    }

    /// ε itself.
    pub fn eps() -> Self {
        EpsPolynomial::monomial(Rational::one(), 1)
    }

    /// 1 − ε.
    pub fn one_minus_eps() -> Self {
        EpsPolynomial::from_integers(&[1, -1])
    }

    /// `ε^a (1−ε)^b` expanded with exact binomial coefficients.
    pub fn bernstein(a: usize, b: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); a + b + 1];
        for i in 0..=b {
            let c = Rational::from(choose(b as u64, i as i64));
            coeffs[a + i] = if i % 2 == 0 { c } else { -c };
        }
        EpsPolynomial::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of ε^j (zero past the degree).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point Horner evaluation, for plotting only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        EpsPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(EpsPolynomial::one(), |acc, _| &acc * self)
    }
}

/// Convolution product.
pub fn poly_mul(p: &EpsPolynomial, q: &EpsPolynomial) -> EpsPolynomial {
    if p.is_zero() || q.is_zero() {
        return EpsPolynomial::zero();
    }
    let mut out = vec![Rational::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    EpsPolynomial::new(out)
}

pub fn poly_eval(p: &EpsPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

impl<'a> Add<&'a EpsPolynomial> for &'a EpsPolynomial {
    type Output = EpsPolynomial;
    fn add(self, rhs: &'a EpsPolynomial) -> EpsPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        EpsPolynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a EpsPolynomial> for &'a EpsPolynomial {
    type Output = EpsPolynomial;
    fn sub(self, rhs: &'a EpsPolynomial) -> EpsPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        EpsPolynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a EpsPolynomial> for &'a EpsPolynomial {
    type Output = EpsPolynomial;
    fn mul(self, rhs: &'a EpsPolynomial) -> EpsPolynomial {
        poly_mul(self, rhs)
    }
}

impl Add for EpsPolynomial {
    type Output = EpsPolynomial;
    fn add(self, rhs: EpsPolynomial) -> EpsPolynomial {
        &self + &rhs
    }
}

impl Sub for EpsPolynomial {
    type Output = EpsPolynomial;
    fn sub(self, rhs: EpsPolynomial) -> EpsPolynomial {
        &self - &rhs
    }
}

impl Mul for EpsPolynomial {
    type Output = EpsPolynomial;
    fn mul(self, rhs: EpsPolynomial) -> EpsPolynomial {
        poly_mul(&self, &rhs)
    }
}

impl fmt::Debug for EpsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsPolynomial({self})")
    }
}

fn superscript(mut n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = Vec::new();
    loop {
        out.push(DIGITS[n % 10]);
        n /= 10;
        if n == 0 {
            break;
        }
    }
    out.iter().rev().collect()
}

/// Ascending-degree rendering, e.g. `3ε² − 2ε³`.
impl fmt::Display for EpsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "−")?,
                (true, false) => {}
                (false, true) => write!(f, " − ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = magnitude == Rational::one();
            match j {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        if magnitude.denominator().is_one() {
                            write!(f, "{magnitude}")?;
                        } else {
                            write!(f, "({magnitude})")?;
                        }
                    }
                    write!(f, "ε")?;
                    if j > 1 {
                        write!(f, "{}", superscript(j))?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::from(*other)))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}
