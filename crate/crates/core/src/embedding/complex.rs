use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::BigFloat;
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(BigFloat::zero(prec), BigFloat::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::new(BigFloat::one(prec), BigFloat::zero(prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let prec = re.precision();
        Self::new(re, BigFloat::zero(prec))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::from_real(BigFloat::from_rational(r, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().min(self.im.precision())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// `|self|^2 <= 2^k`
    pub fn norm_sqr_le_pow2(&self, k: i64) -> bool {
        self.norm_sqr().abs_le_pow2(k)
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        BigComplex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re:e}{}{:e}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}
