use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Binary floating point number `mant * 2^exp` with an explicit precision.
///
/// The significand is kept to at most `prec` bits; results of mixed-precision
/// operations carry the smaller precision.
#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BigFloat { mant: BigInt::from(n), exp: 0, prec }.normalize()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        match Rational::from_float(x) {
            Some(r) => Self::from_rational(&r, prec),
            None => Self::zero(prec),
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (num, den) = (r.numer(), r.denom());
        if num.is_zero() {
            return Self::zero(prec);
        }
        let k = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let mant = if k >= 0 {
            (num << (k as usize)) / den
        } else {
            num / (den << ((-k) as usize))
        };
        BigFloat { mant, exp: -k, prec }.normalize()
    }

    fn normalize(mut self) -> Self {
        let bits = self.mant.bits();
        if bits > self.prec as u64 {
            let shift = bits - self.prec as u64;
            self.mant >>= shift as usize;
            self.exp += shift as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp, prec }.normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    /// Position of the leading bit: `|self|` lies in `[2^(m-1), 2^m)`.
    /// `None` for zero.
    pub fn magnitude(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.mant.bits() as i64 + self.exp)
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    /// The exact dyadic rational value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << (self.exp as usize))
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let (m, e) = if bits > 64 {
            (&self.mant >> ((bits - 64) as usize), self.exp + bits - 64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(0.0);
        let e = e.clamp(-2000, 2000) as i32;
        m * 2f64.powi(e)
    }

    /// True when `|self| <= 2^k`.
    pub fn abs_le_pow2(&self, k: i64) -> bool {
        match self.magnitude() {
            None => true,
            Some(m) => m <= k,
        }
    }

    pub fn sqrt(&self) -> Self {
        if self.is_zero() || self.is_negative() {
            return Self::zero(self.prec);
        }
        // integer square root of mant * 2^(exp) with an even exponent and 2*prec bits
        let mut shift = 2 * self.prec as i64 - self.mant.bits() as i64 + 2;
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = if shift >= 0 {
            &self.mant << (shift as usize)
        } else {
            &self.mant >> ((-shift) as usize)
        };
        let root = scaled.sqrt();
        BigFloat { mant: root, exp: (self.exp - shift) / 2, prec: self.prec }.normalize()
    }
}

fn add_impl(a: &BigFloat, b: &BigFloat, negate_b: bool) -> BigFloat {
    let prec = a.prec.min(b.prec);
    let b_mant = if negate_b { -&b.mant } else { b.mant.clone() };
    if b.is_zero() {
        return a.with_precision(prec);
    }
    if a.is_zero() {
        return BigFloat { mant: b_mant, exp: b.exp, prec }.normalize();
    }
    let (ma, mb) = (a.magnitude().unwrap(), b.magnitude().unwrap());
    let gap = prec as i64 + 4;
    if ma - mb > gap {
        return a.with_precision(prec);
    }
    if mb - ma > gap {
        return BigFloat { mant: b_mant, exp: b.exp, prec }.normalize();
    }
    let e = a.exp.min(b.exp);
    let am = &a.mant << ((a.exp - e) as usize);
    let bm = b_mant << ((b.exp - e) as usize);
    BigFloat { mant: am + bm, exp: e, prec }.normalize()
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        add_impl(self, rhs, false)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        add_impl(self, rhs, true)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
            prec: self.prec.min(rhs.prec),
        }
        .normalize()
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let shift = (prec as i64 + rhs.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let mant = (&self.mant << (shift as usize)) / &rhs.mant;
        BigFloat { mant, exp: self.exp - shift - rhs.exp, prec }.normalize()
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;

    #[test]
    fn arithmetic_matches_rationals() {
        let p = 128;
        let a = BigFloat::from_rational(&rat_frac(1, 3), p);
        let b = BigFloat::from_rational(&rat_frac(-5, 7), p);
        let exact = rat_frac(1, 3) * rat_frac(-5, 7) + rat_frac(1, 3) / rat_frac(-5, 7);
        let got = &(&a * &b) + &(&a / &b);
        let err = (got.to_rational() - exact).abs();
        assert!(err < Rational::new(BigInt::one(), BigInt::one() << 120));
    }

    #[test]
    fn sqrt_two() {
        let two = BigFloat::from_int(2, 200);
        let r = two.sqrt();
        let sq = &r * &r;
        let err = (&sq - &two).abs();
        assert!(err.abs_le_pow2(-190));
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn mixed_precision_rounds_down() {
        let a = BigFloat::from_rational(&rat_frac(1, 3), 64);
        let b = BigFloat::from_rational(&rat_frac(1, 3), 256);
        assert_eq!((&a + &b).precision(), 64);
    }

    #[test]
    fn cancellation_and_gaps() {
        let a = BigFloat::from_int(1, 64);
        let tiny = BigFloat::from_int(1, 64).mul_pow2(-500);
        assert_eq!(&(&a + &tiny) - &a, BigFloat::zero(64));
        assert!((&a - &a).is_zero());
    }
}
