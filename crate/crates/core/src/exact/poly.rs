use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, constant term first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = den * q + r` with `deg r < deg den`.
    pub fn div_rem(&self, den: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = den.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in den.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, den: &RatPoly) -> Result<RatPoly> {
        Ok(self.div_rem(den)?.1)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.degree().unwrap_or(0) < 1 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }

    /// Rational roots by the rational-root theorem on the primitive integer
    /// multiple. Only intended for the small spot checks on user input.
    pub fn rational_roots(&self) -> Vec<Rational> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let Some(d) = self.degree() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
        }
        let low = ints.iter().find(|c| !c.is_zero()).cloned().unwrap();
        let high = ints[d].clone();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = num_traits::Signed::abs(n);
            let mut v = Vec::new();
            let mut i = BigInt::one();
            while &i * &i <= n {
                if (&n % &i).is_zero() {
                    v.push(i.clone());
                    v.push(&n / &i);
                }
                i += 1;
                if i > BigInt::from(1_000_000) {
                    break;
                }
            }
            v
        };
        for p in divisors(&low) {
            for q in divisors(&high) {
                for sign in [1, -1] {
                    let cand = Rational::new(p.clone() * sign, q.clone());
                    if !roots.contains(&cand) && self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// JSON-ready list of coefficient strings, constant first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = super::is_neg(c);
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&abs))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: RatPoly) -> RatPoly {
        &self + &rhs
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: RatPoly) -> RatPoly {
        &self - &rhs
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: RatPoly) -> RatPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn div_rem_examples() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), RatPoly::zero()));
        // 2^3 + 4*2 - 16 = 0, so T - 2 divides exactly
        let (q, r) = p(&[-16, 4, 0, 1]).div_rem(&p(&[-2, 1])).unwrap();
        assert_eq!((q, r), (p(&[8, 2, 1]), RatPoly::zero()));
        let (q, r) = p(&[0, 4, 0, 1]).div_rem(&p(&[0, 1])).unwrap();
        assert_eq!((q, r), (p(&[4, 0, 1]), RatPoly::zero()));
    }

    #[test]
    fn div_by_zero_poly() {
        assert!(matches!(
            p(&[1, 1]).div_rem(&RatPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = &p(&[-1, 1]) * &p(&[-1, 1]);
        let a = &a * &p(&[2, 1]);
        assert_eq!(a.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        let (g, s, t) = p(&[-1, 0, 1]).ext_gcd(&p(&[1, 1]));
        assert_eq!(g, p(&[1, 1]));
        assert_eq!(&(&s * &p(&[-1, 0, 1])) + &(&t * &p(&[1, 1])), g);
    }

    #[test]
    fn rational_roots_found() {
        let f = &p(&[-3, 2]) * &p(&[1, 1]);
        assert_eq!(f.rational_roots(), vec![rat(-1), rat_frac(3, 2)]);
        assert!(p(&[-1, -3, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 1, 1]).to_string(), "x^2 + x + 2");
        assert_eq!(p(&[-16, 0, 24, 0, 3]).to_string(), "3*x^4 + 24*x^2 - 16");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..=max_deg + 1).prop_map(|v| {
            RatPoly::new(v.into_iter().map(|(n, d)| rat_frac(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn div_rem_recovers_quotient(a in arb_poly(5), b in arb_poly(4), r in arb_poly(4)) {
            prop_assume!(b.degree().unwrap_or(0) >= 1);
            let (_, r) = r.div_rem(&b).unwrap();
            let num = &(&a * &b) + &r;
            let (q2, r2) = num.div_rem(&b).unwrap();
            prop_assert_eq!(q2, a);
            prop_assert_eq!(r2, r);
        }
    }
}
