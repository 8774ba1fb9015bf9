//! Residue fields `F_p[u]/(g)` of a number field and point counting on
//! `y^2 = x^3 + a x` over them.

pub mod fppoly;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{RatPoly, Rational};
use fppoly::FpPoly;

const SPLIT_SEED: u64 = 0x5eed_f00d;
/// Operational cap on the size of a residue field used for enumeration.
pub const MAX_COUNT_FIELD_SIZE: u64 = 10_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Odd primes in increasing order, starting at 3.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime(n))
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    let inv = fppoly::inv_mod(den, p)?;
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

pub fn reduce_poly(f: &RatPoly, p: u64) -> Result<FpPoly> {
    f.coeffs()
        .iter()
        .map(|c| reduce_rational(c, p).ok_or(Error::BadPrime(p)))
        .collect::<Result<Vec<_>>>()
        .map(fppoly::trim)
}

/// Factorization of `minpoly mod p` into monic irreducibles with
/// multiplicities, sorted by degree then coefficients.
pub fn split_minpoly_mod_p(minpoly: &RatPoly, p: u64) -> Result<Vec<(FpPoly, usize)>> {
    if p.is_multiple_of(2) || !is_prime(p) || p >= 1 << 32 {
        return Err(Error::BadPrime(p));
    }
    let f = reduce_poly(minpoly, p)?;
    if fppoly::degree(&f) != minpoly.degree() {
        return Err(Error::BadPrime(p));
    }
    if fppoly::degree(&f).unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    if !fppoly::is_one(&fppoly::gcd(&f, &fppoly::derivative(&f, p), p)) {
        return Err(Error::BadPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ p);
    let mut factors = fppoly::factor_squarefree(&f, p, &mut rng);
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(factors.into_iter().map(|g| (g, 1)).collect())
}

/// `F_p[u]/(g)` with `g` monic irreducible of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub p: u64,
    pub g: FpPoly,
    pub k: usize,
    pub q: BigUint,
}

impl ResidueField {
    pub fn new(p: u64, g: FpPoly) -> Self {
        let k = fppoly::degree(&g).expect("nonconstant modulus");
        ResidueField { p, k, q: BigUint::from(p).pow(k as u32), g }
    }

    pub fn q_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }

    /// Image of an element given by power-basis coordinates.
    pub fn reduce(&self, coeffs: &[Rational]) -> Result<FpPoly> {
        let v = coeffs
            .iter()
            .map(|c| reduce_rational(c, self.p).ok_or(Error::BadPrime(self.p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(fppoly::rem(&v, &self.g, self.p))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        fppoly::mul_mod(a, b, &self.g, self.p)
    }

    pub fn pow(&self, a: &[u64], e: &BigUint) -> FpPoly {
        fppoly::pow_poly_mod(a, e, &self.g, self.p)
    }

    pub fn encode(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn decode(&self, mut n: u64) -> FpPoly {
        let mut out = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            out.push(n % self.p);
            n /= self.p;
        }
        fppoly::trim(out)
    }
}

/// Euler's criterion: `a^((q-1)/2) = 1`.
pub fn ff_is_square(field: &ResidueField, a: &[u64]) -> Result<bool> {
    let a = fppoly::rem(a, &field.g, field.p);
    if a.is_empty() {
        return Err(Error::ZeroInput);
    }
    let e = (&field.q - 1u32) >> 1;
    Ok(fppoly::is_one(&field.pow(&a, &e)))
}

/// `#E(F_q)` for `y^2 = x^3 + a x`, including the point at infinity.
pub fn ec_count_points(a: &Rational, field: &ResidueField) -> Result<u64> {
    let p = field.p;
    let a_red = reduce_rational(a, p).ok_or(Error::SingularReduction(p))?;
    if a_red == 0 {
        return Err(Error::SingularReduction(p));
    }
    let q = field
        .q_u64()
        .filter(|&q| q <= MAX_COUNT_FIELD_SIZE)
        .ok_or_else(|| Error::InvalidInput(format!("residue field of size {} too large", field.q)))?;
    let count = if field.k == 1 {
        let square: Vec<bool> = {
            let mut s = vec![false; q as usize];
            for x in 0..q {
                s[((x * x) % q) as usize] = true;
            }
            s
        };
        let mut n = 1u64;
        for x in 0..q {
            let v = ((x * x % q * x) % q + a_red * x % q) % q;
            n += if v == 0 { 1 } else if square[v as usize] { 2 } else { 0 };
        }
        n
    } else {
        let mut square = vec![false; q as usize];
        let elems: Vec<FpPoly> = (0..q).map(|n| field.decode(n)).collect();
        for x in &elems {
            square[field.encode(&field.mul(x, x)) as usize] = true;
        }
        let mut n = 1u64;
        for x in &elems {
            let x2 = field.mul(x, x);
            let rhs = fppoly::add(&field.mul(&x2, x), &fppoly::mul(&[a_red], x, p), p);
            let code = field.encode(&rhs);
            n += if code == 0 { 1 } else if square[code as usize] { 2 } else { 0 };
        }
        n
    };
    let diff = count as i128 - q as i128 - 1;
    if diff * diff > 4 * q as i128 {
        return Err(Error::Internal(format!("Hasse bound violated: {count} points over F_{q}")));
    }
    Ok(count)
}

/// Residue fields at the first `primes` good odd primes for `minpoly`.
pub fn good_residue_fields(minpoly: &RatPoly, primes: usize) -> Vec<(u64, Vec<ResidueField>)> {
    odd_primes()
        .take(2000)
        .filter_map(|p| {
            split_minpoly_mod_p(minpoly, p)
                .ok()
                .map(|fs| (p, fs.into_iter().map(|(g, _)| ResidueField::new(p, g)).collect()))
        })
        .take(primes)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn brute_count(a: i64, p: u64) -> u64 {
        // independent oracle: count pairs directly
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = (y * y) as i128;
                let rhs = (x * x * x) as i128 + a as i128 * x as i128;
                if (lhs - rhs).rem_euclid(p as i128) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts_over_prime_fields() {
        let f5 = ResidueField::new(5, vec![0, 1]);
        assert_eq!(ec_count_points(&rat(4), &f5).unwrap(), 8);
        assert_eq!(ec_count_points(&rat(-4), &f5).unwrap(), 4);
        for p in [3u64, 7, 11, 13, 17, 19, 23] {
            let f = ResidueField::new(p, vec![0, 1]);
            assert_eq!(ec_count_points(&rat(4), &f).unwrap(), brute_count(4, p));
            assert_eq!(ec_count_points(&rat(-4), &f).unwrap(), brute_count(-4, p));
        }
        assert_eq!(brute_count(4, 13), 8);
    }

    #[test]
    fn count_over_f9_matches_pairs() {
        // F_9 = F_3[u]/(u^2+1); oracle enumerates all (x, y) pairs
        let f9 = ResidueField::new(3, vec![1, 0, 1]);
        let mut n = 1;
        for xc in 0..9 {
            let x = f9.decode(xc);
            let rhs = fppoly::add(&f9.mul(&f9.mul(&x, &x), &x), &fppoly::mul(&[1], &x, 3), 3);
            for yc in 0..9 {
                let y = f9.decode(yc);
                if f9.mul(&y, &y) == rhs {
                    n += 1;
                }
            }
        }
        assert_eq!(ec_count_points(&rat(4), &f9).unwrap(), n);
    }

    #[test]
    fn splitting_examples() {
        let f = RatPoly::from_ints(&[1, 0, 0, 0, 1]);
        let fs = split_minpoly_mod_p(&f, 3).unwrap();
        assert_eq!(fs, vec![(vec![2, 1, 1], 1), (vec![2, 2, 1], 1)]);
        let g = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(split_minpoly_mod_p(&g, 5).unwrap(), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        assert_eq!(split_minpoly_mod_p(&g, 3).unwrap(), vec![(vec![1, 0, 1], 1)]);
        assert_eq!(split_minpoly_mod_p(&g, 2), Err(Error::BadPrime(2)));
        // t^4 + 1 splits completely mod 17
        assert_eq!(split_minpoly_mod_p(&f, 17).unwrap().len(), 4);
        // x^2 - 9 is not squarefree mod 3
        assert_eq!(split_minpoly_mod_p(&RatPoly::from_ints(&[-9, 0, 1]), 3), Err(Error::BadPrime(3)));
    }

    #[test]
    fn euler_criterion() {
        let f5 = ResidueField::new(5, vec![0, 1]);
        assert!(!ff_is_square(&f5, &[2]).unwrap());
        assert!(ff_is_square(&f5, &[4]).unwrap());
        assert_eq!(ff_is_square(&f5, &[]), Err(Error::ZeroInput));
        // u in F_9: u^4 = 1, so u is a square there (u = (1+u)^2 / 2 ... oracle below)
        let f9 = ResidueField::new(3, vec![1, 0, 1]);
        let oracle = (0..9).any(|c| {
            let y = f9.decode(c);
            f9.mul(&y, &y) == vec![0, 1]
        });
        assert!(oracle);
        assert!(ff_is_square(&f9, &[0, 1]).unwrap());
    }

    #[test]
    fn good_primes_skip_ramified() {
        let f = RatPoly::from_ints(&[-2, 0, 1]);
        let ps: Vec<u64> = good_residue_fields(&f, 3).iter().map(|(p, _)| *p).collect();
        assert_eq!(ps, vec![3, 5, 7]);
        let f = RatPoly::from_ints(&[7, 0, 1]);
        let ps: Vec<u64> = good_residue_fields(&f, 3).iter().map(|(p, _)| *p).collect();
        assert_eq!(ps, vec![3, 5, 11]);
    }

    proptest! {
        #[test]
        fn split_factors_multiply_back(c in prop::collection::vec(-20i64..20, 1..6), pi in 0usize..8) {
            let p = odd_primes().nth(pi).unwrap();
            let mut coeffs = c;
            coeffs.push(1);
            let f = RatPoly::from_ints(&coeffs);
            if let Ok(fs) = split_minpoly_mod_p(&f, p) {
                let prod = fs.iter().fold(vec![1u64], |acc, (g, _)| fppoly::mul(&acc, g, p));
                prop_assert_eq!(prod, reduce_poly(&f, p).unwrap());
            }
        }

        #[test]
        fn squares_are_squares(x in prop::collection::vec(0u64..7, 1..3)) {
            // F_49 = F_7[u]/(u^2+1)
            let f = ResidueField::new(7, vec![1, 0, 1]);
            let x = fppoly::trim(x);
            prop_assume!(!x.is_empty());
            prop_assert!(ff_is_square(&f, &f.mul(&x, &x)).unwrap());
        }

        #[test]
        fn hasse_window_holds(pi in 0usize..40, sign in prop::bool::ANY) {
            let p = odd_primes().nth(pi).unwrap();
            let a = if sign { rat(4) } else { rat(-4) };
            ec_count_points(&a, &ResidueField::new(p, vec![0, 1])).unwrap();
        }
    }
}
