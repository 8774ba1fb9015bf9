use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Best continued-fraction convergent of `approx` with denominator at most
/// `denominator_bound`, accepted only if it lies within `2^(-precision/2)`.
///
/// `approx` is the exact dyadic value of a high-precision float.
pub fn cf_round(approx: &Rational, precision_bits: u32, denominator_bound: &BigInt) -> Option<Rational> {
    assert!(denominator_bound >= &BigInt::one(), "denominator bound must be positive");
    let (mut num, mut den) = (approx.numer().clone(), approx.denom().clone());
    // convergents h_k / k_k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut best: Option<Rational> = None;
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > denominator_bound {
            break;
        }
        best = Some(Rational::new(h_next.clone(), k_next.clone()));
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        num = std::mem::replace(&mut den, r);
    }
    let best = best?;
    let residual = (approx - &best).abs();
    let threshold = Rational::new(BigInt::one(), BigInt::one() << (precision_bits / 2));
    (residual <= threshold).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;

    fn dyadic(x: f64) -> Rational {
        Rational::from_float(x).unwrap()
    }

    #[test]
    fn recovers_simple_fractions() {
        // 1/3 to 40 bits
        let third = Rational::new(BigInt::from((1u64 << 40) / 3), BigInt::one() << 40);
        assert_eq!(cf_round(&third, 60, &BigInt::from(100)), Some(rat_frac(1, 3)));
        assert_eq!(cf_round(&dyadic(0.5), 256, &BigInt::from(10)), Some(rat_frac(1, 2)));
        assert_eq!(cf_round(&dyadic(-2.25), 256, &BigInt::from(10)), Some(rat_frac(-9, 4)));
    }

    #[test]
    fn pi_has_no_small_candidate() {
        // pi truncated to 256 bits; the best convergent with q <= 10 is 22/7
        let pi_digits: BigInt = "31415926535897932384626433832795028841971693993751058209749445923078164062862"
            .parse()
            .unwrap();
        let scale = BigInt::from(10).pow(76);
        let pi = Rational::new(pi_digits, scale);
        let bits = 256;
        let scaled = (&pi * Rational::from_integer(BigInt::one() << bits)).floor();
        let pi_bits = scaled / Rational::from_integer(BigInt::one() << bits);
        assert_eq!(cf_round(&pi_bits, bits, &BigInt::from(10)), None);
        // the oracle: with a huge tolerance the convergent is 22/7
        assert_eq!(cf_round(&pi_bits, 2, &BigInt::from(10)), Some(rat_frac(22, 7)));
    }
}
