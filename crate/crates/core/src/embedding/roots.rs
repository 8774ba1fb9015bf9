//! Simultaneous (Aberth–Ehrlich) iteration for all complex roots.

use std::cmp::Ordering;

use super::{BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::exact::RatPoly;

const MAX_ITERATIONS: usize = 200;
/// Bits of slack between the working precision and the convergence test.
const SLACK_BITS: i64 = 24;

/// All complex roots of a squarefree rational polynomial, deterministically
/// ordered.
pub fn complex_roots(poly: &RatPoly, prec: u32) -> Result<Vec<BigComplex>> {
    let coeffs: Vec<BigComplex> = poly
        .coeffs()
        .iter()
        .map(|c| BigComplex::from_rational(c, prec))
        .collect();
    complex_roots_of(&coeffs, prec)
}

fn horner(coeffs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.precision();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

/// All roots of a squarefree polynomial with complex coefficients (constant
/// term first). The leading coefficient must be nonzero.
pub fn complex_roots_of(coeffs: &[BigComplex], prec: u32) -> Result<Vec<BigComplex>> {
    let mut coeffs: Vec<BigComplex> = coeffs.to_vec();
    while coeffs.last().is_some_and(BigComplex::is_zero) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg].clone();
    let monic: Vec<BigComplex> = coeffs.iter().map(|c| c / &lead).collect();
    if deg == 1 {
        return Ok(vec![-&monic[0]]);
    }

    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm_sqr().to_f64().sqrt())
            .fold(0.0f64, f64::max);
    let mut z: Vec<BigComplex> = (0..deg)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / deg as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * k as f64);
            BigComplex::from_f64(r * theta.cos(), r * theta.sin(), prec)
        })
        .collect();

    let tol = -2 * (prec as i64 - SLACK_BITS);
    let loose = -2 * (prec as i64 * 3 / 4);
    let one = BigComplex::one(prec);
    let mut converged = false;
    let mut last_worst = i64::MAX;
    for _ in 0..MAX_ITERATIONS {
        let mut worst = i64::MIN;
        for k in 0..deg {
            let (p, dp) = horner(&monic, &z[k]);
            if p.is_zero() {
                continue;
            }
            let newton = if dp.is_zero() { p.clone() } else { &p / &dp };
            let mut sum = BigComplex::zero(prec);
            for j in 0..deg {
                if j != k {
                    let diff = &z[k] - &z[j];
                    if !diff.is_zero() {
                        sum = &sum + &(&one / &diff);
                    }
                }
            }
            let denom = &one - &(&newton * &sum);
            let step = if denom.is_zero() { newton } else { &newton / &denom };
            z[k] = &z[k] - &step;
            let scale = z[k].norm_sqr().magnitude().unwrap_or(0).max(0);
            let m = step.norm_sqr().magnitude().map_or(i64::MIN, |m| m - scale);
            worst = worst.max(m);
        }
        last_worst = worst;
        if worst <= tol {
            converged = true;
            break;
        }
    }
    if !converged && last_worst > loose {
        return Err(Error::NonConvergence { bits: prec });
    }
    sort_roots(&mut z, prec);
    Ok(z)
}

/// Sort by real part, then imaginary part; real parts within `2^(-prec/2)`
/// (relative) are treated as equal.
pub fn sort_roots(z: &mut [BigComplex], prec: u32) {
    let close = |a: &BigFloat, b: &BigFloat| {
        let scale = a.magnitude().unwrap_or(0).max(b.magnitude().unwrap_or(0)).max(0);
        (a - b).abs_le_pow2(scale - prec as i64 / 2)
    };
    z.sort_by(|a, b| {
        if close(&a.re, &b.re) {
            if close(&a.im, &b.im) {
                Ordering::Equal
            } else {
                a.im.cmp(&b.im)
            }
        } else {
            a.re.cmp(&b.re)
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn approx(z: &BigComplex) -> (f64, f64) {
        z.to_f64()
    }

    #[test]
    fn roots_of_x2_plus_1() {
        let r = complex_roots(&RatPoly::from_ints(&[1, 0, 1]), 256).unwrap();
        assert_eq!(r.len(), 2);
        let (a, b) = (approx(&r[0]), approx(&r[1]));
        assert!(a.0.abs() < 1e-30 && (a.1 + 1.0).abs() < 1e-15);
        assert!(b.0.abs() < 1e-30 && (b.1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn biquadratic_roots() {
        // x^4 - 2x^2 - 1: x^2 = 1 +- sqrt(2)
        let r = complex_roots(&RatPoly::from_ints(&[-1, 0, -2, 0, 1]), 256).unwrap();
        let big = (1.0 + 2f64.sqrt()).sqrt();
        let small = (2f64.sqrt() - 1.0).sqrt();
        let got: Vec<(f64, f64)> = r.iter().map(approx).collect();
        let want = [(-big, 0.0), (0.0, -small), (0.0, small), (big, 0.0)];
        for (g, w) in got.iter().zip(want) {
            assert!((g.0 - w.0).abs() < 1e-12 && (g.1 - w.1).abs() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn omega_roots() {
        // x^2 + x + 2 -> (-1 +- sqrt(-7))/2
        let r = complex_roots(&RatPoly::from_ints(&[2, 1, 1]), 256).unwrap();
        let s7 = 7f64.sqrt() / 2.0;
        assert!((approx(&r[0]).0 + 0.5).abs() < 1e-15 && (approx(&r[0]).1 + s7).abs() < 1e-15);
        assert!((approx(&r[1]).1 - s7).abs() < 1e-15);
        // residuals are tiny at the working precision
        for z in &r {
            let poly = RatPoly::from_ints(&[2, 1, 1]);
            let c: Vec<BigComplex> =
                poly.coeffs().iter().map(|c| BigComplex::from_rational(c, 256)).collect();
            let (p, _) = horner(&c, z);
            assert!(p.norm_sqr_le_pow2(-400));
        }
    }

    #[test]
    fn ordering_is_deterministic() {
        let f = RatPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let a = complex_roots(&f, 256).unwrap();
        let b = complex_roots(&f, 256).unwrap();
        assert_eq!(a, b);
        let _ = rat(0);
    }
}
