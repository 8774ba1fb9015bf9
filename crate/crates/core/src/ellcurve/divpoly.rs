use std::collections::HashMap;

use super::CurveSpec;
use crate::error::{Error, Result};
use crate::exact::{rat, RatPoly, Rational};
use crate::numberfield::KPoly;

/// `g_n` with `psi_n = g_n` for odd `n` and `psi_n = 2y g_n` for even `n`,
/// on `y^2 = x^3 + a x`.
fn g(n: u64, a: &Rational, memo: &mut HashMap<u64, RatPoly>) -> RatPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let x = |k: usize, c: Rational| RatPoly::monomial(c, k);
    let a2 = a * a;
    let out = match n {
        0 => RatPoly::zero(),
        1 | 2 => RatPoly::one(),
        3 => &(&x(4, rat(3)) + &x(2, a * rat(6))) - &RatPoly::constant(a2),
        4 => {
            let inner = &(&(&x(6, rat(1)) + &x(4, a * rat(5)))
                - &x(2, &a2 * rat(5)))
                - &RatPoly::constant(&a2 * a);
            inner.scale(&rat(2))
        }
        _ => {
            // F = (2y)^2 = 4(x^3 + a x)
            let f = RatPoly::new(vec![rat(0), a * rat(4), rat(0), rat(4)]);
            let f2 = &f * &f;
            let m = n / 2;
            if n % 2 == 1 {
                let (gm2, gm, gm1, gp1) = (g(m + 2, a, memo), g(m, a, memo), g(m - 1, a, memo), g(m + 1, a, memo));
                let mut t1 = &gm2 * &gm.pow(3);
                let mut t2 = &gm1 * &gp1.pow(3);
                if m.is_multiple_of(2) {
                    t1 = &t1 * &f2;
                } else {
                    t2 = &t2 * &f2;
                }
                &t1 - &t2
            } else {
                let (gm, gm2, gm1, gmm2, gp1) =
                    (g(m, a, memo), g(m + 2, a, memo), g(m - 1, a, memo), g(m - 2, a, memo), g(m + 1, a, memo));
                &gm * &(&(&gm2 * &gm1.pow(2)) - &(&gmm2 * &gp1.pow(2)))
            }
        }
    };
    memo.insert(n, out.clone());
    out
}

/// The odd division polynomial `psi_ell` over Q.
pub fn division_poly_over_q(a: &Rational, ell: u64) -> RatPoly {
    g(ell, a, &mut HashMap::new())
}

pub fn ec_division_poly(curve: &CurveSpec, ell: u64) -> Result<KPoly> {
    if ![3, 5, 7].contains(&ell) {
        return Err(Error::UnsupportedPrime(ell));
    }
    Ok(KPoly::from_rat_poly(&curve.field, &division_poly_over_q(&curve.a, ell)))
}
