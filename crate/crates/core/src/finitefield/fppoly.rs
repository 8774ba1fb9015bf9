//! Dense polynomials over F_p, constant term first, `p < 2^32`.

use num_bigint::BigUint;
use rand::Rng;

pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (a as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(p as i128) as u64)
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], inv, p);
        q[dr - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[dr - db + j] = (r[dr - db + j] + p - mulmod(c, bj, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    div_rem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p).unwrap();
            a[..=d].iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &[u64], p: u64) -> FpPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> FpPoly {
    rem(&mul(a, b, p), m, p)
}

pub fn pow_poly_mod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = rem(&[1], m, p);
    let base = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = mul_mod(&acc, &acc, m, p);
        if e.bit(i) {
            acc = mul_mod(&acc, &base, m, p);
        }
    }
    acc
}

pub fn is_one(a: &[u64]) -> bool {
    a == [1]
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial. Factors are returned monic, in no particular order.
pub fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<FpPoly> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x: FpPoly = vec![0, 1];
    let pb = BigUint::from(p);
    let mut h = rem(&x, &f, p);
    let mut d = 1usize;
    while degree(&f).unwrap_or(0) >= 2 * d {
        h = pow_poly_mod(&h, &pb, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if !is_one(&g) {
            equal_degree(&g, d, p, rng, &mut out);
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
        d += 1;
    }
    if degree(&f).unwrap_or(0) > 0 {
        out.push(monic(&f, p));
    }
    out
}

fn equal_degree<R: Rng>(g: &[u64], d: usize, p: u64, rng: &mut R, out: &mut Vec<FpPoly>) {
    let n = degree(g).unwrap_or(0);
    if n == d {
        out.push(monic(g, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = sub(&pow_poly_mod(&a, &e, g, p), &[1], p);
        let h = gcd(g, &b, p);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let rest = div_rem(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&rest, d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverses() {
        for a in 1..13 {
            assert_eq!(mulmod(a, inv_mod(a, 13).unwrap(), 13), 1);
        }
        assert_eq!(inv_mod(0, 13), None);
    }

    proptest! {
        #[test]
        fn div_rem_identity(a in prop::collection::vec(0u64..17, 0..8), b in prop::collection::vec(0u64..17, 1..5)) {
            let b = trim(b);
            prop_assume!(!b.is_empty());
            let (q, r) = div_rem(&a, &b, 17);
            prop_assert_eq!(add(&mul(&q, &b, 17), &r, 17), trim(a));
            prop_assert!(degree(&r).is_none_or(|dr| dr < degree(&b).unwrap()));
        }
    }
}
