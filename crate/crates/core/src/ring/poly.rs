//! Dense univariate polynomials over a prime field, stored little-endian with
//! no trailing zeros. Coefficients live in `[0, p)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int::mod_inverse;

pub type Poly = Vec<BigInt>;

pub fn trim(mut v: Poly) -> Poly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn reduce(v: impl IntoIterator<Item = BigInt>, p: &BigInt) -> Poly {
    trim(v.into_iter().map(|c| c.mod_floor(p)).collect())
}

pub fn constant(c: BigInt, p: &BigInt) -> Poly {
    reduce([c], p)
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Poly {
    let n = a.len().max(b.len());
    reduce(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()),
        p,
    )
}

pub fn neg(a: &[BigInt], p: &BigInt) -> Poly {
    reduce(a.iter().map(|c| -c), p)
}

pub fn sub(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn mul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(out, p)
}

pub fn scale(a: &[BigInt], c: &BigInt, p: &BigInt) -> Poly {
    reduce(a.iter().map(|x| x * c), p)
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = mod_inverse(&b[db], p).expect("leading coefficient invertible over a field");
    let mut rem: Poly = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = (&rem[dr] * &lead_inv).mod_floor(p);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = (&rem[shift + i] - &coef * bc).mod_floor(p);
        }
        quot[shift] = coef;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Splits `a` into its leading coefficient and monic part. Zero maps to `(1, 0)`.
pub fn monic(a: &[BigInt], p: &BigInt) -> (BigInt, Poly) {
    match a.last() {
        None => (BigInt::one(), Vec::new()),
        Some(lead) => {
            let inv = mod_inverse(lead, p).expect("nonzero coefficient over a field");
            (lead.clone(), scale(a, &inv, p))
        }
    }
}

/// Extended Euclid: `(g, x, y)` with `x*a + y*b = g`, `g` monic (or zero).
pub fn ext_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Poly, Poly, Poly) {
    let (mut old_r, mut r) = (a.to_vec(), b.to_vec());
    let (mut old_s, mut s) = (constant(BigInt::one(), p), Vec::new());
    let (mut old_t, mut t) = (Vec::new(), constant(BigInt::one(), p));
    while !r.is_empty() {
        let (q, rem) = divrem(&old_r, &r, p);
        old_r = std::mem::replace(&mut r, rem);
        let next_s = sub(&old_s, &mul(&q, &s, p), p);
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = sub(&old_t, &mul(&q, &t, p), p);
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_empty() {
        return (old_r, old_s, old_t);
    }
    let (lead, g) = monic(&old_r, p);
    let inv = mod_inverse(&lead, p).expect("nonzero lead");
    (g, scale(&old_s, &inv, p), scale(&old_t, &inv, p))
}
