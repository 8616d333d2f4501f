//! Integer helpers shared by the concrete ring instances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest integer the trial-division factorizer accepts.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

/// Extended Euclid: returns `(g, x, y)` with `x*a + y*b = g` and `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.abs(), b.abs());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if a.is_negative() {
        old_s = -old_s;
    }
    if b.is_negative() {
        old_t = -old_t;
    }
    (old_r, old_s, old_t)
}

/// Extended gcd of a list: `g = sum(coeffs[i] * values[i])`, `g >= 0`.
pub fn ext_gcd_many(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(values.len());
    for v in values {
        let (h, x, y) = ext_gcd(&g, v);
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = h;
    }
    (g, coeffs)
}

/// Largest divisor of `|a|` coprime to `b`. Requires `a != 0`.
pub fn coprime_part(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(!a.is_zero());
    let mut c = a.abs();
    loop {
        let g = c.gcd(b);
        if g.is_one() {
            return c;
        }
        c /= g;
    }
}

pub fn modulo(a: &BigInt, n: &BigInt) -> BigInt {
    a.mod_floor(n)
}

pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(a, n);
    if g.is_one() {
        Some(x.mod_floor(n))
    } else {
        None
    }
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(residues: &[BigInt], moduli: &[BigInt]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues.iter().zip(moduli) {
        // x + m*t = r (mod mi)
        let inv = mod_inverse(&m, mi).expect("moduli must be pairwise coprime");
        let t = ((r - &x) * inv).mod_floor(mi);
        x += &m * t;
        m *= mi;
    }
    x.mod_floor(&m)
}

/// Prime factorization of `|n|` by trial division. `n` must be nonzero and at
/// most [`FACTOR_LIMIT`] in absolute value.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut rest = n
        .abs()
        .to_u64()
        .filter(|v| *v <= FACTOR_LIMIT)
        .ok_or_else(|| Error::ScaleExceeded(format!("cannot factor {n}")))?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            out.push((BigInt::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((BigInt::from(rest), 1));
    }
    Ok(out)
}

/// All positive divisors of `|n|`, ascending.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Miller-Rabin with the first twelve prime bases; deterministic below 3.3e24.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
