//! Adequate and pi-adequate factorizations.
//!
//! A split of `a` (or of a power `a^m`) relative to `b` is a factorization
//! `a^m = r * s` where `r` is coprime to `b` and every non-unit divisor of `s`
//! shares a non-unit common divisor with `b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{int, poly, BezoutData, Elem, Ring, RingKind, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdequateSplit {
    /// Part coprime to `b`.
    pub r: Elem,
    /// Part whose non-unit divisors all meet `b`.
    pub s: Elem,
    /// Exponent `m` with `a^m = r * s`.
    pub power: u32,
    /// Gcd data for `(r, b)`; its `g` is a unit.
    pub witness: BezoutData,
}

/// Gcd-extraction split over Z or F_p[x]: move `gcd(r, b)` from `r` into `s`
/// until the gcd is a unit.
pub fn adequate_split(a: &Elem, b: &Elem) -> Result<AdequateSplit> {
    let ring = a.ring();
    let cap = match ring.kind() {
        RingKind::Integers => a.as_integer().map_or(0, |v| v.bits() as usize),
        RingKind::PolyOverPrimeField(_) => a.as_poly().map_or(0, |c| c.len()),
        _ => {
            return Err(Error::UnsupportedRing {
                op: "adequate_split",
                ring: ring.to_string(),
            })
        }
    };
    a.try_add(b)?;
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut r = a.clone();
    let mut s = ring.one();
    // |r| (or deg r) strictly drops on every non-unit gcd
    for _ in 0..=cap {
        let d = r.bezout(b)?;
        if d.g.is_unit() {
            return Ok(AdequateSplit {
                r,
                s,
                power: 1,
                witness: d,
            });
        }
        r = r.divide_exact(&d.g)?;
        s = &s * &d.g;
    }
    unreachable!("gcd extraction ran past the size of {a:?}")
}

/// Prime-power factorization of the modulus together with `m`, the largest
/// exponent: `a^m` is unit-regular for every residue `a`.
fn modulus_profile(n: &BigInt) -> Result<(Vec<BigInt>, Vec<BigInt>, u32)> {
    let factors = int::factor(n)?;
    let power = factors.iter().map(|(_, e)| *e).max().unwrap_or(1);
    let primes = factors.iter().map(|(p, _)| p.clone()).collect();
    let moduli = factors.iter().map(|(p, e)| p.pow(*e)).collect();
    Ok((primes, moduli, power))
}

/// Unit `u` with `x u x = x` for `x = a^m`: on each prime-power component the
/// inverse of `x` when it is a unit there, 1 otherwise (where `x` vanishes).
fn unit_regular_witness(x: &BigInt, primes: &[BigInt], moduli: &[BigInt]) -> BigInt {
    let residues: Vec<BigInt> = primes
        .iter()
        .zip(moduli)
        .map(|(p, q)| {
            if (x % p).is_zero() {
                BigInt::one()
            } else {
                int::mod_inverse(&x.mod_floor(q), q).expect("unit on this component")
            }
        })
        .collect();
    int::crt(&residues, moduli)
}

/// Idempotent construction over Z/n: with `e = a^m u` and `f = b^m v`,
/// `a^m = (1 - f + ef) * ((e + f - ef) u^-1)`; the first factor is coprime to `b`.
pub fn pi_adequate_split_zn(a: &Elem, b: &Elem) -> Result<AdequateSplit> {
    zn_split(a, b, None)
}

/// `power` overrides the exponent; it must be at least every prime-power
/// exponent of the modulus.
fn zn_split(a: &Elem, b: &Elem, power: Option<u32>) -> Result<AdequateSplit> {
    let ring = a.ring();
    let n = ring
        .modulus()
        .ok_or_else(|| Error::UnsupportedRing {
            op: "pi_adequate_split_zn",
            ring: ring.to_string(),
        })?
        .clone();
    a.try_add(b)?;
    let (primes, moduli, least) = modulus_profile(&n)?;
    let power = power.map_or(least, |p| p.max(least));
    let am = a.pow(power);
    let bm = b.pow(power);
    let lift = |e: &Elem| e.as_integer().expect("residue").clone();
    let u = ring.from_int(&unit_regular_witness(&lift(&am), &primes, &moduli));
    let v = ring.from_int(&unit_regular_witness(&lift(&bm), &primes, &moduli));
    debug_assert!(&(&am * &u) * &am == am && &(&bm * &v) * &bm == bm);
    let e = &am * &u;
    let f = &bm * &v;
    let ef = &e * &f;
    let one = ring.one();
    let joined = &(&e + &f) - &ef;
    let coprime = &(&one - &f) + &ef;
    let rest = &joined * &u.inverse().expect("u is a unit");
    debug_assert_eq!(&coprime * &rest, am);
    let witness = coprime.bezout(b)?;
    Ok(AdequateSplit {
        r: coprime,
        s: rest,
        power,
        witness,
    })
}

/// Least exponent making [`pi_split`] work on every component.
fn split_power(ring: &Ring) -> Result<u32> {
    match ring.kind() {
        RingKind::Modular(n) => Ok(modulus_profile(n)?.2),
        RingKind::Product(fs) => fs
            .iter()
            .map(split_power)
            .try_fold(1, |acc, p| p.map(|p| acc.max(p))),
        _ => Ok(1),
    }
}

fn split_with_power(a: &Elem, b: &Elem, power: u32) -> Result<AdequateSplit> {
    let ring = a.ring();
    match ring.kind() {
        RingKind::Modular(_) => zn_split(a, b, Some(power)),
        RingKind::Product(fs) => {
            let (mut rs, mut ss) = (Vec::new(), Vec::new());
            for k in 0..fs.len() {
                let comp = |e: &Elem| e.components().expect("tuple")[k].clone();
                let part = split_with_power(&comp(a), &comp(b), power)?;
                rs.push(part.r);
                ss.push(part.s);
            }
            let r = ring.tuple(rs)?;
            let witness = r.bezout(b)?;
            Ok(AdequateSplit {
                r,
                s: ring.tuple(ss)?,
                power,
                witness,
            })
        }
        _ => {
            // a^m = r^m s^m keeps both conditions
            let part = adequate_split(a, b)?;
            let r = part.r.pow(power);
            let witness = r.bezout(b)?;
            Ok(AdequateSplit {
                r,
                s: part.s.pow(power),
                power,
                witness,
            })
        }
    }
}

/// The split used by the 2x2 reduction step: plain adequacy over Z and F_p[x],
/// the idempotent construction over Z/n, componentwise with a common
/// exponent over products.
pub fn pi_split(a: &Elem, b: &Elem) -> Result<AdequateSplit> {
    a.try_add(b)?;
    split_with_power(a, b, split_power(a.ring())?)
}

/// Lifts the integer adequate split `y = s t` of the constant term of `f`
/// (relative to the constant term of `g`) to a factorization
/// `f = s(x) t(x) mod x^k` in the truncated series ring.
pub fn series_split(f: &Elem, g: &Elem) -> Result<(Elem, Elem)> {
    let ring = f.ring();
    f.try_add(g)?;
    let (y, b, z) = match (f.value(), g.value()) {
        (
            Value::Series {
                constant: y,
                tail: b,
            },
            Value::Series { constant: z, .. },
        ) => (y, b, z),
        _ => {
            return Err(Error::UnsupportedRing {
                op: "series_split",
                ring: ring.to_string(),
            })
        }
    };
    if y.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let z_ring = Ring::integers();
    let split = adequate_split(&z_ring.from_int(y), &z_ring.from_int(z))?;
    let s = split.r.as_integer().expect("integer").clone();
    let t = split.s.as_integer().expect("integer").clone();
    let (h, s_bar, t_bar) = int::ext_gcd(&s, &t);
    if !h.is_one() {
        return Err(Error::NotCoprime(s.to_string(), t.to_string()));
    }
    let (s_q, t_q) = (
        BigRational::from_integer(s.clone()),
        BigRational::from_integer(t.clone()),
    );
    let t_bar = BigRational::from_integer(t_bar);
    let _ = s_bar;
    let mut d: Vec<BigRational> = Vec::with_capacity(b.len());
    let mut e: Vec<BigRational> = Vec::with_capacity(b.len());
    for i in 0..b.len() {
        // coefficient i+1: s e + d t = b - sum_{j=1}^{i} d_j e_{i+1-j}
        let carry: BigRational = (1..=i).map(|j| &d[j - 1] * &e[i - j]).sum();
        let rhs = &b[i] - carry;
        let di = &rhs * &t_bar;
        let ei = (&rhs - &di * &t_q) / &s_q;
        d.push(di);
        e.push(ei);
    }
    Ok((ring.series(s, d)?, ring.series(t, e)?))
}

/// Outcome of [`verify_adequate`]: every violated clause is listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdequacyReport {
    pub holds: bool,
    pub failures: Vec<String>,
    pub divisors_checked: usize,
}

const INT_DIVISOR_LIMIT: u64 = int::FACTOR_LIMIT;
const POLY_DEGREE_LIMIT: usize = 12;
const POLY_TRIAL_LIMIT: u64 = 1_000_000;
const MODULAR_LIMIT: u64 = 10_000;

/// Checks a claimed split by brute force: `a^m = r s`, `gcd(r, b)` a unit, and
/// every non-unit divisor of `s` non-coprime to `b` (divisors enumerated
/// explicitly).
pub fn verify_adequate(a: &Elem, b: &Elem, r: &Elem, s: &Elem, m: u32) -> Result<AdequacyReport> {
    for x in [b, r, s] {
        a.try_add(x)?;
    }
    if let Some(factors) = a.ring().factors() {
        let mut report = AdequacyReport {
            holds: true,
            failures: Vec::new(),
            divisors_checked: 0,
        };
        for k in 0..factors.len() {
            let comp = |e: &Elem| e.components().expect("tuple")[k].clone();
            let part = verify_adequate(&comp(a), &comp(b), &comp(r), &comp(s), m)?;
            report.holds &= part.holds;
            report.divisors_checked += part.divisors_checked;
            report.failures.extend(
                part.failures
                    .into_iter()
                    .map(|f| format!("component {k}: {f}")),
            );
        }
        return Ok(report);
    }
    let divisors = nonunit_divisors(s)?;
    let mut failures = Vec::new();
    if a.pow(m) != r * s {
        failures.push("a^m = r*s".to_string());
    }
    if !r.bezout(b)?.g.is_unit() {
        failures.push("gcd(r,b) unit".to_string());
    }
    let checked = match divisors {
        Divisors::Listed(list) => {
            if let Some(bad) = list
                .iter()
                .find(|d| d.bezout(b).is_ok_and(|g| g.g.is_unit()))
            {
                failures.push(format!(
                    "nonunit divisor {} of s coprime to b",
                    crate::format::element(bad)
                ));
            }
            list.len()
        }
        Divisors::AllOfRing => {
            // s = 0 in a domain: every non-unit divides s; only b = 0 meets them all
            if !b.is_zero() {
                let witness = coprime_nonunit(b)?;
                failures.push(format!(
                    "nonunit divisor {} of s coprime to b",
                    crate::format::element(&witness)
                ));
            }
            0
        }
    };
    Ok(AdequacyReport {
        holds: failures.is_empty(),
        failures,
        divisors_checked: checked,
    })
}

enum Divisors {
    Listed(Vec<Elem>),
    AllOfRing,
}

/// Non-unit divisors of `s` up to associates.
fn nonunit_divisors(s: &Elem) -> Result<Divisors> {
    let ring = s.ring();
    match (ring.kind(), s.value()) {
        (RingKind::Integers, Value::Int(v)) => {
            if v.is_zero() {
                return Ok(Divisors::AllOfRing);
            }
            if v.magnitude().to_u64().is_none_or(|m| m > INT_DIVISOR_LIMIT) {
                return Err(Error::ScaleExceeded(format!(
                    "|s| = {v} exceeds {INT_DIVISOR_LIMIT}"
                )));
            }
            Ok(Divisors::Listed(
                int::divisors(v)?
                    .into_iter()
                    .filter(|d| !d.is_one())
                    .map(|d| ring.from_int(&d))
                    .collect(),
            ))
        }
        (RingKind::PolyOverPrimeField(p), Value::Poly(c)) => {
            if c.is_empty() {
                return Ok(Divisors::AllOfRing);
            }
            let factors = factor_poly(c, p)?;
            let mut divisors: Vec<Vec<BigInt>> = vec![poly::constant(BigInt::one(), p)];
            let mut grouped: Vec<(Vec<BigInt>, u32)> = Vec::new();
            for q in factors {
                match grouped.last_mut() {
                    Some((last, e)) if *last == q => *e += 1,
                    _ => grouped.push((q, 1)),
                }
            }
            for (q, e) in grouped {
                let mut next = Vec::new();
                for d in &divisors {
                    let mut acc = d.clone();
                    next.push(acc.clone());
                    for _ in 0..e {
                        acc = poly::mul(&acc, &q, p);
                        next.push(acc.clone());
                    }
                }
                divisors = next;
            }
            Ok(Divisors::Listed(
                divisors
                    .into_iter()
                    .filter(|d| d.len() > 1)
                    .map(|d| ring.poly(d).expect("polynomial ring"))
                    .collect(),
            ))
        }
        (RingKind::Modular(n), _) => {
            if n.to_u64().is_none_or(|v| v > MODULAR_LIMIT) {
                return Err(Error::ScaleExceeded(format!(
                    "modulus {n} exceeds {MODULAR_LIMIT}"
                )));
            }
            Ok(Divisors::Listed(
                ring.elements()?
                    .into_iter()
                    .filter(|d| !d.is_unit() && d.divides(s))
                    .collect(),
            ))
        }
        _ => Err(Error::UnsupportedRing {
            op: "verify_adequate",
            ring: ring.to_string(),
        }),
    }
}

/// A non-unit coprime to `b != 0`: the least prime (or monic irreducible)
/// not dividing `b`.
fn coprime_nonunit(b: &Elem) -> Result<Elem> {
    let ring = b.ring();
    match ring.kind() {
        RingKind::Integers => {
            let v = b.as_integer().expect("integer");
            let mut p = BigInt::from(2);
            while (v % &p).is_zero() || !int::is_prime(&p) {
                p += 1;
            }
            Ok(ring.from_int(&p))
        }
        RingKind::PolyOverPrimeField(p) => {
            let c = b.as_poly().expect("polynomial");
            for deg in 1.. {
                for q in monic_polys(deg, p)? {
                    if factor_poly(&q, p)?.len() == 1 && poly::ext_gcd(&q, c, p).0.len() == 1 {
                        return ring.poly(q);
                    }
                }
            }
            unreachable!("irreducibles of every degree exist")
        }
        _ => Err(Error::UnsupportedRing {
            op: "verify_adequate",
            ring: ring.to_string(),
        }),
    }
}

fn monic_polys(deg: usize, p: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let count = p.pow(deg as u32);
    let count = count
        .to_u64()
        .filter(|c| *c <= POLY_TRIAL_LIMIT)
        .ok_or_else(|| Error::ScaleExceeded(format!("{p}^{deg} trial divisors")))?;
    Ok((0..count)
        .map(|mut idx| {
            let pu = p.to_u64().expect("bounded");
            let mut coeffs: Vec<BigInt> = (0..deg)
                .map(|_| {
                    let c = idx % pu;
                    idx /= pu;
                    BigInt::from(c)
                })
                .collect();
            coeffs.push(BigInt::one());
            coeffs
        })
        .collect())
}

/// Monic irreducible factors (with multiplicity, grouped) by trial division
/// against every monic polynomial of degree up to half the remaining degree.
fn factor_poly(c: &[BigInt], p: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    if c.len() > POLY_DEGREE_LIMIT + 1 {
        return Err(Error::ScaleExceeded(format!(
            "degree {} exceeds {POLY_DEGREE_LIMIT}",
            c.len() - 1
        )));
    }
    let (_, mut rest) = poly::monic(c, p);
    let mut out = Vec::new();
    let mut deg = 1;
    while rest.len() > 1 {
        if 2 * deg > rest.len() - 1 {
            out.push(rest.clone());
            break;
        }
        for q in monic_polys(deg, p)? {
            loop {
                let (quot, rem) = poly::divrem(&rest, &q, p);
                if !rem.is_empty() {
                    break;
                }
                out.push(q.clone());
                rest = quot;
            }
        }
        deg += 1;
    }
    Ok(out)
}
