use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int;
use super::poly;
use super::{Ring, RingKind};
use crate::error::{Error, Result};

/// Canonical payload of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    /// Residue in `[0, n)`.
    Residue(BigInt),
    /// Little-endian coefficients in `[0, p)`, no trailing zeros.
    Poly(Vec<BigInt>),
    /// Integer constant term plus exactly `k - 1` rational coefficients.
    Series {
        constant: BigInt,
        tail: Vec<BigRational>,
    },
    Tuple(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    ring: Ring,
    value: Value,
}

/// Gcd data for a pair `(a, b)`:
/// `x*a + y*b = g`, `a = a1*g`, `b = b1*g` and `x*a1 + y*b1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutData {
    pub g: Elem,
    pub x: Elem,
    pub y: Elem,
    pub a1: Elem,
    pub b1: Elem,
}

impl BezoutData {
    /// Re-checks the five identities for the pair `(a, b)`.
    pub fn holds_for(&self, a: &Elem, b: &Elem) -> bool {
        let one = a.ring().one();
        &(&self.x * a) + &(&self.y * b) == self.g
            && &self.a1 * &self.g == *a
            && &self.b1 * &self.g == *b
            && &(&self.x * &self.a1) + &(&self.y * &self.b1) == one
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked arithmetic entry point: `y` must be present except for `Neg`.
pub fn ring_arith(op: ArithOp, x: &Elem, y: Option<&Elem>) -> Result<Elem> {
    let need = |y: Option<&Elem>| {
        y.cloned()
            .ok_or_else(|| Error::PreconditionFailed(format!("{op:?} needs two operands")))
    };
    match op {
        ArithOp::Add => x.try_add(&need(y)?),
        ArithOp::Sub => x.try_sub(&need(y)?),
        ArithOp::Mul => x.try_mul(&need(y)?),
        ArithOp::Neg => Ok(-x),
    }
}

impl Ring {
    pub fn zero(&self) -> Elem {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_int(&self, v: &BigInt) -> Elem {
        let value = match self.kind() {
            RingKind::Integers => Value::Int(v.clone()),
            RingKind::Modular(n) => Value::Residue(v.mod_floor(n)),
            RingKind::PolyOverPrimeField(p) => Value::Poly(poly::constant(v.clone(), p)),
            RingKind::TruncatedSeries(k) => Value::Series {
                constant: v.clone(),
                tail: vec![BigRational::zero(); k - 1],
            },
            RingKind::Product(fs) => Value::Tuple(fs.iter().map(|f| f.from_int(v)).collect()),
        };
        Elem {
            ring: self.clone(),
            value,
        }
    }

    pub fn int(&self, v: i64) -> Elem {
        self.from_int(&BigInt::from(v))
    }

    /// Polynomial from little-endian coefficients (reduced mod p).
    pub fn poly(&self, coeffs: impl IntoIterator<Item = BigInt>) -> Result<Elem> {
        match self.kind() {
            RingKind::PolyOverPrimeField(p) => Ok(Elem {
                ring: self.clone(),
                value: Value::Poly(poly::reduce(coeffs, p)),
            }),
            _ => Err(Error::UnsupportedRing {
                op: "poly",
                ring: self.to_string(),
            }),
        }
    }

    /// Truncated series from its integer constant and rational tail; the tail
    /// is padded with zeros and may not exceed `k - 1` terms.
    pub fn series(&self, constant: BigInt, tail: Vec<BigRational>) -> Result<Elem> {
        match self.kind() {
            RingKind::TruncatedSeries(k) => {
                if tail.len() > k - 1 {
                    return Err(Error::Shape(format!(
                        "{} tail coefficients given for order {k}",
                        tail.len()
                    )));
                }
                let mut tail = tail;
                tail.resize(k - 1, BigRational::zero());
                Ok(Elem {
                    ring: self.clone(),
                    value: Value::Series { constant, tail },
                })
            }
            _ => Err(Error::UnsupportedRing {
                op: "series",
                ring: self.to_string(),
            }),
        }
    }

    pub fn tuple(&self, components: Vec<Elem>) -> Result<Elem> {
        let fs = self.factors().ok_or_else(|| Error::UnsupportedRing {
            op: "tuple",
            ring: self.to_string(),
        })?;
        if fs.len() != components.len() {
            return Err(Error::Shape(format!(
                "{} components for a product of {} rings",
                components.len(),
                fs.len()
            )));
        }
        for (f, c) in fs.iter().zip(&components) {
            if f != c.ring() {
                return Err(mismatch(f, c.ring()));
            }
        }
        Ok(Elem {
            ring: self.clone(),
            value: Value::Tuple(components),
        })
    }
}

fn mismatch(a: &Ring, b: &Ring) -> Error {
    Error::DescriptorMismatch {
        left: a.to_string(),
        right: b.to_string(),
    }
}

fn unsupported(op: &'static str, ring: &Ring) -> Error {
    Error::UnsupportedRing {
        op,
        ring: ring.to_string(),
    }
}

fn series_mul(
    a: (&BigInt, &[BigRational]),
    b: (&BigInt, &[BigRational]),
) -> (BigInt, Vec<BigRational>) {
    let k = a.1.len() + 1;
    let full = |c: &BigInt, t: &[BigRational]| {
        std::iter::once(BigRational::from_integer(c.clone()))
            .chain(t.iter().cloned())
            .collect::<Vec<_>>()
    };
    let (fa, fb) = (full(a.0, a.1), full(b.0, b.1));
    let tail = (1..k)
        .map(|i| (0..=i).map(|j| &fa[j] * &fb[i - j]).sum())
        .collect();
    (a.0 * b.0, tail)
}

impl Elem {
    pub(crate) fn from_parts(ring: Ring, value: Value) -> Elem {
        Elem { ring, value }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn components(&self) -> Option<&[Elem]> {
        match &self.value {
            Value::Tuple(cs) => Some(cs),
            _ => None,
        }
    }

    /// Integer or residue payload.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(v) | Value::Residue(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&[BigInt]> {
        match &self.value {
            Value::Poly(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) | Value::Residue(v) => v.is_zero(),
            Value::Poly(c) => c.is_empty(),
            Value::Series { constant, tail } => {
                constant.is_zero() && tail.iter().all(Zero::is_zero)
            }
            Value::Tuple(cs) => cs.iter().all(Elem::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn same_ring(&self, other: &Elem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(mismatch(&self.ring, &other.ring))
        }
    }

    fn with(&self, value: Value) -> Elem {
        Elem {
            ring: self.ring.clone(),
            value,
        }
    }

    fn zip_components(
        &self,
        other: &Elem,
        f: impl Fn(&Elem, &Elem) -> Result<Elem>,
    ) -> Result<Vec<Elem>> {
        match (&self.value, &other.value) {
            (Value::Tuple(a), Value::Tuple(b)) => a.iter().zip(b).map(|(x, y)| f(x, y)).collect(),
            _ => unreachable!("product elements carry tuples"),
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem> {
        self.same_ring(other)?;
        let value = match (self.ring.kind(), &self.value, &other.value) {
            (RingKind::Integers, Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (RingKind::Modular(n), Value::Residue(a), Value::Residue(b)) => {
                Value::Residue((a + b).mod_floor(n))
            }
            (RingKind::PolyOverPrimeField(p), Value::Poly(a), Value::Poly(b)) => {
                Value::Poly(poly::add(a, b, p))
            }
            (
                RingKind::TruncatedSeries(_),
                Value::Series {
                    constant: c1,
                    tail: t1,
                },
                Value::Series {
                    constant: c2,
                    tail: t2,
                },
            ) => Value::Series {
                constant: c1 + c2,
                tail: t1.iter().zip(t2).map(|(x, y)| x + y).collect(),
            },
            (RingKind::Product(_), _, _) => {
                Value::Tuple(self.zip_components(other, Elem::try_add)?)
            }
            _ => unreachable!("payload always matches its descriptor"),
        };
        Ok(self.with(value))
    }

    pub fn try_sub(&self, other: &Elem) -> Result<Elem> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem> {
        self.same_ring(other)?;
        let value = match (self.ring.kind(), &self.value, &other.value) {
            (RingKind::Integers, Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (RingKind::Modular(n), Value::Residue(a), Value::Residue(b)) => {
                Value::Residue((a * b).mod_floor(n))
            }
            (RingKind::PolyOverPrimeField(p), Value::Poly(a), Value::Poly(b)) => {
                Value::Poly(poly::mul(a, b, p))
            }
            (
                RingKind::TruncatedSeries(_),
                Value::Series {
                    constant: c1,
                    tail: t1,
                },
                Value::Series {
                    constant: c2,
                    tail: t2,
                },
            ) => {
                let (constant, tail) = series_mul((c1, t1), (c2, t2));
                Value::Series { constant, tail }
            }
            (RingKind::Product(_), _, _) => {
                Value::Tuple(self.zip_components(other, Elem::try_mul)?)
            }
            _ => unreachable!("payload always matches its descriptor"),
        };
        Ok(self.with(value))
    }

    fn negated(&self) -> Elem {
        let value = match (self.ring.kind(), &self.value) {
            (_, Value::Int(a)) => Value::Int(-a),
            (RingKind::Modular(n), Value::Residue(a)) => Value::Residue((-a).mod_floor(n)),
            (RingKind::PolyOverPrimeField(p), Value::Poly(a)) => Value::Poly(poly::neg(a, p)),
            (_, Value::Series { constant, tail }) => Value::Series {
                constant: -constant,
                tail: tail.iter().map(|c| -c).collect(),
            },
            (_, Value::Tuple(cs)) => Value::Tuple(cs.iter().map(|c| -c).collect()),
            _ => unreachable!("payload always matches its descriptor"),
        };
        self.with(value)
    }

    pub fn pow(&self, e: u32) -> Elem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse when `self` is a unit.
    pub fn inverse(&self) -> Option<Elem> {
        let value = match (self.ring.kind(), &self.value) {
            (RingKind::Integers, Value::Int(a)) => {
                if a.abs().is_one() {
                    Value::Int(a.clone())
                } else {
                    return None;
                }
            }
            (RingKind::Modular(n), Value::Residue(a)) => Value::Residue(int::mod_inverse(a, n)?),
            (RingKind::PolyOverPrimeField(p), Value::Poly(a)) => {
                if a.len() != 1 {
                    return None;
                }
                Value::Poly(vec![int::mod_inverse(&a[0], p)?])
            }
            (RingKind::TruncatedSeries(_), Value::Series { constant, tail }) => {
                if !constant.abs().is_one() {
                    return None;
                }
                // b_0 = 1/a_0 = a_0; b_i = -a_0 * sum_{j=1..i} a_j b_{i-j}
                let a0 = BigRational::from_integer(constant.clone());
                let mut full = vec![a0.clone()];
                for i in 1..=tail.len() {
                    let s: BigRational = (1..=i).map(|j| &tail[j - 1] * &full[i - j]).sum();
                    full.push(-(&a0 * s));
                }
                Value::Series {
                    constant: constant.clone(),
                    tail: full.split_off(1),
                }
            }
            (RingKind::Product(_), Value::Tuple(cs)) => {
                Value::Tuple(cs.iter().map(Elem::inverse).collect::<Option<Vec<_>>>()?)
            }
            _ => unreachable!("payload always matches its descriptor"),
        };
        Some(self.with(value))
    }

    pub fn is_unit(&self) -> bool {
        match (self.ring.kind(), &self.value) {
            (RingKind::Modular(n), Value::Residue(a)) => a.gcd(n).is_one(),
            (_, Value::Tuple(cs)) => cs.iter().all(Elem::is_unit),
            _ => self.inverse().is_some(),
        }
    }

    /// Membership in the Jacobson radical.
    pub fn in_jacobson(&self) -> bool {
        match &self.value {
            Value::Int(_) | Value::Poly(_) => self.is_zero(),
            // rad(n) | a  iff  the part of n coprime to a is 1
            Value::Residue(a) => {
                let n = self.ring.modulus().expect("residues live in Z/n");
                a.is_zero() || int::coprime_part(n, a).is_one()
            }
            Value::Series { constant, .. } => constant.is_zero(),
            Value::Tuple(cs) => cs.iter().all(Elem::in_jacobson),
        }
    }

    /// Gcd with Bezout cofactors; see [`BezoutData`].
    pub fn bezout(&self, other: &Elem) -> Result<BezoutData> {
        self.same_ring(other)?;
        let ring = &self.ring;
        if let RingKind::TruncatedSeries(_) = ring.kind() {
            return Err(unsupported("gcd_bezout", ring));
        }
        if self.is_zero() && other.is_zero() && ring.factors().is_none() {
            return Ok(BezoutData {
                g: ring.zero(),
                x: ring.one(),
                y: ring.zero(),
                a1: ring.one(),
                b1: ring.zero(),
            });
        }
        let data = match (ring.kind(), &self.value, &other.value) {
            (RingKind::Integers, Value::Int(a), Value::Int(b)) => {
                let (g, x, y) = int::ext_gcd(a, b);
                let wrap = |v: BigInt| self.with(Value::Int(v));
                BezoutData {
                    a1: wrap(a / &g),
                    b1: wrap(b / &g),
                    g: wrap(g),
                    x: wrap(x),
                    y: wrap(y),
                }
            }
            (RingKind::Modular(n), Value::Residue(a), Value::Residue(b)) => {
                let (g, x, y, a1, b1) = modular_bezout(a, b, n);
                let wrap = |v: BigInt| self.with(Value::Residue(v.mod_floor(n)));
                BezoutData {
                    g: wrap(g),
                    x: wrap(x),
                    y: wrap(y),
                    a1: wrap(a1),
                    b1: wrap(b1),
                }
            }
            (RingKind::PolyOverPrimeField(p), Value::Poly(a), Value::Poly(b)) => {
                let (g, x, y) = poly::ext_gcd(a, b, p);
                let (a1, _) = poly::divrem(a, &g, p);
                let (b1, _) = poly::divrem(b, &g, p);
                let wrap = |v: Vec<BigInt>| self.with(Value::Poly(v));
                BezoutData {
                    g: wrap(g),
                    x: wrap(x),
                    y: wrap(y),
                    a1: wrap(a1),
                    b1: wrap(b1),
                }
            }
            (RingKind::Product(_), Value::Tuple(a), Value::Tuple(b)) => {
                let parts = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.bezout(y))
                    .collect::<Result<Vec<_>>>()?;
                let pick = |f: fn(&BezoutData) -> &Elem| {
                    self.with(Value::Tuple(parts.iter().map(|d| f(d).clone()).collect()))
                };
                BezoutData {
                    g: pick(|d| &d.g),
                    x: pick(|d| &d.x),
                    y: pick(|d| &d.y),
                    a1: pick(|d| &d.a1),
                    b1: pick(|d| &d.b1),
                }
            }
            _ => unreachable!("payload always matches its descriptor"),
        };
        debug_assert!(data.holds_for(self, other));
        Ok(data)
    }

    /// Returns `q` with `divisor * q = self`; canonical (least residue) over `Z/n`.
    pub fn divide_exact(&self, divisor: &Elem) -> Result<Elem> {
        self.same_ring(divisor)?;
        let not_divisible = || Error::NotDivisible {
            dividend: format!("{self:?}"),
            divisor: format!("{divisor:?}"),
        };
        let value = match (self.ring.kind(), &self.value, &divisor.value) {
            (RingKind::Integers, Value::Int(a), Value::Int(b)) => {
                if b.is_zero() {
                    if a.is_zero() {
                        Value::Int(BigInt::zero())
                    } else {
                        return Err(not_divisible());
                    }
                } else {
                    let (q, r) = a.div_rem(b);
                    if !r.is_zero() {
                        return Err(not_divisible());
                    }
                    Value::Int(q)
                }
            }
            (RingKind::Modular(n), Value::Residue(a), Value::Residue(b)) => {
                let g = b.gcd(n);
                if !(a % &g).is_zero() {
                    return Err(not_divisible());
                }
                let m = n / &g;
                let q = if m.is_one() {
                    BigInt::zero()
                } else {
                    let inv = int::mod_inverse(&(b / &g), &m).expect("b/g is a unit mod n/g");
                    ((a / &g) * inv).mod_floor(&m)
                };
                Value::Residue(q)
            }
            (RingKind::PolyOverPrimeField(p), Value::Poly(a), Value::Poly(b)) => {
                if b.is_empty() {
                    if a.is_empty() {
                        Value::Poly(Vec::new())
                    } else {
                        return Err(not_divisible());
                    }
                } else {
                    let (q, r) = poly::divrem(a, b, p);
                    if !r.is_empty() {
                        return Err(not_divisible());
                    }
                    Value::Poly(q)
                }
            }
            (
                RingKind::TruncatedSeries(_),
                Value::Series {
                    constant: c1,
                    tail: t1,
                },
                Value::Series {
                    constant: c2,
                    tail: t2,
                },
            ) => {
                if c2.is_zero() {
                    return Err(unsupported(
                        "divide_exact by a series with zero constant term",
                        &self.ring,
                    ));
                }
                let (q0, r0) = c1.div_rem(c2);
                if !r0.is_zero() {
                    return Err(not_divisible());
                }
                // q_i = (a_i - sum_{j=1..i} b_j q_{i-j}) / b_0
                let b0 = BigRational::from_integer(c2.clone());
                let mut full = vec![BigRational::from_integer(q0.clone())];
                for i in 1..=t1.len() {
                    let s: BigRational = (1..=i).map(|j| &t2[j - 1] * &full[i - j]).sum();
                    full.push((&t1[i - 1] - s) / &b0);
                }
                Value::Series {
                    constant: q0,
                    tail: full.split_off(1),
                }
            }
            (RingKind::Product(_), _, _) => {
                Value::Tuple(self.zip_components(divisor, Elem::divide_exact)?)
            }
            _ => unreachable!("payload always matches its descriptor"),
        };
        Ok(self.with(value))
    }

    pub fn divides(&self, other: &Elem) -> bool {
        other.divide_exact(self).is_ok()
    }

    /// Splits `self = u * norm` with `u` a unit and `norm` the canonical
    /// associate: nonnegative over Z, monic over F_p[x], `gcd(lift, n)` over Z/n.
    pub fn canonical_associate(&self) -> (Elem, Elem) {
        let one = self.ring.one();
        match (self.ring.kind(), &self.value) {
            (RingKind::Integers, Value::Int(a)) => {
                if a.is_negative() {
                    (
                        self.with(Value::Int(BigInt::from(-1))),
                        self.with(Value::Int(-a)),
                    )
                } else {
                    (one, self.clone())
                }
            }
            (RingKind::Modular(n), Value::Residue(a)) => {
                if a.is_zero() {
                    return (one, self.clone());
                }
                let g = a.gcd(n);
                let cofactor = a / &g;
                let m = n / &g;
                // u = a/g + (n/g) * t with t the part of n coprime to a/g
                let t = int::coprime_part(n, &cofactor);
                let u = (cofactor + m * t).mod_floor(n);
                debug_assert!(u.gcd(n).is_one());
                (self.with(Value::Residue(u)), self.with(Value::Residue(g)))
            }
            (RingKind::PolyOverPrimeField(p), Value::Poly(a)) => {
                let (lead, m) = poly::monic(a, p);
                (
                    self.with(Value::Poly(vec![lead])),
                    self.with(Value::Poly(m)),
                )
            }
            (RingKind::TruncatedSeries(_), Value::Series { constant, tail }) => {
                let negative = if constant.is_zero() {
                    tail.iter()
                        .find(|c| !c.is_zero())
                        .is_some_and(Signed::is_negative)
                } else {
                    constant.is_negative()
                };
                if negative {
                    (-&one, -self)
                } else {
                    (one, self.clone())
                }
            }
            (RingKind::Product(_), Value::Tuple(cs)) => {
                let (us, ns): (Vec<_>, Vec<_>) = cs.iter().map(Elem::canonical_associate).unzip();
                (self.with(Value::Tuple(us)), self.with(Value::Tuple(ns)))
            }
            _ => unreachable!("payload always matches its descriptor"),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_associate().1 == *self
    }

    /// Size used to pick pivots: absolute value, degree, or `gcd(a, n)`.
    /// `None` for zero and for rings without a natural size.
    pub(crate) fn pivot_size(&self) -> Option<BigInt> {
        if self.is_zero() {
            return None;
        }
        match (self.ring.kind(), &self.value) {
            (_, Value::Int(a)) => Some(a.abs()),
            (RingKind::Modular(n), Value::Residue(a)) => Some(a.gcd(n)),
            (_, Value::Poly(c)) => Some(BigInt::from(c.len())),
            _ => Some(BigInt::one()),
        }
    }
}

/// Bezout data over `Z/n` on integer lifts; not both of `a, b` zero.
/// Returns `(g, x, y, a1, b1)` as integers to be reduced mod n.
fn modular_bezout(a: &BigInt, b: &BigInt, n: &BigInt) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    let g = a.gcd(b).gcd(n);
    let m = n / &g;
    let a1 = a / &g;
    let b1 = b / &g;
    // gcd(a1, b1, m) = 1; lift to gcd(a1, b1', n) = 1 by b1' = b1 + m*t, where t
    // keeps exactly the primes of gcd(n, a1) that do not divide b1.
    let t = int::coprime_part(&a1.gcd(n), &b1);
    let b1 = b1 + &m * t;
    let (h, coeffs) = int::ext_gcd_many(&[a1.clone(), b1.clone(), n.clone()]);
    debug_assert!(h.is_one());
    (g, coeffs[0].clone(), coeffs[1].clone(), a1, b1)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Elem> for &Elem {
            type Output = Elem;
            /// Panics when the operands live in different rings; use the
            /// `try_` methods for a checked variant.
            fn $method(self, rhs: &Elem) -> Elem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
        impl $trait<Elem> for &Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.negated()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.negated()
    }
}
