//! Computable commutative rings with identity and their elements.
//!
//! A [`Ring`] is a validated descriptor; every [`Elem`] carries the ring it
//! lives in and a canonical payload, so structural equality of elements is
//! equality in the ring. All algorithms in this crate dispatch on the
//! descriptor at runtime and are therefore generic over every instance.

mod elem;
pub mod int;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub use elem::{ring_arith, ArithOp, BezoutData, Elem, Value};

/// Shape of a supported ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    /// `Z/nZ`, `n >= 2`.
    Modular(BigInt),
    /// `F_p[x]`, `p` prime.
    PolyOverPrimeField(BigInt),
    /// `{ z0 + a1 x + ... + a_{k-1} x^{k-1} : z0 in Z, a_i in Q }` modulo `x^k`.
    TruncatedSeries(usize),
    /// Finite direct product with at least two factors.
    Product(Vec<Ring>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingKind>);

/// Rings with more elements than this are never enumerated.
pub const ENUMERATION_LIMIT: u64 = 10_000;

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn modular(n: impl Into<BigInt>) -> Result<Ring> {
        let n = n.into();
        if n < BigInt::from(2) {
            return Err(Error::InvalidDescriptor(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        Ok(Ring(Arc::new(RingKind::Modular(n))))
    }

    pub fn poly_over_prime_field(p: impl Into<BigInt>) -> Result<Ring> {
        let p = p.into();
        if !int::is_prime(&p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        Ok(Ring(Arc::new(RingKind::PolyOverPrimeField(p))))
    }

    pub fn truncated_series(order: usize) -> Result<Ring> {
        if order == 0 {
            return Err(Error::InvalidDescriptor(
                "truncation order must be at least 1".into(),
            ));
        }
        Ok(Ring(Arc::new(RingKind::TruncatedSeries(order))))
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.len() < 2 {
            return Err(Error::InvalidDescriptor(
                "a product needs at least two factors".into(),
            ));
        }
        Ok(Ring(Arc::new(RingKind::Product(factors))))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self.kind() {
            RingKind::Modular(n) => Some(n),
            _ => None,
        }
    }

    pub fn characteristic_prime(&self) -> Option<&BigInt> {
        match self.kind() {
            RingKind::PolyOverPrimeField(p) => Some(p),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match self.kind() {
            RingKind::Product(fs) => Some(fs),
            _ => None,
        }
    }

    /// True for rings with a gcd/Bezout routine (everything but truncated series).
    pub fn is_bezout(&self) -> bool {
        match self.kind() {
            RingKind::TruncatedSeries(_) => false,
            RingKind::Product(fs) => fs.iter().all(Ring::is_bezout),
            _ => true,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn cardinality(&self) -> Option<BigInt> {
        match self.kind() {
            RingKind::Modular(n) => Some(n.clone()),
            RingKind::Product(fs) => fs
                .iter()
                .map(Ring::cardinality)
                .try_fold(BigInt::one(), |acc, c| c.map(|c| acc * c)),
            _ => None,
        }
    }

    /// Lists every element of a finite ring in a fixed order (residues
    /// ascending; products in lexicographic order of components).
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let size = self.cardinality().ok_or_else(|| Error::UnsupportedRing {
            op: "elements",
            ring: self.to_string(),
        })?;
        if size.to_u64().is_none_or(|s| s > ENUMERATION_LIMIT) {
            return Err(Error::ScaleExceeded(format!("{self} has {size} elements")));
        }
        match self.kind() {
            RingKind::Modular(n) => {
                let n = n.to_u64().expect("bounded above");
                Ok((0..n).map(|v| self.from_int(&BigInt::from(v))).collect())
            }
            RingKind::Product(fs) => {
                let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
                for f in fs {
                    let elems = f.elements()?;
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            elems.iter().map(move |e| {
                                let mut t = t.clone();
                                t.push(e.clone());
                                t
                            })
                        })
                        .collect();
                }
                Ok(tuples
                    .into_iter()
                    .map(|t| Elem::from_parts(self.clone(), Value::Tuple(t)))
                    .collect())
            }
            _ => unreachable!("only finite rings have a cardinality"),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular(n) => write!(f, "Z/{n}"),
            RingKind::PolyOverPrimeField(p) => write!(f, "GF({p})[x]"),
            RingKind::TruncatedSeries(k) => write!(f, "Zser{k}"),
            RingKind::Product(fs) => {
                write!(f, "prod(")?;
                for (i, r) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}
