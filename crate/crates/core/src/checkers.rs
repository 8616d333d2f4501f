//! Exhaustive checks of ring-theoretic predicates on finite rings and a
//! bounded search for stable-range lifts in products of copies of Z.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::format;
use crate::ring::{Elem, Ring, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Predicate {
    /// `aR + bR = R` implies `a + by` is a unit for some `y`.
    StableRange1,
    /// Every element is an idempotent plus a unit.
    Clean,
    /// `a + b = 1` implies `(1 - ax)(1 - by) = 0` for some `x, y`.
    PmRing,
    /// `aR + bR + cR = R`, `a` outside the radical, implies
    /// `aR + (b + cy)R = R` for some `y`.
    JStableCondition,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [
        Predicate::StableRange1,
        Predicate::Clean,
        Predicate::PmRing,
        Predicate::JStableCondition,
    ];

    /// Number of universally quantified elements.
    fn arity(self) -> u32 {
        match self {
            Predicate::Clean | Predicate::PmRing => 1,
            Predicate::StableRange1 => 2,
            Predicate::JStableCondition => 3,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::parse(
                    1,
                    1,
                    format!(
                        "unknown predicate '{s}' (expected one of {})",
                        Predicate::ALL.iter().join(", ")
                    ),
                )
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    pub predicate: Predicate,
    pub holds: bool,
    /// Counterexample when `holds` is false.
    pub witness: Option<Vec<Elem>>,
    /// Quantified tuples evaluated.
    pub elements_scanned: u64,
    pub note: Option<String>,
}

impl PredicateReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "predicate": self.predicate.to_string(),
            "holds": self.holds,
            "witness": self.witness.as_ref().map(|w| w.iter().map(format::element).collect::<Vec<_>>()),
            "elements_scanned": self.elements_scanned,
            "note": self.note,
        })
    }
}

/// Upper bound on the estimated number of ring operations of one check.
pub const WORK_LIMIT: u64 = 10_000_000_000;

/// `aR + bR + ... = R`, decided by gcd.
pub fn generates_unit_ideal(values: &[Elem]) -> bool {
    let mut g = values[0].clone();
    for v in &values[1..] {
        g = g.bezout(v).expect("gcd ring").g;
    }
    g.is_unit()
}

/// `aR + bR = R` decided by scanning all `ax + by`; the reference for
/// [`generates_unit_ideal`] on finite rings.
pub fn unit_ideal_by_scan(a: &Elem, b: &Elem, elements: &[Elem]) -> bool {
    elements
        .iter()
        .any(|x| elements.iter().any(|y| (&(a * x) + &(b * y)).is_one()))
}

struct Scan<'a> {
    elements: &'a [Elem],
    idempotents: Vec<Elem>,
    one: Elem,
}

impl Scan<'_> {
    /// True when the clause fails at this tuple.
    fn fails(&self, predicate: Predicate, t: &[Elem]) -> bool {
        let el = self.elements;
        match predicate {
            Predicate::StableRange1 => {
                let (a, b) = (&t[0], &t[1]);
                generates_unit_ideal(&[a.clone(), b.clone()])
                    && !el.iter().any(|y| (a + &(b * y)).is_unit())
            }
            Predicate::Clean => !self.idempotents.iter().any(|e| (&t[0] - e).is_unit()),
            Predicate::PmRing => {
                let a = &t[0];
                let b = &self.one - a;
                let left: Vec<Elem> = el.iter().map(|x| &self.one - &(a * x)).unique().collect();
                let right: Vec<Elem> = el.iter().map(|y| &self.one - &(&b * y)).unique().collect();
                !left.iter().any(|l| right.iter().any(|r| (l * r).is_zero()))
            }
            Predicate::JStableCondition => {
                let (a, b, c) = (&t[0], &t[1], &t[2]);
                !a.in_jacobson()
                    && generates_unit_ideal(&[a.clone(), b.clone(), c.clone()])
                    && !el
                        .iter()
                        .any(|y| generates_unit_ideal(&[a.clone(), b + &(c * y)]))
            }
        }
    }
}

/// The same clauses on machine-word residues of Z/n.
struct FastScan {
    n: u64,
    rad: u64,
    idempotents: Vec<u64>,
}

impl FastScan {
    fn new(n: u64) -> Self {
        let rad = crate::ring::int::factor(&BigInt::from(n))
            .expect("small modulus")
            .iter()
            .map(|(p, _)| p.to_u64().expect("small prime"))
            .product();
        FastScan {
            n,
            rad,
            idempotents: (0..n).filter(|e| e * e % n == *e).collect(),
        }
    }

    fn unit(&self, x: u64) -> bool {
        x.gcd(&self.n) == 1
    }

    fn fails(&self, predicate: Predicate, t: &[u64]) -> bool {
        let n = self.n;
        match predicate {
            Predicate::StableRange1 => {
                let (a, b) = (t[0], t[1]);
                a.gcd(&b).gcd(&n) == 1 && !(0..n).any(|y| self.unit((a + b * y) % n))
            }
            Predicate::Clean => !self
                .idempotents
                .iter()
                .any(|&e| self.unit((t[0] + n - e) % n)),
            Predicate::PmRing => {
                let a = t[0];
                let b = (1 + n - a) % n;
                let mark = |c: u64| {
                    let mut seen = vec![false; n as usize];
                    (0..n).for_each(|x| seen[((1 + n * n - c * x % n) % n) as usize] = true);
                    (0..n).filter(|&v| seen[v as usize]).collect::<Vec<_>>()
                };
                let (left, right) = (mark(a), mark(b));
                !left.iter().any(|l| right.iter().any(|r| l * r % n == 0))
            }
            Predicate::JStableCondition => {
                let (a, b, c) = (t[0], t[1], t[2]);
                a % self.rad != 0
                    && a.gcd(&b).gcd(&c).gcd(&n) == 1
                    && !(0..n).any(|y| a.gcd(&((b + c * y) % n)).gcd(&n) == 1)
            }
        }
    }
}

/// Evaluation strategy of [`check_finite_predicate_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Word-sized residue arithmetic on Z/n, ring elements elsewhere.
    Auto,
    /// Ring elements everywhere.
    Generic,
}

fn tuple_at(elements: &[Elem], mut idx: u64, arity: u32) -> Vec<Elem> {
    let n = elements.len() as u64;
    let mut out = Vec::with_capacity(arity as usize);
    for _ in 0..arity {
        out.push(elements[(idx % n) as usize].clone());
        idx /= n;
    }
    out.reverse();
    out
}

/// Exhaustive evaluation over a finite ring; the reported witness is the
/// first failing tuple in lexicographic element order.
pub fn check_finite_predicate(ring: &Ring, predicate: Predicate) -> Result<PredicateReport> {
    check_finite_predicate_with(ring, predicate, ScanMode::Auto)
}

pub fn check_finite_predicate_with(
    ring: &Ring,
    predicate: Predicate,
    mode: ScanMode,
) -> Result<PredicateReport> {
    let elements = ring.elements()?;
    let n = elements.len() as u64;
    let tuples = n.pow(predicate.arity());
    let work = tuples
        .saturating_mul(n)
        .saturating_mul(if predicate == Predicate::PmRing { n } else { 1 });
    if work > WORK_LIMIT {
        return Err(Error::ScaleExceeded(format!(
            "{predicate} on {ring} needs about {work} operations"
        )));
    }
    let scan = Scan {
        idempotents: elements
            .iter()
            .filter(|e| &(*e * *e) == *e)
            .cloned()
            .collect(),
        elements: &elements,
        one: ring.one(),
    };
    let arity = predicate.arity();
    let first = match (mode, ring.modulus()) {
        (ScanMode::Auto, Some(m)) => {
            let fast = FastScan::new(m.to_u64().expect("enumerable"));
            (0..tuples as usize).into_par_iter().position_first(|i| {
                let mut idx = i as u64;
                let mut t = [0u64; 3];
                for slot in t[..arity as usize].iter_mut().rev() {
                    *slot = idx % n;
                    idx /= n;
                }
                fast.fails(predicate, &t[..arity as usize])
            })
        }
        _ => (0..tuples as usize)
            .into_par_iter()
            .position_first(|i| scan.fails(predicate, &tuple_at(&elements, i as u64, arity))),
    };
    Ok(match first {
        None => PredicateReport {
            predicate,
            holds: true,
            witness: None,
            elements_scanned: tuples,
            note: None,
        },
        Some(i) => PredicateReport {
            predicate,
            holds: false,
            witness: Some(tuple_at(&elements, i as u64, predicate.arity())),
            elements_scanned: i as u64 + 1,
            note: None,
        },
    })
}

/// Re-evaluates the clause on a report's witness: true when it fails again.
pub fn replay(report: &PredicateReport) -> Result<bool> {
    let witness = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::PreconditionFailed("report has no witness".into()))?;
    let ring = witness[0].ring();
    let elements = ring.elements()?;
    let scan = Scan {
        idempotents: elements
            .iter()
            .filter(|e| &(*e * *e) == *e)
            .cloned()
            .collect(),
        elements: &elements,
        one: ring.one(),
    };
    Ok(scan.fails(report.predicate, witness))
}

/// Limit on `|a|` for [`check_clean_quotient`].
pub const CLEAN_QUOTIENT_LIMIT: u64 = 10_000;

/// Cleanness of `Z/aZ` for a nonzero integer `a`.
pub fn check_clean_quotient(a: &Elem) -> Result<PredicateReport> {
    let v = a
        .as_integer()
        .filter(|_| matches!(a.ring().kind(), RingKind::Integers))
        .ok_or_else(|| Error::UnsupportedRing {
            op: "check_clean_quotient",
            ring: a.ring().to_string(),
        })?;
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = v.abs();
    if m.to_u64().is_none_or(|m| m > CLEAN_QUOTIENT_LIMIT) {
        return Err(Error::ScaleExceeded(format!(
            "|a| = {m} exceeds {CLEAN_QUOTIENT_LIMIT}"
        )));
    }
    if m == BigInt::from(1) {
        return Ok(PredicateReport {
            predicate: Predicate::Clean,
            holds: true,
            witness: None,
            elements_scanned: 0,
            note: Some("zero ring: holds vacuously".into()),
        });
    }
    check_finite_predicate(&Ring::modular(m)?, Predicate::Clean)
}

/// Searches `y` with every component in `[-bound, bound]` such that
/// `aR + (b + cy)R = R` in a product of copies of Z. Failure to find one is
/// evidence against stable range 1, not a proof.
pub fn bounded_refute_sr1(a: &Elem, b: &Elem, c: &Elem, bound: u64) -> Result<PredicateReport> {
    let ring = a.ring().clone();
    a.try_add(b)?;
    a.try_add(c)?;
    let factors = ring
        .factors()
        .filter(|fs| fs.iter().all(|f| matches!(f.kind(), RingKind::Integers)))
        .ok_or_else(|| Error::UnsupportedRing {
            op: "bounded_refute_sr1",
            ring: ring.to_string(),
        })?;
    if a.in_jacobson() || !generates_unit_ideal(&[a.clone(), b.clone(), c.clone()]) {
        return Err(Error::PreconditionFailed(
            "needs a unimodular triple with a outside the radical".into(),
        ));
    }
    let z = Ring::integers();
    let b_int = i64::try_from(bound).map_err(|_| Error::ScaleExceeded(format!("bound {bound}")))?;
    let range: Vec<Elem> = (-b_int..=b_int).map(|v| z.int(v)).collect();
    let k = factors.len() as u32;
    let side = range.len() as u64;
    let total = side
        .checked_pow(k)
        .filter(|t| *t <= WORK_LIMIT)
        .ok_or_else(|| Error::ScaleExceeded(format!("{side}^{k} candidates")))?;
    let found = (0..total as usize).into_par_iter().position_first(|i| {
        let y = ring
            .tuple(tuple_at(&range, i as u64, k))
            .expect("integer components");
        generates_unit_ideal(&[a.clone(), b + &(c * &y)])
    });
    Ok(match found {
        Some(i) => {
            let y = ring.tuple(tuple_at(&range, i as u64, k))?;
            PredicateReport {
                predicate: Predicate::JStableCondition,
                holds: true,
                witness: None,
                elements_scanned: i as u64 + 1,
                note: Some(format!("lift found: y = {}", format::element(&y))),
            }
        }
        None => PredicateReport {
            predicate: Predicate::JStableCondition,
            holds: false,
            witness: Some(vec![a.clone(), b.clone(), c.clone()]),
            elements_scanned: total,
            note: Some(format!(
                "bounded evidence, not proof: no y with components in [-{bound}, {bound}]"
            )),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: i64) -> Ring {
        Ring::modular(n).unwrap()
    }

    #[test]
    fn examples() {
        assert!(
            check_finite_predicate(&zn(12), Predicate::StableRange1)
                .unwrap()
                .holds
        );
        let r = check_finite_predicate(&zn(30), Predicate::Clean).unwrap();
        assert!(r.holds);
        assert_eq!(r.elements_scanned, 30);
        for n in [2, 12, 36, 60] {
            assert!(
                check_finite_predicate(&zn(n), Predicate::PmRing)
                    .unwrap()
                    .holds
            );
        }
        let p = Ring::product(vec![zn(2), zn(3)]).unwrap();
        for pred in Predicate::ALL {
            assert!(check_finite_predicate(&p, pred).unwrap().holds, "{pred}");
        }
    }

    #[test]
    fn fast_and_generic_scans_agree() {
        for n in [2, 6, 8, 12, 18] {
            for pred in Predicate::ALL {
                let fast = check_finite_predicate_with(&zn(n), pred, ScanMode::Auto).unwrap();
                let slow = check_finite_predicate_with(&zn(n), pred, ScanMode::Generic).unwrap();
                assert_eq!(fast, slow, "{pred} on Z/{n}");
            }
        }
        let fast = FastScan::new(12);
        let r = zn(12);
        let el = r.elements().unwrap();
        let scan = Scan {
            idempotents: vec![r.zero(), r.one(), r.int(4), r.int(9)],
            elements: &el,
            one: r.one(),
        };
        for a in 0..12u64 {
            for b in 0..12u64 {
                for c in [0u64, 1, 5, 6] {
                    let t = [r.int(a as i64), r.int(b as i64), r.int(c as i64)];
                    for pred in Predicate::ALL {
                        let k = pred.arity() as usize;
                        assert_eq!(fast.fails(pred, &[a, b, c][..k]), scan.fails(pred, &t[..k]));
                    }
                }
            }
        }
    }

    #[test]
    fn clean_quotients() {
        let z = Ring::integers();
        assert!(check_clean_quotient(&z.int(12)).unwrap().holds);
        assert!(check_clean_quotient(&z.int(97)).unwrap().holds);
        let trivial = check_clean_quotient(&z.int(-1)).unwrap();
        assert!(trivial.holds && trivial.note.is_some());
        assert_eq!(
            check_clean_quotient(&z.zero()).unwrap_err(),
            Error::ZeroElement
        );
        assert!(check_clean_quotient(&z.int(20_000)).is_err());
    }

    #[test]
    fn gcd_test_matches_scan() {
        for ring in [zn(12), zn(18), Ring::product(vec![zn(4), zn(6)]).unwrap()] {
            let el = ring.elements().unwrap();
            for a in &el {
                for b in &el {
                    assert_eq!(
                        generates_unit_ideal(&[a.clone(), b.clone()]),
                        unit_ideal_by_scan(a, b, &el)
                    );
                }
            }
        }
    }

    #[test]
    fn failures_replay() {
        // a fabricated failure does not reproduce
        let r = zn(6);
        let report = PredicateReport {
            predicate: Predicate::Clean,
            holds: false,
            witness: Some(vec![r.int(5)]),
            elements_scanned: 1,
            note: None,
        };
        assert!(!replay(&report).unwrap());
        let report = PredicateReport {
            witness: Some(vec![r.int(2), r.int(3)]),
            predicate: Predicate::StableRange1,
            ..report
        };
        assert!(!replay(&report).unwrap());
    }

    #[test]
    fn predicate_names() {
        assert_eq!("pmring".parse::<Predicate>().unwrap(), Predicate::PmRing);
        assert!("Regular".parse::<Predicate>().is_err());
    }

    #[test]
    fn refuter_on_z_times_z() {
        let z = Ring::integers();
        let zz = Ring::product(vec![z.clone(), z.clone()]).unwrap();
        let t = |x, y| zz.tuple(vec![z.int(x), z.int(y)]).unwrap();

        // search small triples for one without a bounded lift
        let small = -3..=5i64;
        let found = small
            .clone()
            .cartesian_product(small.clone())
            .cartesian_product(small.clone().cartesian_product(small.clone()))
            .map(|((a0, b0), (c0, a1))| (t(a0, a1), t(b0, 1), t(c0, 1)))
            .find(|(a, b, c)| {
                !a.in_jacobson()
                    && generates_unit_ideal(&[a.clone(), b.clone(), c.clone()])
                    && !bounded_refute_sr1(a, b, c, 10).unwrap().holds
            })
            .expect("Z x Z has no stable range 1");
        let (a, b, c) = found;
        let report = bounded_refute_sr1(&a, &b, &c, 50).unwrap();
        assert!(!report.holds);
        assert!(report
            .note
            .unwrap()
            .starts_with("bounded evidence, not proof"));
        // the failing component has a = 0, so b + cy must be a unit there
        let comp = |e: &Elem, k: usize| e.components().unwrap()[k].as_integer().unwrap().clone();
        let k = (0..2).find(|&k| comp(&a, k) == BigInt::from(0)).unwrap();
        let (bk, ck) = (comp(&b, k), comp(&c, k));
        assert!((-50..=50i64).all(|y| (&bk + &ck * y).abs() != BigInt::from(1)));

        assert!(
            bounded_refute_sr1(&t(1, 1), &t(7, 3), &t(2, 9), 5)
                .unwrap()
                .holds
        );
        assert!(
            bounded_refute_sr1(&t(4, 0), &t(6, 8), &t(1, 1), 50)
                .unwrap()
                .holds
        );
    }
}
