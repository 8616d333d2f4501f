//! Stable-range lifts and completion of a row to a square matrix with a
//! prescribed determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring, RingKind};

/// How one level of the recursive completion was carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompletionStep {
    /// Two entries: second row `(-x2, x1)`.
    Base,
    /// Lift on `q_1, ..., q_{n-2}` not in the radical, then recurse.
    Lift,
    /// `q_{n-1}` added to `q_1` first, undone by a column operation.
    ShiftPenultimate,
    /// `q_n x_n - c` added to `q_1` first, undone by a column operation.
    ShiftLast,
    /// All entries zero.
    ZeroRow,
    /// Rows 2..n supported on the idempotent's corner.
    Idempotent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionCertificate {
    pub matrix: Matrix,
    pub first_row: Vec<Elem>,
    pub det_target: Elem,
    /// Exact determinant of `matrix`.
    pub det_value: Elem,
    pub steps: Vec<CompletionStep>,
}

impl CompletionCertificate {
    /// First row and determinant re-checked from scratch.
    pub fn verify(&self) -> bool {
        self.matrix.row(0) == self.first_row.as_slice()
            && self
                .matrix
                .det()
                .is_ok_and(|d| d == self.det_target && d == self.det_value)
    }
}

fn require_gcd_ring(ring: &Ring, op: &'static str) -> Result<()> {
    match ring.kind() {
        RingKind::Integers | RingKind::Modular(_) | RingKind::PolyOverPrimeField(_) => Ok(()),
        _ => Err(Error::UnsupportedRing {
            op,
            ring: ring.to_string(),
        }),
    }
}

/// Iterated gcd: `(g, x)` with `sum x_i v_i = g` and `gR = v_1 R + ... + v_k R`.
pub fn combination(values: &[Elem]) -> Result<(Elem, Vec<Elem>)> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::Shape("empty list".into()))?;
    let mut g = first.clone();
    let mut coeffs = vec![first.ring().one()];
    for v in rest {
        let w = g.bezout(v)?;
        coeffs.iter_mut().for_each(|c| *c = &*c * &w.x);
        coeffs.push(w.y);
        g = w.g;
    }
    Ok((g, coeffs))
}

fn is_unimodular(values: &[Elem]) -> Result<bool> {
    Ok(combination(values)?.0.is_unit())
}

/// Coefficients with `sum x_i v_i = 1` for a unimodular list.
fn unit_combination(values: &[Elem]) -> Result<Vec<Elem>> {
    let (g, coeffs) = combination(values)?;
    let inv = g.inverse().ok_or(Error::NotUnimodular)?;
    Ok(coeffs.iter().map(|c| c * &inv).collect())
}

/// Largest divisor of `a` coprime to `b` (up to units), by repeatedly
/// removing `gcd(y, b)`.
fn coprime_part(a: &Elem, b: &Elem) -> Result<Elem> {
    let mut y = a.clone();
    loop {
        let g = y.bezout(b)?.g;
        if g.is_unit() {
            return Ok(y);
        }
        y = y.divide_exact(&g)?;
    }
}

/// `y` with `aR + (b + cy)R = R`, given `aR + bR + cR = R` and `a` outside
/// the Jacobson radical. Every prime of `a` dividing `b` misses `cy`, every
/// other prime of `a` divides `y`.
pub fn sr1_quotient_lift(a: &Elem, b: &Elem, c: &Elem) -> Result<Elem> {
    let ring = a.ring().clone();
    require_gcd_ring(&ring, "sr1_quotient_lift")?;
    a.try_add(b)?;
    a.try_add(c)?;
    if !is_unimodular(&[a.clone(), b.clone(), c.clone()])? {
        return Err(Error::PreconditionFailed("aR + bR + cR is not R".into()));
    }
    if a.in_jacobson() {
        return Err(Error::PreconditionFailed(
            "a lies in the Jacobson radical".into(),
        ));
    }
    let y = match ring.kind() {
        RingKind::Modular(n) => {
            // aR = gcd(a, n)R; solve over Z and reduce
            let z = Ring::integers();
            let lift = |e: &Elem| z.from_int(e.as_integer().expect("residue"));
            let big_a = z.from_int(&a.as_integer().expect("residue").gcd(n));
            ring.from_int(lift_y(&big_a, &lift(b))?.as_integer().expect("integer"))
        }
        _ => lift_y(a, b)?,
    };
    debug_assert!(a.bezout(&(b + &(c * &y))).is_ok_and(|w| w.g.is_unit()));
    Ok(y)
}

fn lift_y(a: &Elem, b: &Elem) -> Result<Elem> {
    if a.bezout(b)?.g.is_unit() {
        Ok(a.ring().zero())
    } else {
        coprime_part(a, b)
    }
}

/// `(y1, y2)` with `(a1 + a3 y1)R + (a2 + a3 y2)R = R`.
pub fn sr2_reduce(a1: &Elem, a2: &Elem, a3: &Elem) -> Result<(Elem, Elem)> {
    let ring = a1.ring().clone();
    a1.try_add(a2)?;
    a1.try_add(a3)?;
    if let Some(factors) = ring.factors() {
        let mut ys = (Vec::new(), Vec::new());
        for k in 0..factors.len() {
            let comp = |e: &Elem| e.components().expect("tuple")[k].clone();
            let (y1, y2) = sr2_reduce(&comp(a1), &comp(a2), &comp(a3))?;
            ys.0.push(y1);
            ys.1.push(y2);
        }
        return Ok((ring.tuple(ys.0)?, ring.tuple(ys.1)?));
    }
    require_gcd_ring(&ring, "sr2_reduce")?;
    if !is_unimodular(&[a1.clone(), a2.clone(), a3.clone()])? {
        return Err(Error::NotUnimodular);
    }
    if !a1.in_jacobson() {
        return Ok((ring.zero(), sr1_quotient_lift(a1, a2, a3)?));
    }
    // a1 in J: x2 a2 + x3 a3 = 1 - a1 x1 is a unit w^-1, so
    // a1 + a3 (x3 w) + a2 (x2 w) = 1 + a1 is a unit
    let x = unit_combination(&[a1.clone(), a2.clone(), a3.clone()])?;
    let w = (&ring.one() - &(a1 * &x[0]))
        .inverse()
        .expect("1 - j is a unit for j in J");
    Ok((&x[2] * &w, ring.zero()))
}

/// Square matrix with first row `a` and determinant `d`, given
/// `a_1 R + ... + a_n R = dR`.
pub fn complete_row(a: &[Elem], d: &Elem) -> Result<CompletionCertificate> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Shape(format!(
            "rows of length {n} cannot be completed"
        )));
    }
    let ring = d.ring().clone();
    require_gcd_ring(&ring, "complete_row")?;
    for x in a {
        x.try_add(d)?;
    }
    let (g, coeffs) = combination(a)?;
    let t = d.divide_exact(&g).map_err(|_| Error::NotPrincipal)?;
    let q = a
        .iter()
        .map(|x| x.divide_exact(d))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::NotPrincipal)?;
    let mut steps = Vec::new();
    let matrix = if d.is_zero() {
        steps.push(CompletionStep::ZeroRow);
        zero_row_pattern(a)?
    } else {
        let x: Vec<Elem> = coeffs.iter().map(|c| c * &t).collect();
        complete_inner(a.to_vec(), q, x, d, &mut steps)?
    };
    let det_value = matrix.det()?;
    Ok(CompletionCertificate {
        matrix,
        first_row: a.to_vec(),
        det_target: d.clone(),
        det_value,
        steps,
    })
}

/// First row `a` over rows `e_2, ..., e_n`; determinant zero when `a_1 = 0`.
fn zero_row_pattern(a: &[Elem]) -> Result<Matrix> {
    let ring = a[0].ring();
    let n = a.len();
    let mut rows = vec![a.to_vec()];
    rows.extend((1..n).map(|i| {
        (0..n)
            .map(|j| if i == j { ring.one() } else { ring.zero() })
            .collect()
    }));
    Matrix::from_rows(ring.clone(), rows)
}

/// Invariants: `a_i = d q_i` and `c = sum x_i q_i - 1` satisfies `dc = 0`.
fn complete_inner(
    a: Vec<Elem>,
    q: Vec<Elem>,
    x: Vec<Elem>,
    d: &Elem,
    steps: &mut Vec<CompletionStep>,
) -> Result<Matrix> {
    let ring = d.ring().clone();
    let n = a.len();
    if n == 2 {
        steps.push(CompletionStep::Base);
        return Matrix::from_rows(ring, vec![a.clone(), vec![-&x[1], x[0].clone()]]);
    }
    let one = ring.one();
    let c = &q
        .iter()
        .zip(&x)
        .fold(ring.zero(), |acc, (qi, xi)| &acc + &(qi * xi))
        - &one;
    debug_assert!((d * &c).is_zero());
    // q_1..q_{n-1}, q_n x_n - c generate R
    let w = &(&q[n - 1] * &x[n - 1]) - &c;
    let (h, _) = combination(&q[..n - 2])?;

    if !h.in_jacobson() {
        steps.push(CompletionStep::Lift);
        let z = sr1_quotient_lift(&h, &q[n - 2], &w)?;
        let xz = &x[n - 1] * &z;
        let mut a2 = a[..n - 1].to_vec();
        a2[n - 2] = &a[n - 2] + &(&a[n - 1] * &xz);
        let mut q2 = q[..n - 1].to_vec();
        q2[n - 2] = &q[n - 2] + &(&w * &z);
        let x2 = unit_combination(&q2)?;
        let inner = complete_inner(a2, q2, x2, d, steps)?;
        // [[D, (a_n, 0, ..)^T], [0, 1]] * diag(I, [[1, 0], [-x_n z, 1]])
        let mut rows: Vec<Vec<Elem>> = (0..n - 1)
            .map(|i| {
                let mut r = inner.row(i).to_vec();
                r.push(if i == 0 {
                    a[n - 1].clone()
                } else {
                    ring.zero()
                });
                r
            })
            .collect();
        let mut last = vec![ring.zero(); n];
        last[n - 1] = one.clone();
        rows.push(last);
        let mut m = Matrix::from_rows(ring.clone(), rows)?;
        let zero = ring.zero();
        m.apply_cols(
            n - 2,
            n - 1,
            &[[one.clone(), zero.clone()], [-&xz, one.clone()]],
        );
        return Ok(m);
    }

    let (mut a2, mut q2, mut x2) = (a.clone(), q.clone(), x.clone());
    let undo = if !q[n - 2].in_jacobson() {
        steps.push(CompletionStep::ShiftPenultimate);
        a2[0] = &a[0] + &a[n - 2];
        q2[0] = &q[0] + &q[n - 2];
        x2[n - 2] = &x[n - 2] - &x[0];
        (n - 2, one.clone())
    } else if !w.in_jacobson() {
        steps.push(CompletionStep::ShiftLast);
        a2[0] = &a[0] + &(&a[n - 1] * &x[n - 1]);
        q2[0] = &q[0] + &w;
        x2[n - 1] = &x[n - 1] - &(&x[n - 1] * &x[0]);
        (n - 1, x[n - 1].clone())
    } else {
        return Err(Error::PreconditionFailed(
            "q_1, ..., q_n do not generate R".into(),
        ));
    };
    let mut m = complete_inner(a2, q2, x2, d, steps)?;
    // col_1 -= s col_j restores the first entry
    let (j, s) = undo;
    let zero = ring.zero();
    m.apply_cols(0, j, &[[one.clone(), zero.clone()], [-&s, one]]);
    Ok(m)
}

/// Square matrix with first row `a` and determinant `e`, `e` idempotent in
/// `a_1 R + ... + a_n R`.
pub fn idempotent_complete(a: &[Elem], e: &Elem) -> Result<CompletionCertificate> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Shape(format!(
            "rows of length {n} cannot be completed"
        )));
    }
    for x in a {
        x.try_add(e)?;
    }
    if &(e * e) != e {
        return Err(Error::NotIdempotent(crate::format::element(e)));
    }
    let matrix = idempotent_matrix(a, e)?;
    let det_value = matrix.det()?;
    Ok(CompletionCertificate {
        matrix,
        first_row: a.to_vec(),
        det_target: e.clone(),
        det_value,
        steps: vec![CompletionStep::Idempotent],
    })
}

fn idempotent_matrix(a: &[Elem], e: &Elem) -> Result<Matrix> {
    let ring = e.ring().clone();
    let n = a.len();
    if let Some(factors) = ring.factors() {
        let parts = (0..factors.len())
            .map(|k| {
                let comp = |x: &Elem| x.components().expect("tuple")[k].clone();
                idempotent_matrix(&a.iter().map(comp).collect::<Vec<_>>(), &comp(e))
            })
            .collect::<Result<Vec<_>>>()?;
        return Matrix::from_components(&ring, &parts);
    }
    require_gcd_ring(&ring, "idempotent_complete")?;
    let (g, _) = combination(a)?;
    if !g.divides(e) {
        return Err(Error::NotInIdeal(crate::format::element(e)));
    }
    if e.is_zero() {
        let mut rows = vec![a.to_vec()];
        rows.extend((1..n).map(|_| vec![ring.zero(); n]));
        return Matrix::from_rows(ring, rows);
    }
    if e.is_one() {
        return Ok(complete_row(a, e)?.matrix);
    }
    let modulus = ring
        .modulus()
        .expect("only Z/n has idempotents besides 0 and 1");
    // Z/n = Z/n1 x Z/n0 with e = 1 on the first factor, 0 on the second
    let lift = |x: &Elem| x.as_integer().expect("residue").clone();
    let n0 = lift(e).gcd(modulus);
    let n1: BigInt = modulus / &n0;
    let corner = Ring::modular(n1)?;
    let row1: Vec<Elem> = a.iter().map(|x| corner.from_int(&lift(x))).collect();
    let inner = complete_row(&row1, &corner.one())?.matrix;
    let mut rows = vec![a.to_vec()];
    rows.extend((1..n).map(|i| {
        inner
            .row(i)
            .iter()
            .map(|x| &ring.from_int(&lift(x)) * e)
            .collect()
    }));
    Matrix::from_rows(ring, rows)
}
