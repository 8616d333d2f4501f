//! Diagonal reduction with certificates: `P A Q = D`, `P` and `Q` invertible,
//! `D` diagonal with a divisibility chain of canonical entries.

use itertools::Itertools;
use serde::Serialize;

use crate::adequate::pi_split;
use crate::error::{Error, Result};
use crate::matrix::{Block2, Matrix};
use crate::ring::{Elem, Ring, RingKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub p: Matrix,
    pub d: Matrix,
    pub q: Matrix,
    /// `det(P)`, a unit.
    pub det_p: Elem,
    /// `det(Q)`, a unit.
    pub det_q: Elem,
}

/// `(a b) U = (d 0)` with `U = [[x, -b1], [y, a1]]`, `det U = 1`.
pub fn hermite_row(a: &Elem, b: &Elem) -> Result<(Elem, Block2)> {
    let data = a.bezout(b)?;
    let u = [[data.x, -&data.b1], [data.y, data.a1]];
    Ok((data.g, u))
}

fn block(m: &[[Elem; 2]; 2]) -> Matrix {
    Matrix::from_rows(
        m[0][0].ring().clone(),
        m.iter().map(|r| r.to_vec()).collect(),
    )
    .expect("2x2")
}

fn mul2(x: &Block2, y: &Block2) -> Block2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn det2(x: &Block2) -> Elem {
    &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0])
}

fn certificate2(p: Block2, q: Block2, d1: Elem, d2: Elem) -> ReductionCertificate {
    let zero = d1.ring().zero();
    let (det_p, det_q) = (det2(&p), det2(&q));
    ReductionCertificate {
        p: block(&p),
        d: block(&[[d1, zero.clone()], [zero, d2]]),
        q: block(&q),
        det_p,
        det_q,
    }
}

/// Reduces `[[a, 0], [b, c]]` with `aR + bR + cR = R` to `diag(1, d)`,
/// `d` the canonical associate of `ac`.
pub fn kaplansky_2x2(a: &Elem, b: &Elem, c: &Elem) -> Result<ReductionCertificate> {
    let ring = a.ring().clone();
    a.try_add(b)?;
    a.try_add(c)?;
    if let Some(factors) = ring.factors() {
        let parts = (0..factors.len())
            .map(|k| {
                let comp = |e: &Elem| e.components().expect("tuple")[k].clone();
                kaplansky_2x2(&comp(a), &comp(b), &comp(c))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(assemble(&ring, &parts));
    }
    if !ring.is_bezout() {
        return Err(Error::UnsupportedRing {
            op: "kaplansky_2x2",
            ring: ring.to_string(),
        });
    }
    if !a.bezout(b)?.g.bezout(c)?.g.is_unit() {
        return Err(Error::NotUnimodular);
    }
    let one = ring.one();
    let zero = ring.zero();
    let (p, q, d2) = if a.is_zero() {
        // bR + cR = R: swap rows, then (b c) Q = (1 0)
        let w = b.bezout(c)?;
        let (pb, qc) = unit_scaled(&w.x, &w.y, &w.g);
        let p = [[zero.clone(), one.clone()], [one.clone(), zero.clone()]];
        let q = [[pb, -c], [qc, b.clone()]];
        (p, q, zero.clone())
    } else if c.is_zero() {
        let w = a.bezout(b)?;
        let (pa, qb) = unit_scaled(&w.x, &w.y, &w.g);
        let p = [[pa, qb.clone()], [-b, a.clone()]];
        let q = [[one.clone(), -(&qb * c)], [zero.clone(), one.clone()]];
        (p, q, a * c)
    } else {
        general_case(a, b, c)?
    };
    let (u, norm) = d2.canonical_associate();
    let inv = u.inverse().expect("unit");
    let p = [p[0].clone(), [&p[1][0] * &inv, &p[1][1] * &inv]];
    Ok(certificate2(p, q, one, norm))
}

/// Bezout coefficients rescaled so that `x a + y b = 1` when the gcd is a unit.
fn unit_scaled(x: &Elem, y: &Elem, g: &Elem) -> (Elem, Elem) {
    let inv = g.inverse().expect("gcd of a unimodular pair is a unit");
    (x * &inv, y * &inv)
}

/// `a, c` nonzero. First splits `c^m = r s` with `r` coprime to `a`, so that
/// `(a + br) R + cr R = R`; if that fails, splits `a^m` relative to `c`.
fn general_case(a: &Elem, b: &Elem, c: &Elem) -> Result<(Block2, Block2, Elem)> {
    let ring = a.ring();
    let one = ring.one();
    let zero = ring.zero();

    if let Ok(split) = pi_split(c, a) {
        let r = &split.r;
        let lhs = a + &(b * r);
        let rhs = c * r;
        let w = lhs.bezout(&rhs)?;
        if w.g.is_unit() {
            let (x, y) = unit_scaled(&w.x, &w.y, &w.g);
            let t = &(b * &x) + &(c * &y);
            let p = mul2(
                &[[one.clone(), zero.clone()], [-&t, one.clone()]],
                &[[one.clone(), r.clone()], [zero.clone(), one.clone()]],
            );
            let q = [[x, -&rhs], [y, lhs]];
            return Ok((p, q, c * a));
        }
    }

    let split = pi_split(a, c)?;
    let r = &split.r;
    let ar = a * r;
    let brc = &(b * r) + c;
    let w = ar.bezout(&brc)?;
    if !w.g.is_unit() {
        return Err(Error::PreconditionFailed(
            "no adequate split makes the 2x2 block unimodular".into(),
        ));
    }
    let (x, y) = unit_scaled(&w.x, &w.y, &w.g);
    let t = &(&x * a) + &(&y * b);
    let p = [[x, y], [-&brc, ar]];
    let q = mul2(
        &[[r.clone(), one.clone()], [one.clone(), zero.clone()]],
        &[[one.clone(), -&t], [zero, one]],
    );
    Ok((p, q, -(a * c)))
}

fn assemble(ring: &Ring, parts: &[ReductionCertificate]) -> ReductionCertificate {
    let pick = |f: fn(&ReductionCertificate) -> &Matrix| {
        Matrix::from_components(
            ring,
            &parts.iter().map(|c| f(c).clone()).collect::<Vec<_>>(),
        )
        .expect("same shapes")
    };
    let tuple = |f: fn(&ReductionCertificate) -> &Elem| {
        ring.tuple(parts.iter().map(|c| f(c).clone()).collect())
            .expect("components")
    };
    ReductionCertificate {
        p: pick(|c| &c.p),
        d: pick(|c| &c.d),
        q: pick(|c| &c.q),
        det_p: tuple(|c| &c.det_p),
        det_q: tuple(|c| &c.det_q),
    }
}

/// Working state: `p * a * q = d` throughout.
struct Reducer {
    p: Matrix,
    d: Matrix,
    q: Matrix,
    det_p: Elem,
    det_q: Elem,
}

impl Reducer {
    fn rows(&mut self, i: usize, j: usize, u: &Block2) {
        self.d.apply_rows(i, j, u);
        self.p.apply_rows(i, j, u);
        self.det_p = &self.det_p * &det2(u);
    }

    fn cols(&mut self, i: usize, j: usize, u: &Block2) {
        self.d.apply_cols(i, j, u);
        self.q.apply_cols(i, j, u);
        self.det_q = &self.det_q * &det2(u);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            let ring = self.d.ring().clone();
            self.rows(
                i,
                j,
                &[[ring.zero(), ring.one()], [ring.one(), ring.zero()]],
            );
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            let ring = self.d.ring().clone();
            self.cols(
                i,
                j,
                &[[ring.zero(), ring.one()], [ring.one(), ring.zero()]],
            );
        }
    }

    fn scale_row(&mut self, i: usize, u: &Elem) {
        self.d.scale_row(i, u);
        self.p.scale_row(i, u);
        self.det_p = &self.det_p * u;
    }

    /// Moves the smallest nonzero entry of the trailing block to `(k, k)`.
    fn choose_pivot(&mut self, k: usize) -> bool {
        let best = (k..self.d.rows())
            .cartesian_product(k..self.d.cols())
            .filter_map(|(i, j)| self.d.get(i, j).pivot_size().map(|s| (s, i, j)))
            .min_by(|x, y| x.0.cmp(&y.0));
        match best {
            Some((_, i, j)) => {
                self.swap_rows(k, i);
                self.swap_cols(k, j);
                true
            }
            None => false,
        }
    }

    /// Clears row `k` and column `k` beyond the pivot. The pivot ideal only
    /// grows, strictly whenever the pivot fails to divide an entry.
    fn clear(&mut self, k: usize) -> Result<()> {
        let ring = self.d.ring().clone();
        let (one, zero) = (ring.one(), ring.zero());
        loop {
            let mut changed = false;
            for j in k + 1..self.d.cols() {
                let (a, b) = (self.d.get(k, k).clone(), self.d.get(k, j).clone());
                if b.is_zero() {
                    continue;
                }
                if let Ok(t) = b.divide_exact(&a) {
                    self.cols(k, j, &[[one.clone(), -&t], [zero.clone(), one.clone()]]);
                } else {
                    let (_, u) = hermite_row(&a, &b)?;
                    self.cols(k, j, &u);
                }
            }
            for i in k + 1..self.d.rows() {
                let (a, b) = (self.d.get(k, k).clone(), self.d.get(i, k).clone());
                if b.is_zero() {
                    continue;
                }
                if let Ok(t) = b.divide_exact(&a) {
                    self.rows(k, i, &[[one.clone(), zero.clone()], [-&t, one.clone()]]);
                } else {
                    let (_, u) = hermite_row(&a, &b)?;
                    let ut = [
                        [u[0][0].clone(), u[1][0].clone()],
                        [u[0][1].clone(), u[1][1].clone()],
                    ];
                    self.rows(k, i, &ut);
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Replaces `(d_i, d_j)` by `(g, g e)`, `g = gcd(d_i, d_j)`, through
    /// `col_i += col_j` and the 2x2 step on `[[a1, 0], [b1, b1]]`.
    fn fix_pair(&mut self, i: usize, j: usize) -> Result<()> {
        let ring = self.d.ring().clone();
        let (one, zero) = (ring.one(), ring.zero());
        self.cols(
            i,
            j,
            &[[one.clone(), zero.clone()], [one.clone(), one.clone()]],
        );
        let (a, c) = (self.d.get(i, i).clone(), self.d.get(j, j).clone());
        let w = a.bezout(&c)?;
        let k = kaplansky_2x2(&w.a1, &w.b1, &w.b1)?;
        let p = [
            [k.p.get(0, 0).clone(), k.p.get(0, 1).clone()],
            [k.p.get(1, 0).clone(), k.p.get(1, 1).clone()],
        ];
        let q = [
            [k.q.get(0, 0).clone(), k.q.get(0, 1).clone()],
            [k.q.get(1, 0).clone(), k.q.get(1, 1).clone()],
        ];
        self.rows(i, j, &p);
        self.cols(i, j, &q);
        Ok(())
    }

    fn normalize(&mut self, i: usize) {
        let (u, _) = self.d.get(i, i).canonical_associate();
        if !u.is_one() {
            self.scale_row(i, &u.inverse().expect("unit"));
        }
    }
}

/// Full diagonal reduction of an `m x n` matrix.
pub fn diagonal_reduce(a: &Matrix) -> Result<ReductionCertificate> {
    let ring = a.ring().clone();
    if let Some(factors) = ring.factors() {
        let parts = (0..factors.len())
            .map(|k| diagonal_reduce(&a.component(k).expect("product entries")))
            .collect::<Result<Vec<_>>>()?;
        return Ok(assemble(&ring, &parts));
    }
    if !ring.is_bezout() {
        return Err(Error::UnsupportedRing {
            op: "diagonal_reduce",
            ring: ring.to_string(),
        });
    }
    let (m, n) = (a.rows(), a.cols());
    let mut st = Reducer {
        p: Matrix::identity(&ring, m),
        d: a.clone(),
        q: Matrix::identity(&ring, n),
        det_p: ring.one(),
        det_q: ring.one(),
    };
    let r = m.min(n);
    for k in 0..r {
        if !st.choose_pivot(k) {
            break;
        }
        st.clear(k)?;
    }
    for i in 0..r {
        for j in i + 1..r {
            if !st.d.get(i, i).divides(st.d.get(j, j)) {
                st.fix_pair(i, j)?;
            }
        }
    }
    for i in 0..r {
        st.normalize(i);
    }
    Ok(ReductionCertificate {
        p: st.p,
        d: st.d,
        q: st.q,
        det_p: st.det_p,
        det_q: st.det_q,
    })
}

/// Largest `min(m, n)` the minor-enumeration oracle accepts.
pub const ORACLE_LIMIT: usize = 6;

/// `D_k` = canonical gcd of all `k x k` minors, `k = 1..=min(m, n)`.
pub fn determinantal_divisors(a: &Matrix) -> Result<Vec<Elem>> {
    let ring = a.ring();
    if !matches!(
        ring.kind(),
        RingKind::Integers | RingKind::PolyOverPrimeField(_)
    ) {
        return Err(Error::UnsupportedRing {
            op: "determinantal_divisors",
            ring: ring.to_string(),
        });
    }
    let r = a.rows().min(a.cols());
    if r > ORACLE_LIMIT {
        return Err(Error::ScaleExceeded(format!(
            "min(m, n) = {r} exceeds {ORACLE_LIMIT}"
        )));
    }
    (1..=r)
        .map(|k| {
            let mut g = ring.zero();
            for rows in (0..a.rows()).combinations(k) {
                for cols in (0..a.cols()).combinations(k) {
                    g = g.bezout(&a.select(&rows, &cols).det()?)?.g;
                }
            }
            Ok(g.canonical_associate().1)
        })
        .collect()
}

/// Elementary divisors implied by the determinantal divisors:
/// `d_k = D_k / D_{k-1}`, zero once `D_k` is zero.
pub fn oracle_diagonal(divisors: &[Elem]) -> Vec<Elem> {
    let mut prev: Option<Elem> = None;
    divisors
        .iter()
        .map(|dk| {
            let d = match &prev {
                _ if dk.is_zero() => dk.clone(),
                None => dk.clone(),
                Some(p) => {
                    dk.divide_exact(p)
                        .expect("D_{k-1} divides D_k")
                        .canonical_associate()
                        .1
                }
            };
            prev = Some(dk.clone());
            d
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Re-checks every certificate clause independently and lists the failures.
pub fn verify_reduction(a: &Matrix, cert: &ReductionCertificate) -> ReductionReport {
    let mut failures = Vec::new();
    let (m, n) = (a.rows(), a.cols());
    let shapes_ok = cert.p.rows() == m
        && cert.p.cols() == m
        && cert.q.rows() == n
        && cert.q.cols() == n
        && cert.d.rows() == m
        && cert.d.cols() == n
        && [&cert.p, &cert.d, &cert.q]
            .iter()
            .all(|x| x.ring() == a.ring())
        && cert.det_p.ring() == a.ring()
        && cert.det_q.ring() == a.ring();
    if !shapes_ok {
        return ReductionReport {
            holds: false,
            failures: vec!["shape".into()],
        };
    }
    let paq = cert
        .p
        .mul(a)
        .and_then(|pa| pa.mul(&cert.q))
        .expect("shapes checked");
    if paq != cert.d {
        failures.push("PAQ=D".into());
    }
    for (name, mat, claimed) in [("P", &cert.p, &cert.det_p), ("Q", &cert.q, &cert.det_q)] {
        let det = mat.det().expect("square");
        if !det.is_unit() {
            failures.push(format!("det({name}) unit"));
        }
        if det != *claimed {
            failures.push(format!("det({name}) matches det{name}"));
        }
    }
    if !cert.d.is_diagonal() {
        failures.push("diagonal".into());
    }
    let diag = cert.d.diagonal();
    if diag.windows(2).any(|w| !w[0].divides(&w[1])) {
        failures.push("divisibility chain".into());
    }
    if diag.iter().any(|d| !d.is_canonical()) {
        failures.push("canonical associates".into());
    }
    ReductionReport {
        holds: failures.is_empty(),
        failures,
    }
}
