//! Dense row-major matrices over a [`Ring`].

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

/// A 2x2 block `[[u00, u01], [u10, u11]]` applied to a pair of rows or columns.
pub type Block2 = [[Elem; 2]; 2];

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("{rows}x{cols} matrix has no entries")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != &ring) {
            return Err(Error::DescriptorMismatch {
                left: ring.to_string(),
                right: bad.ring().to_string(),
            });
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(ring, m, n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor embedding integer entries into `ring`.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            ring.clone(),
            rows.iter()
                .map(|r| r.iter().map(|&v| ring.int(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        debug_assert_eq!(v.ring(), &self.ring);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::DescriptorMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a * other.get(k, j);
                }
                out.push(acc);
            }
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Left-multiplies rows `i` and `j` by `u`:
    /// `row_i <- u00 row_i + u01 row_j`, `row_j <- u10 row_i + u11 row_j`.
    pub fn apply_rows(&mut self, i: usize, j: usize, u: &Block2) {
        for c in 0..self.cols {
            let (x, y) = (self.get(i, c).clone(), self.get(j, c).clone());
            self.set(i, c, &u[0][0] * &x + &u[0][1] * &y);
            self.set(j, c, &u[1][0] * &x + &u[1][1] * &y);
        }
    }

    /// Right-multiplies columns `i` and `j` by `u`:
    /// `col_i <- col_i u00 + col_j u10`, `col_j <- col_i u01 + col_j u11`.
    pub fn apply_cols(&mut self, i: usize, j: usize, u: &Block2) {
        for r in 0..self.rows {
            let (x, y) = (self.get(r, i).clone(), self.get(r, j).clone());
            self.set(r, i, &x * &u[0][0] + &y * &u[1][0]);
            self.set(r, j, &x * &u[0][1] + &y * &u[1][1]);
        }
    }

    pub fn scale_row(&mut self, i: usize, by: &Elem) {
        for c in 0..self.cols {
            let v = self.get(i, c) * by;
            self.set(i, c, v);
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Determinant by the division-free Berkowitz recursion; valid over any
    /// commutative ring, zero divisors included.
    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let ring = &self.ring;
        // charpoly coefficients [1, c1, ..., c_m] of the trailing m x m block
        let mut vec = vec![ring.one(), -self.get(n - 1, n - 1)];
        for k in (0..n - 1).rev() {
            let m = n - k; // size of the block starting at k
            let tail: Vec<usize> = (k + 1..n).collect();
            let mut item: Vec<Elem> = tail.iter().map(|&i| self.get(i, k).clone()).collect();
            let mut diags = vec![ring.one(), -self.get(k, k)];
            for step in 0..m - 1 {
                if step > 0 {
                    item = tail
                        .iter()
                        .map(|&i| {
                            tail.iter()
                                .zip(&item)
                                .fold(ring.zero(), |acc, (&j, v)| acc + self.get(i, j) * v)
                        })
                        .collect();
                }
                let dot = tail
                    .iter()
                    .zip(&item)
                    .fold(ring.zero(), |acc, (&j, v)| acc + self.get(k, j) * v);
                diags.push(-dot);
            }
            // Toeplitz (m+1) x m lower-triangular product with the previous vector
            vec = (0..=m)
                .map(|i| {
                    (0..m.min(i + 1)).fold(ring.zero(), |acc, j| acc + &diags[i - j] * &vec[j])
                })
                .collect();
        }
        let last = vec[n].clone();
        Ok(if n.is_multiple_of(2) { last } else { -last })
    }

    /// Component `k` of a matrix over a product ring.
    pub fn component(&self, k: usize) -> Option<Matrix> {
        let factor = self.ring.factors()?.get(k)?.clone();
        let entries = self
            .entries
            .iter()
            .map(|e| e.components().map(|c| c[k].clone()))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            ring: factor,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reassembles a product-ring matrix from its components.
    pub fn from_components(ring: &Ring, parts: &[Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("no components".into()))?;
        let (rows, cols) = (first.rows, first.cols);
        if parts.iter().any(|p| p.rows != rows || p.cols != cols) {
            return Err(Error::Shape("components differ in shape".into()));
        }
        let entries = (0..rows * cols)
            .map(|idx| ring.tuple(parts.iter().map(|p| p.entries[idx].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(ring.clone(), rows, cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Leibniz expansion over all permutations.
    fn leibniz(m: &Matrix) -> Elem {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = m.ring().zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term = (0..n).fold(m.ring().one(), |t, i| t * m.get(i, p[i]));
            acc = if inversions % 2 == 0 {
                acc + term
            } else {
                acc - term
            };
        }
        acc
    }

    #[test]
    fn det_small_cases() {
        let z = Ring::integers();
        assert_eq!(
            Matrix::from_ints(&z, &[&[7]]).unwrap().det().unwrap(),
            z.int(7)
        );
        assert_eq!(
            Matrix::from_ints(&z, &[&[2, 4], &[6, 8]])
                .unwrap()
                .det()
                .unwrap(),
            z.int(-8)
        );
        assert_eq!(Matrix::identity(&z, 4).det().unwrap(), z.one());
        let zn = Ring::modular(6).unwrap();
        let m = Matrix::from_ints(&zn, &[&[2, 3], &[3, 2]]).unwrap();
        assert_eq!(m.det().unwrap(), zn.int(4 - 9));
    }

    proptest! {
        #[test]
        fn berkowitz_matches_leibniz(n in 1usize..6, vals in proptest::collection::vec(-9i64..10, 25)) {
            let z = Ring::integers();
            let rows: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| z.int(vals[i * 5 + j])).collect()).collect();
            let m = Matrix::from_rows(z, rows).unwrap();
            prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        }

        #[test]
        fn berkowitz_matches_leibniz_mod_12(n in 1usize..5, vals in proptest::collection::vec(0i64..12, 16)) {
            let r = Ring::modular(12).unwrap();
            let rows: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| r.int(vals[i * 4 + j])).collect()).collect();
            let m = Matrix::from_rows(r, rows).unwrap();
            prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        }
    }

    #[test]
    fn row_and_column_blocks() {
        let z = Ring::integers();
        let mut m = Matrix::from_ints(&z, &[&[4, 6], &[1, 1]]).unwrap();
        // (4 6) [[-1, -3], [1, 2]] = (2, 0)
        let u = [[z.int(-1), z.int(-3)], [z.int(1), z.int(2)]];
        m.apply_cols(0, 1, &u);
        assert_eq!(m.row(0), &[z.int(2), z.int(0)]);
        let mut t = Matrix::from_ints(&z, &[&[4, 1], &[6, 1]]).unwrap();
        let ut = [[z.int(-1), z.int(1)], [z.int(-3), z.int(2)]];
        t.apply_rows(0, 1, &ut);
        assert_eq!(t.get(0, 0), &z.int(2));
        assert_eq!(t.get(1, 0), &z.int(0));
    }

    #[test]
    fn product_components_round_trip() {
        let r = Ring::product(vec![Ring::integers(), Ring::modular(5).unwrap()]).unwrap();
        let m = Matrix::from_ints(&r, &[&[1, 7], &[-2, 3]]).unwrap();
        let parts = [m.component(0).unwrap(), m.component(1).unwrap()];
        assert_eq!(Matrix::from_components(&r, &parts).unwrap(), m);
    }
}
