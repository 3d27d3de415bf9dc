//! Exact dense linear algebra over `Q(v)`.
//!
//! Everything here is plain Gaussian elimination with exact field arithmetic;
//! the matrices that arise (operators restricted to a bidegree subspace) stay
//! small, so no fraction-free tricks are needed.

use crate::error::{QError, Result};
use crate::scalar::ScalarQ;

/// A dense matrix over `Q(v)`, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<ScalarQ>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ScalarQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ScalarQ::one();
        }
        m
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<ScalarQ>>) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<ScalarQ> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ScalarQ]) -> Vec<ScalarQ> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarQ::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = &acc + &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = &out.data[i] + &other.data[i];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = &out.data[i] - &other.data[i];
        }
        out
    }

    pub fn scale(&self, c: &ScalarQ) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = &*x * c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].clone_from_slice(&self.data);
        out.data[self.data.len()..].clone_from_slice(&other.data);
        out
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // Pick the structurally simplest nonzero pivot to limit swell.
            let mut pivot = None;
            let mut best = usize::MAX;
            for r in row..m.rows {
                if !m[(r, col)].is_zero() {
                    let c = m[(r, col)].complexity();
                    if c < best {
                        best = c;
                        pivot = Some(r);
                    }
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip().expect("pivot is nonzero");
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for j in col..m.cols {
                        let t = &factor * &m[(row, j)];
                        m[(r, j)] = &m[(r, j)] - &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel (each vector has `cols` entries).
    pub fn kernel_basis(&self) -> Vec<Vec<ScalarQ>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![ScalarQ::zero(); self.cols];
            v[free] = ScalarQ::one();
            for (prow, pcol) in pivots.iter().enumerate() {
                v[*pcol] = -&r[(prow, free)];
            }
            out.push(v);
        }
        out
    }

    /// Solve `A x = b` (unique or arbitrary consistent solution); errors when
    /// inconsistent.
    pub fn solve(&self, b: &[ScalarQ]) -> Result<Vec<ScalarQ>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(QError::LinearSolve("inconsistent system".into()));
        }
        let mut x = vec![ScalarQ::zero(); self.cols];
        for (prow, pcol) in pivots.iter().enumerate() {
            x[*pcol] = r[(prow, self.cols)].clone();
        }
        Ok(x)
    }

    /// Solve `A X = B` for several right-hand sides at once.
    pub fn solve_many(&self, rhs: &QMatrix) -> Result<QMatrix> {
        assert_eq!(rhs.rows, self.rows);
        let mut out = QMatrix::zeros(self.cols, rhs.cols);
        for j in 0..rhs.cols {
            let col = self.solve(&rhs.column(j))?;
            for i in 0..self.cols {
                out[(i, j)] = col[i].clone();
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.data.swap(ai, bi);
        }
    }
}

impl ScalarQ {
    /// A crude size measure used only for pivot selection.
    pub fn complexity(&self) -> usize {
        self.numerator().terms().count() + self.denominator().terms().count()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = ScalarQ;
    fn index(&self, (i, j): (usize, usize)) -> &ScalarQ {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ScalarQ {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_number;

    #[test]
    fn rank_and_kernel() {
        // [[1, q], [q^-1, 1]] has rank 1; kernel spanned by (-q, 1).
        let mut m = QMatrix::zeros(2, 2);
        m[(0, 0)] = ScalarQ::one();
        m[(0, 1)] = ScalarQ::q();
        m[(1, 0)] = ScalarQ::q_pow(-1);
        m[(1, 1)] = ScalarQ::one();
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        let img = m.mul_vec(&ker[0]);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_unique() {
        let mut m = QMatrix::zeros(2, 2);
        m[(0, 0)] = q_number(2);
        m[(0, 1)] = ScalarQ::one();
        m[(1, 0)] = ScalarQ::zero();
        m[(1, 1)] = q_number(3);
        let b = vec![ScalarQ::one(), q_number(3)];
        let x = m.solve(&b).unwrap();
        let back = m.mul_vec(&x);
        assert_eq!(back, b);
    }

    #[test]
    fn solve_inconsistent() {
        let mut m = QMatrix::zeros(2, 1);
        m[(0, 0)] = ScalarQ::one();
        m[(1, 0)] = ScalarQ::one();
        let b = vec![ScalarQ::one(), ScalarQ::q()];
        assert!(m.solve(&b).is_err());
    }
}
