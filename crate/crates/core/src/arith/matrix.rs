//! Dense rational matrices: just enough linear algebra for Gram matrices and
//! torus generators.

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn echelon(&self) -> (Matrix, usize, bool) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut swaps = false;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..m.cols {
                    m.data.swap(pivot * m.cols + j, rank * m.cols + j);
                }
                swaps = !swaps;
            }
            let p = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for j in col..m.cols {
                    let d = &f * &m[(rank, j)];
                    m[(r, j)] -= d;
                }
            }
            rank += 1;
        }
        (m, rank, swaps)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (m, rank, swaps) = self.echelon();
        if rank < self.rows {
            return Rational::zero();
        }
        let d: Rational = (0..self.rows).map(|i| m[(i, i)].clone()).product();
        if swaps {
            -d
        } else {
            d
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Diagonal entries of a congruent diagonal form of a symmetric matrix.
    /// Rank-deficient directions are reported as zero entries.
    pub fn diagonalize_symmetric(&self) -> Vec<Rational> {
        assert!(self.is_symmetric(), "matrix is not symmetric");
        let mut m = self.clone();
        let n = m.rows;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if m[(k, k)].is_zero() {
                // Bring in a later basis vector to make the pivot nonzero.
                if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                    m.swap_basis(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                    // e_k := e_k + e_j gives pivot 2 m_kj.
                    m.add_basis(k, j, &Rational::one());
                }
            }
            let p = m[(k, k)].clone();
            if p.is_zero() {
                out.push(Rational::zero());
                continue;
            }
            for j in k + 1..n {
                if m[(k, j)].is_zero() {
                    continue;
                }
                let f = -(&m[(k, j)] / &p);
                m.add_basis(j, k, &f);
            }
            out.push(p);
        }
        out
    }

    fn swap_basis(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replace basis vector e_a by e_a + f e_b (congruence).
    fn add_basis(&mut self, a: usize, b: usize, f: &Rational) {
        for j in 0..self.cols {
            let d = f * &self[(b, j)];
            self[(a, j)] += d;
        }
        for i in 0..self.rows {
            let d = f * &self[(i, b)];
            self[(i, a)] += d;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn det_and_rank() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), int(-1));
        assert_eq!(m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).det(), int(18));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::identity(5).det(), int(1));
    }

    #[test]
    fn diagonalize_hyperbolic() {
        let d = m(&[&[0, 1], &[1, 0]]).diagonalize_symmetric();
        assert_eq!(d.len(), 2);
        assert_eq!(&d[0] * &d[1], int(-1));
        let g = m(&[&[1, 2, 3], &[2, 5, 7], &[3, 7, 2]]);
        let d = g.diagonalize_symmetric();
        let prod: Rational = d.iter().cloned().product();
        assert_eq!(prod, g.det());
    }
}
