//! Small dense matrices over [`Cyclotomic`] with exact Gaussian elimination.

use std::fmt;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Cyclotomic>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyclotomic::from_integer(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Cyclotomic> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let pj = m.get(r, j);
                        if !pj.is_zero() {
                            let v = m.get(i, j) - &(&f * pj);
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Cyclotomic::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn column_space_basis(&self) -> Vec<Vec<Cyclotomic>> {
        let (_, piv) = self.rref();
        piv.into_iter().map(|j| self.column(j)).collect()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyclotomic>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (row, &pc) in piv.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Determinant of the square submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Cyclotomic {
        assert_eq!(rows.len(), cols.len());
        let sub = Matrix::from_rows(rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect());
        sub.det()
    }

    pub fn det(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        match n {
            0 => return Cyclotomic::one(),
            1 => return self.get(0, 0).clone(),
            2 => return self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => {}
        }
        let mut m = self.clone();
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Cyclotomic::zero() };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a set of vectors.
pub fn rank_of(vectors: &[Vec<Cyclotomic>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_err());
        let k = s.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(s.mul_vec(&k[0]).iter().all(Cyclotomic::is_zero));
    }

    #[test]
    fn determinant() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]);
        assert_eq!(m.det(), Cyclotomic::from_integer(-3));
        assert_eq!(m.minor(&[0, 2], &[1, 2]), Cyclotomic::from_integer(9 - 14));
    }
}
