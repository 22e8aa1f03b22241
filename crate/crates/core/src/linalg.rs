//! Dense exact linear algebra over a field.
//!
//! Used over Q(q) for the symbolic computations and over Q for the
//! specialization cross-checks.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{LaurentFraction, ScalarError};

/// Exact field arithmetic needed by Gaussian elimination.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
        + for<'a> Div<&'a T, Output = T>
{
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QqMatrix = Matrix<LaurentFraction>;

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<U: Field, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<U>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].clone() + &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// `self - lambda * I`.
    pub fn shift_diagonal(&self, lambda: &T) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            m.data[idx] = m.data[idx].clone() - lambda;
        }
        m
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a.clone() * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Stacks matrices with equal column count vertically.
    pub fn vstack(blocks: &[Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m.get(r, c);
            for k in c..m.cols {
                let idx = r * m.cols + k;
                m.data[idx] = m.data[idx].clone() * &inv;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for k in c..m.cols {
                    let v = m.get(r, k);
                    if v.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + k;
                    m.data[idx] = m.data[idx].clone() - &(f.clone() * v);
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
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column. Each vector has
    /// a 1 in its free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }
}

impl Matrix<LaurentFraction> {
    pub fn specialize(&self, q0: &BigRational) -> Result<Matrix<BigRational>, ScalarError> {
        self.map(|x| x.specialize(q0))
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| self.data[r * self.cols + c].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced echelon basis of a row space.
///
/// Rows are kept fully reduced against each other, so a vector is reduced to
/// its normal form by a single pass over the stored rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    dim: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Field> EchelonBasis<T> {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn reduce(&self, v: &mut [T]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[k] = v[k].clone() - &(f.clone() * x);
                }
            }
        }
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, mut v: Vec<T>) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = T::one() / &v[p];
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[k] = row[k].clone() - &(f.clone() * x);
                }
            }
        }
        let at = self.rows.partition_point(|r| r.0 < p);
        self.rows.insert(at, (p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = Matrix::from_rows(3, &[vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip_over_qq() {
        let m: QqMatrix = Matrix::from_rows(
            2,
            &[
                vec!["q".parse().unwrap(), LaurentFraction::one()],
                vec![LaurentFraction::one(), "q^-1 + 1".parse().unwrap()],
            ],
        );
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing: QqMatrix = Matrix::from_rows(
            2,
            &[
                vec!["q".parse().unwrap(), "q^2".parse().unwrap()],
                vec![LaurentFraction::one(), "q".parse().unwrap()],
            ],
        );
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn echelon_basis_reduces_to_normal_form() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(vec![r(1), r(1), r(0)]));
        assert!(b.insert(vec![r(0), r(1), r(1)]));
        assert!(!b.insert(vec![r(1), r(2), r(1)]));
        let mut v = vec![r(0), r(0), r(5)];
        b.reduce(&mut v);
        assert_eq!(b.pivots(), vec![0, 1]);
        assert!(v[0].is_zero() && v[1].is_zero());
        assert_eq!(v[2], r(5));
    }

    #[test]
    fn kron_dimensions() {
        let a = Matrix::<BigRational>::identity(2);
        let b = Matrix::from_rows(2, &[vec![r(0), r(1)], vec![r(1), r(0)]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(2, 3), &r(1));
        assert_eq!(k.get(0, 2), &r(0));
    }
}
