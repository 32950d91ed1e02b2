//! Dense row-major matrices over a [`Ring`] and sparse integer matrices.

use crate::error::{Error, Result};
use crate::rings::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Mismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise image under an arbitrary map (e.g. a ring homomorphism).
    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zero<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, diag: &[E]) -> Self {
        let n = diag.len();
        Matrix::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { ring.zero() })
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        Matrix { rows: self.rows, cols: other.cols, data: ring.mat_mul(self.rows, self.cols, other.cols, &self.data, &other.data) }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| ring.sub(a, b)).collect() }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|a| ring.neg(a))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|a| ring.mul(c, a))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|a| ring.is_zero(a))
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool
    where
        E: PartialEq,
    {
        self.is_square() && *self == Matrix::identity(ring, self.rows)
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, k: u32) -> Self {
        (0..k).fold(Matrix::identity(ring, self.rows), |acc, _| acc.mul(ring, self))
    }

    /// Matrix-vector product.
    pub fn apply<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        ring.mat_mul(self.rows, self.cols, 1, &self.data, v)
    }
}

/// Sparse integer matrix, used for adjoint matrices and their divided powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseInt {
    pub n: usize,
    /// `(row, col, value)` with nonzero values, sorted by row then column.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseInt {
    pub fn from_dense(n: usize, dense: &[i64]) -> Self {
        let entries = (0..n * n).filter(|&k| dense[k] != 0).map(|k| (k / n, k % n, dense[k])).collect();
        SparseInt { n, entries }
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut d = vec![0i64; self.n * self.n];
        for &(i, j, v) in &self.entries {
            d[i * self.n + j] = v;
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.iter().find(|&&(r, c, _)| r == i && c == j).map_or(0, |e| e.2)
    }

    /// `self · other` over ℤ.
    pub fn mul(&self, other: &SparseInt) -> SparseInt {
        let n = self.n;
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for &(i, j, v) in &other.entries {
            rows[i].push((j, v));
        }
        let mut dense = vec![0i64; n * n];
        for &(i, k, a) in &self.entries {
            for &(j, b) in &rows[k] {
                dense[i * n + j] += a * b;
            }
        }
        SparseInt::from_dense(n, &dense)
    }

    /// Exact division of every entry; `None` if some entry is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<SparseInt> {
        if self.entries.iter().any(|e| e.2 % d != 0) {
            return None;
        }
        Some(SparseInt { n: self.n, entries: self.entries.iter().map(|&(i, j, v)| (i, j, v / d)).collect() })
    }

    /// Image in a ring.
    pub fn to_ring<R: Ring>(&self, ring: &R) -> Matrix<R::Elem> {
        let mut m = Matrix::zero(ring, self.n, self.n);
        for &(i, j, v) in &self.entries {
            m.set(i, j, ring.from_i64(v));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{FiniteRing, Integers};
    use num_bigint::BigInt;

    #[test]
    fn products_agree_across_rings() {
        let a = SparseInt::from_dense(3, &[1, 2, 0, 0, 1, -3, 4, 0, 1]);
        let b = SparseInt::from_dense(3, &[0, 1, 1, 2, 0, 5, -1, 1, 0]);
        let prod = a.mul(&b);
        let z = Integers;
        let zp = a.to_ring(&z).mul(&z, &b.to_ring(&z));
        assert_eq!(zp, prod.to_ring(&z));
        for r in ["Z/7", "F4", "Z/3xZ/3"] {
            let r = FiniteRing::parse(r).unwrap();
            assert_eq!(a.to_ring(&r).mul(&r, &b.to_ring(&r)), prod.to_ring(&r));
        }
        assert_eq!(*zp.get(1, 2), BigInt::from(5));
    }

    #[test]
    fn divided_power_division() {
        let a = SparseInt::from_dense(2, &[2, 4, 0, 6]);
        assert_eq!(a.div_exact(2).unwrap().to_dense(), vec![1, 2, 0, 3]);
        assert!(a.div_exact(4).is_none());
    }

    #[test]
    fn rectangular_shapes() {
        let r = FiniteRing::zmod(5);
        let a = Matrix::from_rows(vec![vec![1, 2, 3]]).unwrap();
        let b = Matrix::from_rows(vec![vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(a.mul(&r, &b).data, vec![1]);
        assert_eq!(b.mul(&r, &a).rows, 3);
        assert!(Matrix::from_rows(vec![vec![1u32], vec![]]).is_err());
    }
}
