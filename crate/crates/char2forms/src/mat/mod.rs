//! Dense matrices over GF(2^m), a bit-packed GF(2) kernel, the standard
//! matrices of the theory and the plain-text matrix format.

mod echelon;
mod packed;
mod standard;
mod text;

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem};

pub use echelon::{axpy, Subspace};
pub use packed::PackedMatrixF2;
pub use standard::{standard_form, zhat_root, StandardForm};
pub use text::{format_matrix, parse_matrix};

/// Row-major dense matrix over a field of characteristic 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<u16>,
}

/// Gram matrix of a bilinear form.
pub type FormMatrix = Matrix;

/// Result of Gaussian elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Reduced row echelon form.
    pub rref: Matrix,
    /// Pivot column of each nonzero row of `rref`.
    pub pivots: Vec<usize>,
}

/// The three predicates used throughout the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub is_symmetric: bool,
    pub is_zero_diagonal: bool,
    pub is_invertible: bool,
}

/// Operations accepted by [`mat_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Add,
    /// Transpose of the first operand; the second is ignored.
    Transpose,
}

/// Checked matrix arithmetic.
pub fn mat_arith(op: MatOp, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    match op {
        MatOp::Mul => a.try_mul(b),
        MatOp::Add => a.try_add(b),
        MatOp::Transpose => Ok(a.transpose()),
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u16) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Builds a matrix from row-major raw entries, validating each one.
    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<u16>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::ElementOutOfRange { bits: bad as u32, m: field.degree() });
        }
        Ok(Matrix { rows, cols, field, data })
    }

    pub fn from_rows(field: Field, rows: &[Vec<u16>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dim("ragged rows"));
        }
        Matrix::from_flat(field, rows.len(), cols, rows.concat())
    }

    /// Column vector.
    pub fn column(field: Field, v: &[u16]) -> Matrix {
        Matrix { rows: v.len(), cols: 1, field, data: v.to_vec() }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(field: Field, d: &[u16]) -> Matrix {
        let n = d.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &x) in d.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    /// Permutation matrix whose row `i` is the unit vector `e_{perm[i]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.data[i * n + p] = 1;
        }
        m
    }

    /// Block-diagonal concatenation.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<u16> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElem {
        self.field.elem(self.get(i, j)).expect("entries are validated")
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero_diagonal(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i) == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn predicates(&self) -> Result<Predicates> {
        if !self.is_square() {
            return Err(Error::dim(format!("{}x{} matrix is not square", self.rows, self.cols)));
        }
        Ok(Predicates {
            is_symmetric: self.is_symmetric(),
            is_zero_diagonal: self.is_zero_diagonal(),
            is_invertible: self.is_invertible(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.degree(), other.field.degree()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    axpy(f, dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dim(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, c: u16) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|&x| f.mul(c, x)).collect(), ..*self }
    }

    /// Entrywise map.
    pub fn map(&self, g: impl Fn(u16) -> u16) -> Matrix {
        Matrix { data: self.data.iter().map(|&x| g(x)).collect(), ..*self }
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u16]) -> Vec<u16> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b)))
            .collect()
    }

    /// Bilinear form value `x^T self y`.
    pub fn form(&self, x: &[u16], y: &[u16]) -> u16 {
        let f = self.field;
        self.mul_vec(y).iter().zip(x).fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b))
    }

    /// `m * self * m^T`.
    pub fn congruent(&self, m: &Matrix) -> Matrix {
        &(m * self) * &m.transpose()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn trace(&self) -> u16 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| acc ^ self.get(i, i))
    }

    /// Gaussian elimination, pivoting on the first nonzero entry of each
    /// column from the left.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            let cols = m.cols;
            for x in &mut m.data[r * cols..(r + 1) * cols] {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..self.rows {
                let a = m.get(i, c);
                if i != r && a != 0 {
                    axpy(f, &mut m.data[i * cols..(i + 1) * cols], a, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        if self.field.is_prime_field() && self.cols <= 64 {
            return PackedMatrixF2::from_matrix(self).expect("GF(2) fits").rank();
        }
        self.echelon().pivots.len()
    }

    /// Echelonized basis of the right kernel `{v : self v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let e = self.echelon();
        let f = self.field;
        let mut free = vec![true; self.cols];
        for &p in &e.pivots {
            free[p] = false;
        }
        let vectors = (0..self.cols).filter(|&c| free[c]).map(|c| {
            let mut v = vec![0; self.cols];
            v[c] = 1;
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = e.rref.get(r, c);
            }
            v
        });
        Subspace::span(f, self.cols, vectors)
    }

    pub fn rank_and_kernel(&self) -> (usize, Subspace) {
        let k = self.kernel();
        (self.cols - k.dim(), k)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(self.field, n));
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(e.rref.submatrix(0, n, n, n))
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    /// Panics on a dimension or field mismatch; see [`Matrix::try_mul`].
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{}", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:x}")).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of lowercase hex strings.
impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| format!("{x:x}")).collect()).collect();
        rows.serialize(s)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:x}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
