use crate::error::{Error, Result};
use crate::ff::Field;

use super::Matrix;

/// GF(2) matrix with each row packed into one `u64`; bit `j` is column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PackedMatrixF2 {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

fn mask(cols: usize) -> u64 {
    if cols == 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

impl PackedMatrixF2 {
    pub fn zeros(rows: usize, cols: usize) -> PackedMatrixF2 {
        assert!(cols <= 64, "at most 64 columns");
        PackedMatrixF2 { rows, cols, words: vec![0; rows] }
    }

    pub fn identity(n: usize) -> PackedMatrixF2 {
        let mut m = PackedMatrixF2::zeros(n, n);
        for i in 0..n {
            m.words[i] = 1 << i;
        }
        m
    }

    /// Takes row words as given; bits beyond `cols` are cleared.
    pub fn from_words(cols: usize, words: Vec<u64>) -> PackedMatrixF2 {
        assert!(cols <= 64, "at most 64 columns");
        let rows = words.len();
        let words = words.into_iter().map(|w| w & mask(cols)).collect();
        PackedMatrixF2 { rows, cols, words }
    }

    pub fn from_matrix(m: &Matrix) -> Result<PackedMatrixF2> {
        if !m.field().is_prime_field() {
            return Err(Error::UnsupportedField(format!("{} is not GF(2)", m.field())));
        }
        if m.cols() > 64 {
            return Err(Error::EnvelopeExceeded(format!("{} columns", m.cols())));
        }
        let words = (0..m.rows())
            .map(|i| m.row(i).iter().enumerate().fold(0u64, |w, (j, &x)| w | (x as u64) << j))
            .collect();
        Ok(PackedMatrixF2 { rows: m.rows(), cols: m.cols(), words })
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(Field::gf2(), self.rows, self.cols, |i, j| (self.words[i] >> j & 1) as u16)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i] >> j & 1 == 1
    }

    pub fn transpose(&self) -> PackedMatrixF2 {
        let mut t = PackedMatrixF2::zeros(self.cols, self.rows);
        for (i, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                t.words[j] |= 1 << i;
                bits &= bits - 1;
            }
        }
        t
    }

    pub fn mul(&self, other: &PackedMatrixF2) -> Result<PackedMatrixF2> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let words = self
            .words
            .iter()
            .map(|&w| {
                let mut acc = 0u64;
                let mut bits = w;
                while bits != 0 {
                    acc ^= other.words[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Ok(PackedMatrixF2 { rows: self.rows, cols: other.cols, words })
    }

    pub fn add(&self, other: &PackedMatrixF2) -> Result<PackedMatrixF2> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dim("cannot add matrices of different shapes"));
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(PackedMatrixF2 { rows: self.rows, cols: self.cols, words })
    }

    /// Reduced row echelon form and pivot columns, pivoting left to right.
    pub fn echelon(&self) -> (Vec<u64>, Vec<usize>) {
        let mut w = self.words.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == w.len() {
                break;
            }
            let bit = 1u64 << c;
            let Some(p) = (r..w.len()).find(|&i| w[i] & bit != 0) else {
                continue;
            };
            w.swap(r, p);
            let pivot = w[r];
            for (i, x) in w.iter_mut().enumerate() {
                if i != r && *x & bit != 0 {
                    *x ^= pivot;
                }
            }
            pivots.push(c);
            r += 1;
        }
        w.truncate(r);
        (w, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Reduced echelon basis of `{v : self v = 0}`, one word per vector.
    pub fn kernel(&self) -> Vec<u64> {
        let (rref, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<u64> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = 1u64 << c;
                for (row, &p) in rref.iter().zip(&pivots) {
                    if row >> c & 1 == 1 {
                        v |= 1 << p;
                    }
                }
                v
            })
            .collect();
        PackedMatrixF2::from_words(self.cols, raw).echelon().0
    }
}
