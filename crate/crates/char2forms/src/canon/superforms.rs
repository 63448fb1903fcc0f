use crate::error::{Error, Result};
use crate::mat::{standard_form, Matrix, StandardForm};

use super::jordan::jordan_form;
use super::symmetric::reduce_symmetric;
use super::{CanonResult, ClassLabel, Relation};

fn check_sdim(b: &Matrix, n0: usize, n1: usize) -> Result<()> {
    if !b.is_square() || b.rows() != n0 + n1 {
        return Err(Error::dim(format!(
            "{}x{} matrix does not fit superdimension ({n0}|{n1})",
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

fn offdiag_zero(b: &Matrix, n0: usize) -> bool {
    let n = b.rows();
    (0..n).all(|i| (0..n).all(|j| (i < n0) == (j < n0) || b.get(i, j) == 0))
}

fn diag_blocks_zero(b: &Matrix, n0: usize) -> bool {
    let n = b.rows();
    (0..n).all(|i| (0..n).all(|j| (i < n0) != (j < n0) || b.get(i, j) == 0))
}

/// Reduces each diagonal block of an even symmetric superform independently.
pub fn super_even_canon(b: &Matrix, n0: usize, n1: usize) -> Result<CanonResult> {
    check_sdim(b, n0, n1)?;
    if !offdiag_zero(b, n0) {
        return Err(Error::pre("even form must be block-diagonal in standard format"));
    }
    let f = b.field();
    let r0 = reduce_symmetric(&b.submatrix(0, 0, n0, n0))?;
    let r1 = reduce_symmetric(&b.submatrix(n0, n0, n1, n1))?;
    let (ClassLabel::Symmetric(even), ClassLabel::Symmetric(odd)) = (r0.label, r1.label) else {
        unreachable!("reduce_symmetric labels are symmetric classes")
    };
    Ok(CanonResult {
        relation: Relation::Congruence,
        label: ClassLabel::SuperEven { even, odd },
        canonical: Matrix::block_diag(f, &[&r0.canonical, &r1.canonical]),
        witness_m: Matrix::block_diag(f, &[&r0.witness_m, &r1.witness_m]),
        witness_a: None,
    })
}

/// Odd symmetric form `[[0, B̄], [B̄^T, 0]]` on `(k|k)` to `Π_{2k}`.
///
/// The witness is `diag(1_k, (B̄^T)^{-1})`, which agrees with
/// `diag(1_k, B̄^{-1})` whenever `B̄` is symmetric.
pub fn super_odd_sym_canon(b: &Matrix, n0: usize, n1: usize) -> Result<CanonResult> {
    check_sdim(b, n0, n1)?;
    if n0 != n1 {
        return Err(Error::param(format!("odd symmetric form needs (k|k), got ({n0}|{n1})")));
    }
    if !diag_blocks_zero(b, n0) || !b.is_symmetric() {
        return Err(Error::pre("expected an odd symmetric form in standard format"));
    }
    let f = b.field();
    let k = n0;
    let bar = b.submatrix(0, k, k, k);
    let inv_t = bar
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Degenerate("off-diagonal block is singular".into()))?;
    let witness_m = Matrix::block_diag(f, &[&Matrix::identity(f, k), &inv_t]);
    Ok(CanonResult {
        relation: Relation::Congruence,
        label: ClassLabel::Periplectic { k },
        canonical: standard_form(StandardForm::Pi, 2 * k, f)?,
        witness_m,
        witness_a: None,
    })
}

/// Odd form `[[0, A], [C, 0]]` on `(k|k)` to `[[0, 1_k], [L, 0]]`, L the
/// Jordan form of `C (A^T)^{-1}`.
pub fn super_odd_nonsym_canon(b: &Matrix, n0: usize, n1: usize) -> Result<CanonResult> {
    check_sdim(b, n0, n1)?;
    if n0 != n1 {
        return Err(Error::param(format!("odd form needs (k|k), got ({n0}|{n1})")));
    }
    if !diag_blocks_zero(b, n0) {
        return Err(Error::pre("odd form must have zero diagonal blocks"));
    }
    let f = b.field();
    let k = n0;
    let a = b.submatrix(0, k, k, k);
    let c = b.submatrix(k, 0, k, k);
    let a_inv = a.inverse().ok_or_else(|| Error::Degenerate("upper block is singular".into()))?;
    if !c.is_invertible() {
        return Err(Error::Degenerate("lower block is singular".into()));
    }
    let t = &c * &a_inv.transpose();
    let jd = jordan_form(&t)?;
    // P^{-1} T P = L; with M = P^{-1}: diag((M^T)^{-1} A^{-1}, M).
    let m = jd.transform.inverse().expect("Jordan basis is invertible");
    let top = &m.transpose().inverse().expect("invertible") * &a_inv;
    let witness_m = Matrix::block_diag(f, &[&top, &m]);
    let mut canonical = Matrix::zeros(f, 2 * k, 2 * k);
    canonical.set_block(0, k, &Matrix::identity(f, k));
    canonical.set_block(k, 0, &jd.form);
    Ok(CanonResult {
        relation: Relation::Congruence,
        label: ClassLabel::OddJordan { k, blocks: jd.blocks },
        canonical,
        witness_m,
        witness_a: None,
    })
}
