use crate::error::{Error, Result};
use crate::mat::{standard_form, zhat_root, Matrix, StandardForm};

use super::{transposition, CanonResult, ClassLabel, Relation, SymClass};

/// `W` with `W B W^T = Z̃(n, rank B)` for symmetric zero-diagonal `B`.
///
/// Locates the first nonzero `B_ij` (i < j) in row-major order, moves it to
/// position (0, 1), scales it to 1, clears the first two rows and columns
/// against the resulting `Π_2` block and recurses on the rest.
pub(crate) fn zd_witness(b: &Matrix) -> Matrix {
    let f = b.field();
    let n = b.rows();
    let pivot = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| b.get(i, j) != 0);
    let Some((i, j)) = pivot else {
        return Matrix::identity(f, n);
    };
    let p = &transposition(f, n, 1, j) * &transposition(f, n, 0, i);
    let c = b.congruent(&p);
    let mut d = Matrix::identity(f, n);
    d.set(0, 0, f.inv(c.get(0, 1)).expect("pivot is nonzero"));
    let c = c.congruent(&d);
    // Clearing matrix [[1, 0], [X Π_2, 1]] with X the lower-left block.
    let mut l = Matrix::identity(f, n);
    for k in 2..n {
        l.set(k, 0, c.get(k, 1));
        l.set(k, 1, c.get(k, 0));
    }
    let e = c.congruent(&l);
    let w1 = zd_witness(&e.submatrix(2, 2, n - 2, n - 2));
    let step = &(&l * &d) * &p;
    &Matrix::block_diag(f, &[&Matrix::identity(f, 2), &w1]) * &step
}

/// `W` with `W B W^T = 1_n` for non-degenerate symmetric `B` that is not
/// zero-diagonal.
fn nondeg_witness(b: &Matrix) -> Matrix {
    let f = b.field();
    let n = b.rows();
    if n == 0 {
        return Matrix::identity(f, 0);
    }
    let i = (0..n).find(|&i| b.get(i, i) != 0).expect("not zero-diagonal");
    let p = transposition(f, n, 0, i);
    let c = b.congruent(&p);
    let mut d = Matrix::identity(f, n);
    d.set(0, 0, f.inv(f.sqrt(c.get(0, 0))).expect("nonzero"));
    let c = c.congruent(&d);
    let mut l = Matrix::identity(f, n);
    for k in 1..n {
        l.set(k, 0, c.get(k, 0));
    }
    let e = c.congruent(&l);
    let step = &(&l * &d) * &p;
    if n == 1 {
        return step;
    }
    let d1 = e.submatrix(1, 1, n - 1, n - 1);
    if d1.is_zero_diagonal() {
        // D1 ~ Z(n-1), so B ~ Ẑ(n), which M^{-1} carries to 1_n.
        let w1 = zd_witness(&d1);
        let to_zhat = &Matrix::block_diag(f, &[&Matrix::identity(f, 1), &w1]) * &step;
        let m_inv = zhat_root(n, f).inverse().expect("M is invertible");
        &m_inv * &to_zhat
    } else {
        let w1 = nondeg_witness(&d1);
        &Matrix::block_diag(f, &[&Matrix::identity(f, 1), &w1]) * &step
    }
}

fn require_symmetric(b: &Matrix) -> Result<()> {
    if !b.is_square() {
        return Err(Error::dim(format!("{}x{} matrix is not square", b.rows(), b.cols())));
    }
    if !b.is_symmetric() {
        return Err(Error::pre("matrix is not symmetric"));
    }
    Ok(())
}

/// Reduces a symmetric zero-diagonal matrix to `Z̃(n, r)`.
pub fn reduce_zero_diagonal(b: &Matrix) -> Result<CanonResult> {
    require_symmetric(b)?;
    if !b.is_zero_diagonal() {
        return Err(Error::pre("matrix is not zero-diagonal"));
    }
    let n = b.rows();
    let w = zd_witness(b);
    let canonical = b.congruent(&w);
    let r = b.rank();
    debug_assert_eq!(canonical, standard_form(StandardForm::Ztilde(r), n, b.field()).unwrap());
    Ok(CanonResult {
        relation: Relation::Congruence,
        label: ClassLabel::Symmetric(SymClass { n, r, fully_isotropic: true }),
        canonical,
        witness_m: w,
        witness_a: None,
    })
}

/// Reduces a symmetric matrix to `Z̃(n, r)` (alternating case) or
/// `diag(1_r, 0)`.
///
/// Degenerate input is split first: the rows of the change of basis are a
/// complement of the radical built greedily from unit vectors, followed by
/// the echelon basis of the radical.
pub fn reduce_symmetric(b: &Matrix) -> Result<CanonResult> {
    require_symmetric(b)?;
    if b.is_zero_diagonal() {
        return reduce_zero_diagonal(b);
    }
    let f = b.field();
    let n = b.rows();
    let radical = b.kernel();
    let r = n - radical.dim();
    let mut span = radical.clone();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if span.insert(e.clone()) {
            rows.push(e);
        }
    }
    rows.extend(radical.basis().iter().cloned());
    let p = super::rows_matrix(f, n, &rows);
    let restricted = b.congruent(&p).submatrix(0, 0, r, r);
    let w = nondeg_witness(&restricted);
    let m = &Matrix::block_diag(f, &[&w, &Matrix::identity(f, n - r)]) * &p;
    let mut canonical = Matrix::zeros(f, n, n);
    for i in 0..r {
        canonical.set(i, i, 1);
    }
    debug_assert_eq!(b.congruent(&m), canonical);
    Ok(CanonResult {
        relation: Relation::Congruence,
        label: ClassLabel::Symmetric(SymClass { n, r, fully_isotropic: false }),
        canonical,
        witness_m: m,
        witness_a: None,
    })
}

/// Outcome of [`equiv_symmetric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricEquivalence {
    pub equivalent: bool,
    /// `X` with `X B X^T = C` when equivalent.
    pub witness: Option<Matrix>,
}

/// Decides congruence of two symmetric matrices.
pub fn equiv_symmetric(b: &Matrix, c: &Matrix) -> Result<SymmetricEquivalence> {
    if b.field() != c.field() {
        return Err(Error::FieldMismatch(b.field().degree(), c.field().degree()));
    }
    if b.rows() != c.rows() || b.cols() != c.cols() {
        return Err(Error::dim("matrices of different sizes"));
    }
    let rb = reduce_symmetric(b)?;
    let rc = reduce_symmetric(c)?;
    if rb.label != rc.label {
        return Ok(SymmetricEquivalence { equivalent: false, witness: None });
    }
    let wc_inv = rc.witness_m.inverse().expect("witness is invertible");
    let x = &wc_inv * &rb.witness_m;
    debug_assert_eq!(b.congruent(&x), *c);
    Ok(SymmetricEquivalence { equivalent: true, witness: Some(x) })
}
