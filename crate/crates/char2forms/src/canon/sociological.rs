use crate::error::{Error, Result};
use crate::mat::{standard_form, Matrix, StandardForm};

use super::symmetric::zd_witness;
use super::{CanonResult, ClassLabel, Relation};

/// Canonical representative `S̃^{n, r/2}` of the class of `B` modulo
/// symmetric forms, where `r = rank(B + B^T)`.
///
/// `B + B^T` is reduced to `Z̃(n, r)`; the pairs `(2t, 2t+1)` are then moved
/// to `(t, n-1-t)` so that the polar form matches `S̃ + S̃^T`, and the
/// symmetric remainder becomes the offset `A`.
pub fn sociological_canon(b: &Matrix) -> Result<CanonResult> {
    if !b.is_square() {
        return Err(Error::dim(format!("{}x{} matrix is not square", b.rows(), b.cols())));
    }
    let f = b.field();
    let n = b.rows();
    let polar = b + &b.transpose();
    let w = zd_witness(&polar);
    let r = polar.rank();
    let m = r / 2;
    // Row a of W goes to position target[a].
    let mut target = vec![0; n];
    for t in 0..m {
        target[2 * t] = t;
        target[2 * t + 1] = n - 1 - t;
    }
    for (k, a) in (r..n).enumerate() {
        target[a] = m + k;
    }
    let mut perm = vec![0; n];
    for (a, &t) in target.iter().enumerate() {
        perm[t] = a;
    }
    let p = &Matrix::permutation(f, &perm) * &w;
    let canonical = standard_form(StandardForm::Stilde(m), n, f)?;
    let witness_m = p.inverse().expect("product of invertible matrices");
    let witness_a = b + &canonical.congruent(&witness_m);
    debug_assert!(witness_a.is_symmetric());
    Ok(CanonResult {
        relation: Relation::Sociological,
        label: ClassLabel::Sociological { n, rank: r },
        canonical,
        witness_m,
        witness_a: Some(witness_a),
    })
}
