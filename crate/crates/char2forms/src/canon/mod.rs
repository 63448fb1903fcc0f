//! Canonical forms with witnesses for congruence, sociological equivalence,
//! the quadratic (Albert) equivalence and the super variants.
//!
//! Every reduction returns a [`CanonResult`] whose certificate can be
//! re-checked with [`CanonResult::verify`].

mod albert;
mod jordan;
mod sociological;
mod superforms;
mod symmetric;

use serde::Serialize;

use crate::mat::Matrix;

pub use albert::{albert_canon, quadratic_value, y_arf};
pub use jordan::{jordan_form, JordanDecomposition};
pub use sociological::sociological_canon;
pub use superforms::{super_even_canon, super_odd_nonsym_canon, super_odd_sym_canon};
pub use symmetric::{equiv_symmetric, reduce_symmetric, reduce_zero_diagonal, SymmetricEquivalence};

/// The relation a certificate witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `M · input · M^T = canonical`.
    Congruence,
    /// `input = M · canonical · M^T + A`, A symmetric.
    Sociological,
    /// `input = M · canonical · M^T + A`, A symmetric zero-diagonal.
    Albert,
}

/// Class of a symmetric form: size, rank and whether it is alternating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymClass {
    pub n: usize,
    pub r: usize,
    pub fully_isotropic: bool,
}

/// Which canonical matrix an Albert class reduces to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlbertKind {
    /// `Y(n, r)`: quadratic form vanishes on the radical, Arf invariant 0.
    Y,
    /// `Y(n, r)` with the first hyperbolic plane replaced by the
    /// anisotropic plane `δx² + xy + y²`: Arf invariant 1. Only occurs over
    /// finite fields.
    YArf,
    /// `Ỹ(n, r)`: quadratic form nonzero on the radical.
    YTilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AlbertClass {
    pub n: usize,
    pub r: usize,
    #[serde(rename = "form")]
    pub kind: AlbertKind,
}

/// One Jordan block `J_size(eigenvalue)`, upper triangular.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JordanBlock {
    pub eigenvalue: u16,
    pub size: usize,
}

/// Class descriptor attached to a canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassLabel {
    Symmetric(SymClass),
    SuperEven { even: SymClass, odd: SymClass },
    Sociological { n: usize, rank: usize },
    Albert(AlbertClass),
    /// Odd symmetric non-degenerate form on `(k|k)`.
    Periplectic { k: usize },
    /// Odd non-symmetric form on `(k|k)`, classified by Jordan blocks.
    OddJordan { k: usize, blocks: Vec<JordanBlock> },
}

impl ClassLabel {
    /// Superdimension whose even block structure the witness must respect.
    fn super_dims(&self) -> Option<(usize, usize)> {
        match *self {
            ClassLabel::SuperEven { even, odd } => Some((even.n, odd.n)),
            ClassLabel::Periplectic { k } | ClassLabel::OddJordan { k, .. } => Some((k, k)),
            _ => None,
        }
    }
}

/// Canonical form plus the matrices that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonResult {
    pub relation: Relation,
    pub label: ClassLabel,
    pub canonical: Matrix,
    pub witness_m: Matrix,
    pub witness_a: Option<Matrix>,
}

fn is_block_diagonal(m: &Matrix, n0: usize) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| (i < n0) == (j < n0) || m.get(i, j) == 0))
}

impl CanonResult {
    /// Re-checks the certificate against `input` by direct arithmetic.
    pub fn verify(&self, input: &Matrix) -> bool {
        let m = &self.witness_m;
        let shapes_ok = input.is_square()
            && m.is_square()
            && m.rows() == input.rows()
            && self.canonical.rows() == input.rows()
            && m.field() == input.field()
            && self.canonical.field() == input.field();
        if !shapes_ok || !m.is_invertible() {
            return false;
        }
        if let Some((n0, _)) = self.label.super_dims() {
            if !is_block_diagonal(m, n0) {
                return false;
            }
        }
        match self.relation {
            Relation::Congruence => self.witness_a.is_none() && input.congruent(m) == self.canonical,
            Relation::Sociological | Relation::Albert => {
                let Some(a) = &self.witness_a else { return false };
                if a.rows() != input.rows() || a.field() != input.field() || !a.is_symmetric() {
                    return false;
                }
                if self.relation == Relation::Albert && !a.is_zero_diagonal() {
                    return false;
                }
                &self.canonical.congruent(m) + a == *input
            }
        }
    }
}

/// Transposition matrix swapping coordinates `a` and `b`.
fn transposition(field: crate::Field, n: usize, a: usize, b: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(a, b);
    Matrix::permutation(field, &perm)
}

/// Matrix whose rows are the given vectors.
fn rows_matrix(field: crate::Field, n: usize, rows: &[Vec<u16>]) -> Matrix {
    let data = rows.concat();
    Matrix::from_flat(field, rows.len(), n, data).expect("rows have length n")
}
