//! Lie algebras of matrices preserving a bilinear form, in characteristic 2.
//!
//! An [`Algebra`] is a bracket-closed subspace of some [`LieSpace`]: either
//! `n x n` matrices with `[X, Y] = XY + YX` ([`MatrixSpace`]), or an abstract
//! space given by structure constants, which is what quotients produce.

mod named;
mod simple;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::mat::{axpy, Matrix, Subspace};

pub use named::{gens, gl, o_i, o_pi, o_s};
pub use simple::{Gf2Table, SimplicityReport, Strategy, EXHAUSTIVE_ENVELOPE};

/// An ambient vector space with a bilinear alternating bracket.
pub trait LieSpace: Clone + fmt::Debug + PartialEq {
    fn field(&self) -> Field;

    /// Length of coordinate vectors.
    fn vector_len(&self) -> usize;

    fn bracket(&self, x: &[u16], y: &[u16]) -> Vec<u16>;

    /// Commuting elements of `g` expected to act diagonalizably, used by the
    /// weight-space simplicity test.
    fn torus(&self, g: &Subspace) -> Vec<Vec<u16>>;
}

/// `gl(n)` with elements flattened row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixSpace {
    pub n: usize,
    pub field: Field,
}

impl MatrixSpace {
    pub fn new(n: usize, field: Field) -> MatrixSpace {
        MatrixSpace { n, field }
    }

    pub fn to_matrix(&self, v: &[u16]) -> Matrix {
        Matrix::from_fn(self.field, self.n, self.n, |i, j| v[i * self.n + j])
    }
}

impl LieSpace for MatrixSpace {
    fn field(&self) -> Field {
        self.field
    }

    fn vector_len(&self) -> usize {
        self.n * self.n
    }

    fn bracket(&self, x: &[u16], y: &[u16]) -> Vec<u16> {
        let n = self.n;
        let f = self.field;
        let mut out = vec![0; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = x[i * n + k];
                if a != 0 {
                    axpy(f, row, a, &y[k * n..(k + 1) * n]);
                }
                let b = y[i * n + k];
                if b != 0 {
                    axpy(f, row, b, &x[k * n..(k + 1) * n]);
                }
            }
        }
        out
    }

    /// Diagonal matrices of `g`.
    fn torus(&self, g: &Subspace) -> Vec<Vec<u16>> {
        let n = self.n;
        let diag = Subspace::span(
            self.field,
            n * n,
            (0..n).map(|i| {
                let mut v = vec![0; n * n];
                v[i * n + i] = 1;
                v
            }),
        );
        g.intersection(&diag).basis().to_vec()
    }
}

/// A Lie algebra on `K^dim` given by `[e_i, e_j] = table[i * dim + j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    field: Field,
    dim: usize,
    table: Vec<Vec<u16>>,
    torus: Vec<Vec<u16>>,
}

impl StructureConstants {
    /// Checks that the table is alternating; the Jacobi identity is the
    /// caller's responsibility.
    pub fn new(field: Field, dim: usize, table: Vec<Vec<u16>>) -> Result<StructureConstants> {
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) {
            return Err(Error::dim(format!("structure table does not fit dimension {dim}")));
        }
        for i in 0..dim {
            if table[i * dim + i].iter().any(|&c| c != 0) || (0..i).any(|j| table[i * dim + j] != table[j * dim + i]) {
                return Err(Error::pre("structure constants are not alternating"));
            }
        }
        Ok(StructureConstants { field, dim, table, torus: Vec::new() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_torus(mut self, torus: Vec<Vec<u16>>) -> StructureConstants {
        self.torus = torus;
        self
    }
}

impl LieSpace for StructureConstants {
    fn field(&self) -> Field {
        self.field
    }

    fn vector_len(&self) -> usize {
        self.dim
    }

    fn bracket(&self, x: &[u16], y: &[u16]) -> Vec<u16> {
        let f = self.field;
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                axpy(f, &mut out, f.mul(a, b), &self.table[i * d + j]);
            }
        }
        out
    }

    fn torus(&self, g: &Subspace) -> Vec<Vec<u16>> {
        self.torus.iter().filter(|t| g.contains(t)).cloned().collect()
    }
}

/// A bracket-closed subspace of a [`LieSpace`], with an echelonized basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra<S: LieSpace> {
    space: S,
    basis: Subspace,
}

/// Matrix Lie algebra.
pub type AlgebraBasis = Algebra<MatrixSpace>;

/// Algebra given by structure constants, e.g. a quotient.
pub type QuotientAlgebra = Algebra<StructureConstants>;

/// `g^(1), ..., g^(depth)`.
#[derive(Clone, Debug)]
pub struct DerivedSeries<S: LieSpace> {
    pub terms: Vec<Algebra<S>>,
    /// Smallest `i >= 1` with `g^(i) = g^(i-1)`, if reached within the depth.
    pub stabilized_at: Option<usize>,
}

impl<S: LieSpace> DerivedSeries<S> {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Algebra::dim).collect()
    }
}

/// `(dim g, dim g^(1), dim g^(2), dim g^(3), dim Z, dim Z ∩ g^(1), dim Z(g^(1)))`.
///
/// Equal fingerprints are necessary for isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Fingerprint(pub [usize; 7]);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<S: LieSpace> Algebra<S> {
    /// Span of `vectors`, rejected unless closed under the bracket.
    pub fn new<I: IntoIterator<Item = Vec<u16>>>(space: S, vectors: I) -> Result<Algebra<S>> {
        let basis = Subspace::span(space.field(), space.vector_len(), vectors);
        let g = Algebra { space, basis };
        for (i, x) in g.basis().iter().enumerate() {
            for y in &g.basis()[i + 1..] {
                if !g.basis.contains(&g.space.bracket(x, y)) {
                    return Err(Error::NotClosed("bracket leaves the span".into()));
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_closed(space: S, basis: Subspace) -> Algebra<S> {
        Algebra { space, basis }
    }

    pub fn zero(space: S) -> Algebra<S> {
        let basis = Subspace::zero(space.field(), space.vector_len());
        Algebra { space, basis }
    }

    /// The whole ambient space (which must be a Lie algebra, as both
    /// implementations are).
    pub fn full(space: S) -> Algebra<S> {
        let basis = Subspace::full(space.field(), space.vector_len());
        Algebra { space, basis }
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &[Vec<u16>] {
        self.basis.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.basis
    }

    pub fn contains(&self, v: &[u16]) -> bool {
        v.len() == self.space.vector_len() && self.basis.contains(v)
    }

    pub fn bracket(&self, x: &[u16], y: &[u16]) -> Vec<u16> {
        self.space.bracket(x, y)
    }

    pub fn is_abelian(&self) -> bool {
        let b = self.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.space.bracket(&b[i], &b[j]).iter().all(|&c| c == 0)))
    }

    pub fn is_subalgebra_of(&self, other: &Algebra<S>) -> bool {
        self.space == other.space && self.basis.is_subspace_of(&other.basis)
    }

    /// `[a, b]` for two subspaces of the ambient space.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.field(), self.space.vector_len());
        for x in a.basis() {
            for y in b.basis() {
                s.insert(self.space.bracket(x, y));
            }
        }
        s
    }

    /// `[g, g]`.
    pub fn derived(&self) -> Algebra<S> {
        let b = self.basis();
        let mut s = Subspace::zero(self.field(), self.space.vector_len());
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                s.insert(self.space.bracket(&b[i], &b[j]));
            }
        }
        Algebra { space: self.space.clone(), basis: s }
    }

    pub fn derived_series(&self, depth: usize) -> DerivedSeries<S> {
        let mut terms: Vec<Algebra<S>> = Vec::with_capacity(depth);
        let mut stabilized_at = None;
        let mut prev = self.clone();
        for i in 1..=depth {
            let next = if stabilized_at.is_some() { prev.clone() } else { prev.derived() };
            if stabilized_at.is_none() && next.basis == prev.basis {
                stabilized_at = Some(i);
            }
            terms.push(next.clone());
            prev = next;
        }
        DerivedSeries { terms, stabilized_at }
    }

    /// `{x ∈ g : [x, b] = 0 for every basis vector b}`.
    pub fn center(&self) -> Algebra<S> {
        let f = self.field();
        let b = self.basis();
        let d = b.len();
        let len = self.space.vector_len();
        let mut m = Matrix::zeros(f, d * len, d);
        for (j, bj) in b.iter().enumerate() {
            for (i, bi) in b.iter().enumerate() {
                let c = self.space.bracket(bi, bj);
                for (t, &x) in c.iter().enumerate() {
                    m.set(j * len + t, i, x);
                }
            }
        }
        let kernel = m.kernel();
        let basis = Subspace::span(f, len, kernel.basis().iter().map(|c| self.basis.combine(c)));
        Algebra { space: self.space.clone(), basis }
    }

    /// Smallest ideal of `g` containing `seed`.
    pub fn ideal_closure(&self, seed: &[u16]) -> Result<Algebra<S>> {
        if !self.contains(seed) {
            return Err(Error::SeedOutsideAlgebra);
        }
        let mut span = Subspace::zero(self.field(), self.space.vector_len());
        let mut queue = Vec::new();
        if span.insert(seed.to_vec()) {
            queue.push(seed.to_vec());
        }
        while let Some(w) = queue.pop() {
            for b in self.basis() {
                let x = self.space.bracket(b, &w);
                if span.insert(x.clone()) {
                    queue.push(x);
                }
            }
        }
        Ok(Algebra { space: self.space.clone(), basis: span })
    }

    /// Whether `sub` is an ideal of `g`.
    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        sub.is_subspace_of(&self.basis)
            && sub.basis().iter().all(|x| self.basis().iter().all(|b| sub.contains(&self.space.bracket(b, x))))
    }

    pub fn intersection(&self, other: &Algebra<S>) -> Algebra<S> {
        Algebra { space: self.space.clone(), basis: self.basis.intersection(&other.basis) }
    }

    /// Structure constants of `g` in its echelon basis.
    pub fn structure_constants(&self) -> StructureConstants {
        let b = self.basis();
        let d = b.len();
        let mut table = Vec::with_capacity(d * d);
        for x in b {
            for y in b {
                let c = self.basis.coords(&self.space.bracket(x, y)).expect("closed under bracket");
                table.push(c);
            }
        }
        let torus = self.torus().iter().map(|t| self.basis.coords(t).expect("torus lies in g")).collect();
        StructureConstants { field: self.field(), dim: d, table, torus }
    }

    pub fn torus(&self) -> Vec<Vec<u16>> {
        self.space.torus(&self.basis)
    }

    /// `g / I` on the complement spanned by the non-pivot coordinates of
    /// `I` in the basis of `g`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<QuotientAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::pre("quotient by a subspace that is not an ideal"));
        }
        let f = self.field();
        let d = self.dim();
        let ic = Subspace::span(f, d, ideal.basis().iter().map(|v| self.basis.coords(v).expect("inside g")));
        let keep: Vec<usize> = (0..d).filter(|i| !ic.pivots().contains(i)).collect();
        let project = |v: &[u16]| {
            let mut c = self.basis.coords(v).expect("inside g");
            ic.reduce(&mut c);
            keep.iter().map(|&i| c[i]).collect::<Vec<u16>>()
        };
        let b = self.basis();
        let mut table = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                table.push(project(&self.space.bracket(&b[i], &b[j])));
            }
        }
        let torus: Vec<Vec<u16>> =
            self.torus().iter().map(|t| project(t)).filter(|v| v.iter().any(|&c| c != 0)).collect();
        let space = StructureConstants::new(f, keep.len(), table)?.with_torus(torus);
        Algebra::new(space.clone(), Subspace::full(f, keep.len()).basis().to_vec())
    }

    pub fn quotient_by_center(&self) -> QuotientAlgebra {
        let z = self.center();
        self.quotient(z.subspace()).expect("the center is an ideal")
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let series = self.derived_series(3);
        let z = self.center();
        let g1 = &series.terms[0];
        Fingerprint([
            self.dim(),
            g1.dim(),
            series.terms[1].dim(),
            series.terms[2].dim(),
            z.dim(),
            z.intersection(g1).dim(),
            g1.center().dim(),
        ])
    }
}

/// JSON record of a matrix algebra.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraRecord {
    pub n: usize,
    pub field: String,
    pub dim: usize,
    pub basis: Vec<Matrix>,
}

impl Algebra<MatrixSpace> {
    pub fn from_matrices(n: usize, field: Field, matrices: &[Matrix]) -> Result<AlgebraBasis> {
        for m in matrices {
            if m.rows() != n || m.cols() != n {
                return Err(Error::dim(format!("expected {n}x{n} matrices")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(field.degree(), m.field().degree()));
            }
        }
        Algebra::new(MatrixSpace::new(n, field), matrices.iter().map(|m| m.as_slice().to_vec()))
    }

    pub fn n(&self) -> usize {
        self.space.n
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.basis().iter().map(|v| self.space.to_matrix(v)).collect()
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        m.rows() == self.n() && m.cols() == self.n() && m.field() == self.field() && self.contains(m.as_slice())
    }

    /// `g ∩ {diagonal matrices}`.
    pub fn diagonal_subalgebra(&self) -> AlgebraBasis {
        let t = self.torus();
        Algebra { space: self.space, basis: Subspace::span(self.field(), self.n() * self.n(), t) }
    }

    /// The subalgebra cut out of `g` by linear conditions on the entries.
    pub fn restrict(&self, conditions: &[Vec<u16>]) -> AlgebraBasis {
        Algebra { space: self.space, basis: self.basis.restrict(conditions) }
    }

    pub fn record(&self) -> AlgebraRecord {
        AlgebraRecord { n: self.n(), field: self.field().to_string(), dim: self.dim(), basis: self.matrices() }
    }
}

/// `XY + YX`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    xy.try_add(&yx)
}

/// `{X : X^T B + B X = 0}`, the Lie algebra preserving `B`.
pub fn preserver(b: &Matrix) -> Result<AlgebraBasis> {
    if !b.is_square() {
        return Err(Error::dim(format!("{}x{} form is not square", b.rows(), b.cols())));
    }
    let f = b.field();
    let n = b.rows();
    // Column k*n+l holds the image of E_kl: E_lk B + B E_kl.
    let mut m = Matrix::zeros(f, n * n, n * n);
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            for j in 0..n {
                let at = l * n + j;
                m.set(at, col, m.get(at, col) ^ b.get(k, j));
            }
            for i in 0..n {
                let at = i * n + l;
                m.set(at, col, m.get(at, col) ^ b.get(i, k));
            }
        }
    }
    let kernel = m.kernel();
    let g = Algebra { space: MatrixSpace::new(n, f), basis: kernel };
    for x in g.matrices() {
        if !(&(&x.transpose() * b) + &(b * &x)).is_zero() {
            return Err(Error::Certificate("preserver basis element fails X^T B + B X = 0".into()));
        }
    }
    Ok(g)
}

/// Preserver of the class of `B` modulo symmetric forms: `preserver(B + B^T)`.
pub fn sociological_preserver(b: &Matrix) -> Result<AlgebraBasis> {
    if !b.is_square() {
        return Err(Error::dim(format!("{}x{} form is not square", b.rows(), b.cols())));
    }
    preserver(&(b + &b.transpose()))
}
