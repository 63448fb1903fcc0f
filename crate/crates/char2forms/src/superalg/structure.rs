//! Explicit descriptions of the named preservers and their derived terms,
//! checked as span equalities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::liealg::{o_pi, AlgebraBasis};
use crate::mat::{Matrix, Subspace};

use super::{named_superalgebra, pi_pi_reorder, Parity, SuperAlgebra, SuperKind, SuperMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub name: String,
    pub holds: bool,
}

/// `Σ_{i<n0/2} X_ii + Σ_{i<n1/2} X_{n0+i,n0+i}` for an even `X` in the
/// preserver of `diag(Π, Π)`.
pub fn half_supertrace(x: &SuperMatrix) -> Result<u16> {
    let (n0, n1) = x.sdim();
    if x.parity() != Parity::Even {
        return Err(Error::pre("half-supertrace is taken of even supermatrices"));
    }
    if n0 % 2 == 1 || n1 % 2 == 1 {
        return Err(Error::param(format!("both dimensions must be even, got ({n0}|{n1})")));
    }
    let m = x.matrix();
    let a = (0..n0 / 2).fold(0, |acc, i| acc ^ m.get(i, i));
    Ok((0..n1 / 2).fold(a, |acc, i| acc ^ m.get(n0 + i, n0 + i)))
}

struct Functionals {
    n: usize,
}

impl Functionals {
    fn entry(&self, i: usize, j: usize) -> Vec<u16> {
        let mut v = vec![0; self.n * self.n];
        v[i * self.n + j] = 1;
        v
    }

    fn sum(&self, entries: impl IntoIterator<Item = (usize, usize)>) -> Vec<u16> {
        let mut v = vec![0; self.n * self.n];
        for (i, j) in entries {
            v[i * self.n + j] ^= 1;
        }
        v
    }

    /// Diagonal entries of `Π X` on the diagonal block at `offset` of even
    /// size `m`.
    fn pi_diagonal(&self, offset: usize, m: usize) -> Vec<Vec<u16>> {
        let k = m / 2;
        (0..m).map(|i| self.entry(offset + (i + k) % m, offset + i)).collect()
    }

    fn diagonal(&self, range: std::ops::Range<usize>) -> Vec<Vec<u16>> {
        range.map(|i| self.entry(i, i)).collect()
    }
}

fn restricted(g: &SuperAlgebra, conditions: &[Vec<u16>]) -> SuperAlgebra {
    SuperAlgebra {
        even: g.even.restrict(conditions),
        odd: g.odd.restrict(conditions),
        ..g.clone()
    }
}

fn scalars(g: &SuperAlgebra) -> SuperAlgebra {
    let n = g.n0 + g.n1;
    let len = n * n;
    let even = Subspace::span(g.field, len, [Matrix::identity(g.field, n).into_vec()]);
    SuperAlgebra { even, odd: Subspace::zero(g.field, len), ..g.clone() }
}

fn zero(g: &SuperAlgebra) -> SuperAlgebra {
    let len = g.even.ambient_len();
    SuperAlgebra { even: Subspace::zero(g.field, len), odd: Subspace::zero(g.field, len), ..g.clone() }
}

/// Symmetric matrices of trace 0, split by parity.
fn symmetric_traceless(g: &SuperAlgebra) -> SuperAlgebra {
    let n = g.n0 + g.n1;
    let fun = Functionals { n };
    let mut vectors: Vec<Vec<u16>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            vectors.push(fun.sum([(i, j), (j, i)]));
            vectors.push(fun.sum([(i, i), (j, j)]));
        }
    }
    let mut s = zero(g);
    for v in vectors {
        let (e, o) = g.split(&v);
        s.even.insert(e);
        s.odd.insert(o);
    }
    s
}

fn check(out: &mut Vec<StructureCheck>, name: impl Into<String>, holds: bool) {
    out.push(StructureCheck { name: name.into(), holds });
}

/// Dimension of the preserver of `1_m` or `Π_m`.
fn block_preserver_dim(one: bool, m: usize) -> usize {
    if one {
        // Symmetric matrices.
        m * (m + 1) / 2
    } else {
        // [[A, B], [C, A^T]] with B, C symmetric.
        let k = m / 2;
        k * k + k * (k + 1)
    }
}

/// Checks the descriptions of `g`, `g^(1)`, `g^(2)`, ... for the named
/// preserver of the given kind, within the ranges where they are stated.
pub fn structure_checks(kind: SuperKind, n0: usize, n1: usize, field: Field) -> Result<Vec<StructureCheck>> {
    let g = named_superalgebra(kind, n0, n1, field)?;
    let n = n0 + n1;
    let fun = Functionals { n };
    let series = g.derived_series(4);
    let d = |i: usize| &series.terms[i - 1];
    let mut out = Vec::new();

    // Odd squares never contribute to the trace.
    let traceless = g.odd.basis().iter().all(|x| (0..n).fold(0, |acc, i| acc ^ g.square(x)[i * n + i]) == 0);
    check(&mut out, "odd squares are traceless", traceless);

    match kind {
        SuperKind::OoII | SuperKind::OoIPi | SuperKind::OoPiI | SuperKind::OoPiPi => {
            let (e, o) = match kind {
                SuperKind::OoII => (true, true),
                SuperKind::OoIPi => (true, false),
                SuperKind::OoPiI => (false, true),
                _ => (false, false),
            };
            check(&mut out, "odd part has dimension n0*n1", g.dim().1 == n0 * n1);
            check(
                &mut out,
                "even part is the sum of the block preservers",
                g.dim().0 == block_preserver_dim(e, n0) + block_preserver_dim(o, n1),
            );
        }
        SuperKind::Pe => {
            let k = n0;
            check(&mut out, "even part is gl(k)", g.dim().0 == k * k);
            check(&mut out, "odd part is two symmetric blocks", g.dim().1 == k * (k + 1));
            let shape = g.even_matrices().iter().chain(&g.odd_matrices()).all(|x| {
                x.submatrix(k, k, k, k) == x.submatrix(0, 0, k, k).transpose()
                    && x.submatrix(0, k, k, k).is_symmetric()
                    && x.submatrix(k, 0, k, k).is_symmetric()
            });
            check(&mut out, "elements have shape [[A, C], [D, A^T]], C and D symmetric", shape);
        }
    }

    match kind {
        SuperKind::OoII => {
            if n == 2 {
                let s = SuperAlgebra::new(n0, n1, field, [Matrix::identity(field, 2).into_vec()], [fun.sum([(0, 1), (1, 0)])])?;
                check(&mut out, "g^(1) = {[[a, b], [b, a]]}", d(1) == &s);
                check(&mut out, "g^(2) = scalars", d(2) == &scalars(&g));
                check(&mut out, "g^(3) = 0", d(3) == &zero(&g));
            } else {
                check(&mut out, "g^(1) = symmetric of trace 0", d(1) == &symmetric_traceless(&g));
                check(&mut out, "g^(2) = g^(1)", d(2) == d(1));
            }
        }
        SuperKind::OoIPi | SuperKind::OoPiI => {
            let ones = if kind == SuperKind::OoIPi { 0..n0 } else { n0..n };
            let expected = restricted(&g, &fun.diagonal(ones));
            check(&mut out, "g^(1) = g with zero-diagonal 1-block", d(1) == &expected);
            check(&mut out, "g^(2) = g^(1)", d(2) == d(1));
        }
        SuperKind::OoPiPi => {
            let mut zd = fun.pi_diagonal(0, n0);
            zd.extend(fun.pi_diagonal(n0, n1));
            let first = restricted(&g, &zd);
            check(&mut out, "g^(1) = g with Π-twisted blocks zero-diagonal", d(1) == &first);
            if n == 4 {
                let second = SuperAlgebra { odd: g.odd.clone(), ..scalars(&g) };
                check(&mut out, "g^(2) = scalars plus the odd part", d(2) == &second);
                check(&mut out, "g^(3) = scalars", d(3) == &scalars(&g));
                check(&mut out, "g^(4) = 0", d(4) == &zero(&g));
            } else {
                let hst = fun.sum((0..n0 / 2).map(|i| (i, i)).chain((0..n1 / 2).map(|i| (n0 + i, n0 + i))));
                let second = restricted(&first, &[hst]);
                check(&mut out, "g^(2) = g^(1) with vanishing half-supertrace", d(2) == &second);
                check(&mut out, "g^(3) = g^(2)", d(3) == d(2));
            }
            let m = pi_pi_reorder(n0, n1, field)?;
            let minv = m.inverse().expect("permutation");
            let conj: Vec<Matrix> = d(2).forgetful().matrices().iter().map(|x| &(&m * x) * &minv).collect();
            let image = AlgebraBasis::from_matrices(n, field, &conj)?;
            let target = o_pi(n, field)?.derived_series(2).terms[1].clone();
            check(&mut out, "M ι(g^(2)) M^-1 = o_Π^(2)(n0+n1)", image == target);
        }
        SuperKind::Pe => {
            let k = n0;
            if k == 1 {
                check(&mut out, "g^(1) = scalars", d(1) == &scalars(&g));
                check(&mut out, "g^(2) = 0", d(2) == &zero(&g));
            } else {
                let zd: Vec<Vec<u16>> = (0..k).flat_map(|i| [fun.entry(i, k + i), fun.entry(k + i, i)]).collect();
                let first = restricted(&g, &zd);
                check(&mut out, "g^(1) = g with C and D zero-diagonal", d(1) == &first);
                let second = restricted(&first, &[fun.sum((0..k).map(|i| (i, i)))]);
                check(&mut out, "g^(2) = g^(1) with tr A = 0", d(2) == &second);
                if k == 2 {
                    check(&mut out, "g^(3) = scalars", d(3) == &scalars(&g));
                    check(&mut out, "g^(4) = 0", d(4) == &zero(&g));
                } else {
                    check(&mut out, "g^(3) = g^(2)", d(3) == d(2));
                }
            }
        }
    }
    Ok(out)
}

/// Evaluates the displayed conditions for the preserver of a non-symmetric
/// form on `Y = X^T`; the displays use `Y B + B Y^T = 0`, whose solutions
/// are the transposes of those of `X^T B + B X = 0`.
///
/// Odd forms must be `[[0, 1_k], [J, 0]]`.
pub fn nonsymmetric_conditions(b: &SuperMatrix, x: &Matrix) -> Result<bool> {
    let (n0, n1) = b.sdim();
    let n = n0 + n1;
    if x.rows() != n || x.cols() != n {
        return Err(Error::dim("element does not fit the form"));
    }
    let y = x.transpose();
    let bm = b.matrix();
    let zero = |m: &Matrix| m.is_zero();
    match b.parity() {
        Parity::Even => {
            let (b0, b1) = (bm.submatrix(0, 0, n0, n0), bm.submatrix(n0, n0, n1, n1));
            let (a0, c) = (y.submatrix(0, 0, n0, n0), y.submatrix(0, n0, n0, n1));
            let (dd, a1) = (y.submatrix(n0, 0, n1, n0), y.submatrix(n0, n0, n1, n1));
            Ok(zero(&(&(&a0 * &b0) + &(&b0 * &a0.transpose())))
                && zero(&(&(&a1 * &b1) + &(&b1 * &a1.transpose())))
                && zero(&(&(&c * &b1) + &(&b0 * &dd.transpose())))
                && zero(&(&(&dd * &b0) + &(&b1 * &c.transpose()))))
        }
        Parity::Odd => {
            let k = n0;
            if bm.submatrix(0, k, k, k) != Matrix::identity(bm.field(), k) {
                return Err(Error::pre("odd form must be [[0, 1], [J, 0]]"));
            }
            let j = bm.submatrix(k, 0, k, k);
            let (a, c) = (y.submatrix(0, 0, k, k), y.submatrix(0, k, k, k));
            let (dd, e) = (y.submatrix(k, 0, k, k), y.submatrix(k, k, k, k));
            Ok(e == a.transpose()
                && zero(&(&(&a * &j.transpose()) + &(&j.transpose() * &a)))
                && zero(&(&(&c * &j) + &c.transpose()))
                && zero(&(&dd + &(&j * &dd.transpose()))))
        }
    }
}
