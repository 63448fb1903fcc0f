//! Lie superalgebras of supermatrices in characteristic 2.
//!
//! Supermatrices are kept in the standard format, even coordinates first.
//! Signs disappear in characteristic 2, so the bracket of two supermatrices
//! is `XY + YX` whatever their parities, and the squaring of an odd element
//! is the matrix square.

mod structure;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::liealg::{preserver, Algebra, AlgebraBasis, Gf2Table, LieSpace, MatrixSpace, SimplicityReport, Strategy};
use crate::mat::{standard_form, Matrix, StandardForm, Subspace};

pub use structure::{half_supertrace, nonsymmetric_conditions, structure_checks, StructureCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// A homogeneous supermatrix in the standard format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperMatrix {
    sdim: [usize; 2],
    parity: Parity,
    matrix: Matrix,
}

fn position_is_odd(n0: usize, i: usize, j: usize) -> bool {
    (i < n0) != (j < n0)
}

impl SuperMatrix {
    /// Checks that the blocks of the other parity vanish.
    pub fn new(matrix: Matrix, n0: usize, n1: usize, parity: Parity) -> Result<SuperMatrix> {
        if !matrix.is_square() || matrix.rows() != n0 + n1 {
            return Err(Error::dim(format!(
                "{}x{} matrix does not fit superdimension ({n0}|{n1})",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = n0 + n1;
        let stray = (0..n).any(|i| {
            (0..n).any(|j| matrix.get(i, j) != 0 && position_is_odd(n0, i, j) != (parity == Parity::Odd))
        });
        if stray {
            return Err(Error::pre(format!("matrix is not {parity:?} in the standard format").to_lowercase()));
        }
        Ok(SuperMatrix { sdim: [n0, n1], parity, matrix })
    }

    /// Infers the parity; the zero matrix counts as even.
    pub fn homogeneous(matrix: Matrix, n0: usize, n1: usize) -> Result<SuperMatrix> {
        SuperMatrix::new(matrix.clone(), n0, n1, Parity::Even).or_else(|_| SuperMatrix::new(matrix, n0, n1, Parity::Odd))
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.sdim[0], self.sdim[1])
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `X^2` for odd `X`.
    pub fn square(&self) -> Result<SuperMatrix> {
        if self.parity != Parity::Odd {
            return Err(Error::pre("squaring is defined on odd elements"));
        }
        let sq = &self.matrix * &self.matrix;
        SuperMatrix::new(sq, self.sdim[0], self.sdim[1], Parity::Even)
    }

    /// `[X, Y] = XY + YX`.
    pub fn bracket(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        if self.sdim != other.sdim {
            return Err(Error::dim("supermatrices of different formats"));
        }
        let parity = if self.parity == other.parity { Parity::Even } else { Parity::Odd };
        let m = crate::liealg::bracket(&self.matrix, &other.matrix)?;
        SuperMatrix::new(m, self.sdim[0], self.sdim[1], parity)
    }
}

/// The forms whose preservers the structure lemmas describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SuperKind {
    /// `diag(1, 1)`.
    OoII,
    /// `diag(1, Π)`, odd dimension even.
    OoIPi,
    /// `diag(Π, 1)`, even dimension even.
    OoPiI,
    /// `diag(Π, Π)`, both dimensions even.
    OoPiPi,
    /// The odd form `Π_{2k}` on `(k|k)`.
    Pe,
}

impl SuperKind {
    pub const ALL: [SuperKind; 5] = [SuperKind::OoII, SuperKind::OoIPi, SuperKind::OoPiI, SuperKind::OoPiPi, SuperKind::Pe];

    pub fn name(self) -> &'static str {
        match self {
            SuperKind::OoII => "ooII",
            SuperKind::OoIPi => "ooIPi",
            SuperKind::OoPiI => "ooPiI",
            SuperKind::OoPiPi => "ooPiPi",
            SuperKind::Pe => "pe",
        }
    }
}

fn block(one: bool, n: usize, field: Field) -> Result<Matrix> {
    if one {
        Ok(Matrix::identity(field, n))
    } else if n % 2 == 1 {
        Err(Error::param(format!("Π block needs even size, got {n}")))
    } else {
        standard_form(StandardForm::Pi, n, field)
    }
}

/// The form of the given kind on `(n0|n1)`.
pub fn super_form(kind: SuperKind, n0: usize, n1: usize, field: Field) -> Result<SuperMatrix> {
    let (e, o) = match kind {
        SuperKind::OoII => (true, true),
        SuperKind::OoIPi => (true, false),
        SuperKind::OoPiI => (false, true),
        SuperKind::OoPiPi => (false, false),
        SuperKind::Pe => {
            if n0 != n1 {
                return Err(Error::param(format!("pe needs (k|k), got ({n0}|{n1})")));
            }
            let m = standard_form(StandardForm::Pi, 2 * n0, field)?;
            return SuperMatrix::new(m, n0, n1, Parity::Odd);
        }
    };
    let m = Matrix::block_diag(field, &[&block(e, n0, field)?, &block(o, n1, field)?]);
    SuperMatrix::new(m, n0, n1, Parity::Even)
}

/// Lie superalgebra of `(n0|n1)` supermatrices with homogeneous echelon
/// bases of the even and odd parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    n0: usize,
    n1: usize,
    field: Field,
    even: Subspace,
    odd: Subspace,
}

pub type SuperAlgebraBasis = SuperAlgebra;

/// `g^(1), ..., g^(depth)`.
#[derive(Clone, Debug)]
pub struct SuperDerivedSeries {
    pub terms: Vec<SuperAlgebra>,
    pub stabilized_at: Option<usize>,
}

impl SuperDerivedSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(SuperAlgebra::total_dim).collect()
    }
}

/// Outcome of the squaring axiom checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquaringReport {
    /// `(ax)^2 = a^2 x^2`.
    pub scaling: bool,
    /// `(x+y)^2 - x^2 - y^2 = [x, y]`, bilinear in both arguments.
    pub polarization: bool,
    /// `[x, x^2] = 0`.
    pub commutes_with_square: bool,
    /// `[x^2, y] = [x, [x, y]]`.
    pub adjoint_square: bool,
}

impl SquaringReport {
    pub fn holds(&self) -> bool {
        self.scaling && self.polarization && self.commutes_with_square && self.adjoint_square
    }
}

/// JSON record of a superalgebra.
#[derive(Clone, Debug, Serialize)]
pub struct SuperAlgebraRecord {
    pub sdim: [usize; 2],
    pub field: String,
    pub dim: [usize; 2],
    pub even: Vec<Matrix>,
    pub odd: Vec<Matrix>,
}

impl SuperAlgebra {
    /// Checks parities and closure under brackets and odd squares.
    pub fn new(
        n0: usize,
        n1: usize,
        field: Field,
        even: impl IntoIterator<Item = Vec<u16>>,
        odd: impl IntoIterator<Item = Vec<u16>>,
    ) -> Result<SuperAlgebra> {
        let len = (n0 + n1) * (n0 + n1);
        let even = Subspace::span(field, len, even);
        let odd = Subspace::span(field, len, odd);
        let g = SuperAlgebra { n0, n1, field, even, odd };
        for (part, parity) in [(&g.even, Parity::Even), (&g.odd, Parity::Odd)] {
            if part.basis().iter().any(|v| !g.has_parity(v, parity)) {
                return Err(Error::pre("basis vector of the wrong parity"));
            }
        }
        let all: Vec<&Vec<u16>> = g.even.basis().iter().chain(g.odd.basis()).collect();
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                if !g.contains(&g.bracket(x, y)) {
                    return Err(Error::NotClosed("bracket leaves the span".into()));
                }
            }
        }
        if g.odd.basis().iter().any(|x| !g.even.contains(&g.square(x))) {
            return Err(Error::NotClosed("odd square leaves the even part".into()));
        }
        Ok(g)
    }

    fn space(&self) -> MatrixSpace {
        MatrixSpace::new(self.n0 + self.n1, self.field)
    }

    fn has_parity(&self, v: &[u16], parity: Parity) -> bool {
        let n = self.n0 + self.n1;
        v.iter()
            .enumerate()
            .all(|(t, &x)| x == 0 || position_is_odd(self.n0, t / n, t % n) == (parity == Parity::Odd))
    }

    /// Splits a vector into its even and odd components.
    pub fn split(&self, v: &[u16]) -> (Vec<u16>, Vec<u16>) {
        let n = self.n0 + self.n1;
        let mut e = v.to_vec();
        let mut o = v.to_vec();
        for t in 0..v.len() {
            if position_is_odd(self.n0, t / n, t % n) {
                e[t] = 0;
            } else {
                o[t] = 0;
            }
        }
        (e, o)
    }

    pub fn sdim(&self) -> (usize, usize) {
        (self.n0, self.n1)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `(dim g_0, dim g_1)`.
    pub fn dim(&self) -> (usize, usize) {
        (self.even.dim(), self.odd.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.even.dim() + self.odd.dim()
    }

    pub fn even(&self) -> &Subspace {
        &self.even
    }

    pub fn odd(&self) -> &Subspace {
        &self.odd
    }

    fn to_matrix(&self, v: &[u16]) -> Matrix {
        self.space().to_matrix(v)
    }

    pub fn even_matrices(&self) -> Vec<Matrix> {
        self.even.basis().iter().map(|v| self.to_matrix(v)).collect()
    }

    pub fn odd_matrices(&self) -> Vec<Matrix> {
        self.odd.basis().iter().map(|v| self.to_matrix(v)).collect()
    }

    pub fn contains(&self, v: &[u16]) -> bool {
        let (e, o) = self.split(v);
        self.even.contains(&e) && self.odd.contains(&o)
    }

    pub fn contains_matrix(&self, m: &Matrix) -> bool {
        let n = self.n0 + self.n1;
        m.rows() == n && m.cols() == n && m.field() == self.field && self.contains(m.as_slice())
    }

    pub fn bracket(&self, x: &[u16], y: &[u16]) -> Vec<u16> {
        self.space().bracket(x, y)
    }

    /// Matrix square, the squaring on odd vectors.
    pub fn square(&self, x: &[u16]) -> Vec<u16> {
        let m = self.to_matrix(x);
        (&m * &m).into_vec()
    }

    /// Brackets of homogeneous basis pairs plus squares of odd basis vectors.
    pub fn derived(&self) -> SuperAlgebra {
        let len = self.even.ambient_len();
        let mut even = Subspace::zero(self.field, len);
        let mut odd = Subspace::zero(self.field, len);
        let all: Vec<&Vec<u16>> = self.even.basis().iter().chain(self.odd.basis()).collect();
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                let (e, o) = self.split(&self.bracket(x, y));
                even.insert(e);
                odd.insert(o);
            }
        }
        for x in self.odd.basis() {
            even.insert(self.square(x));
        }
        SuperAlgebra { n0: self.n0, n1: self.n1, field: self.field, even, odd }
    }

    pub fn derived_series(&self, depth: usize) -> SuperDerivedSeries {
        let mut terms = Vec::with_capacity(depth);
        let mut stabilized_at = None;
        let mut prev = self.clone();
        for i in 1..=depth {
            let next = if stabilized_at.is_some() { prev.clone() } else { prev.derived() };
            if stabilized_at.is_none() && next == prev {
                stabilized_at = Some(i);
            }
            terms.push(next.clone());
            prev = next;
        }
        SuperDerivedSeries { terms, stabilized_at }
    }

    /// Homogeneous elements commuting with all of `g`.
    pub fn center(&self) -> SuperAlgebra {
        let everything: Vec<Vec<u16>> = self.even.basis().iter().chain(self.odd.basis()).cloned().collect();
        let part = |s: &Subspace| {
            let space = self.space();
            let len = space.vector_len();
            let d = s.dim();
            let mut m = Matrix::zeros(self.field, everything.len() * len, d);
            for (j, y) in everything.iter().enumerate() {
                for (i, x) in s.basis().iter().enumerate() {
                    for (t, &c) in space.bracket(x, y).iter().enumerate() {
                        m.set(j * len + t, i, c);
                    }
                }
            }
            Subspace::span(self.field, len, m.kernel().basis().iter().map(|c| s.combine(c)))
        };
        SuperAlgebra { n0: self.n0, n1: self.n1, field: self.field, even: part(&self.even), odd: part(&self.odd) }
    }

    /// Smallest graded ideal containing the homogeneous components of `seed`
    /// and closed under squaring of its odd elements.
    pub fn ideal_closure(&self, seed: &[u16]) -> Result<SuperAlgebra> {
        if seed.len() != self.even.ambient_len() || !self.contains(seed) {
            return Err(Error::SeedOutsideAlgebra);
        }
        let len = self.even.ambient_len();
        let mut even = Subspace::zero(self.field, len);
        let mut odd = Subspace::zero(self.field, len);
        let all: Vec<Vec<u16>> = self.even.basis().iter().chain(self.odd.basis()).cloned().collect();
        let mut queue: Vec<(Vec<u16>, Parity)> = Vec::new();
        let push = |v: Vec<u16>, even: &mut Subspace, odd: &mut Subspace, queue: &mut Vec<(Vec<u16>, Parity)>| {
            let (e, o) = self.split(&v);
            if even.insert(e.clone()) {
                queue.push((e, Parity::Even));
            }
            if odd.insert(o.clone()) {
                queue.push((o, Parity::Odd));
            }
        };
        push(seed.to_vec(), &mut even, &mut odd, &mut queue);
        while let Some((w, parity)) = queue.pop() {
            for b in &all {
                push(self.bracket(b, &w), &mut even, &mut odd, &mut queue);
            }
            if parity == Parity::Odd {
                push(self.square(&w), &mut even, &mut odd, &mut queue);
            }
        }
        Ok(SuperAlgebra { n0: self.n0, n1: self.n1, field: self.field, even, odd })
    }

    /// `ι(g)`: the same matrices as an ordinary Lie algebra.
    pub fn forgetful(&self) -> AlgebraBasis {
        let vectors = self.even.basis().iter().chain(self.odd.basis()).cloned();
        Algebra::new(self.space(), vectors).expect("brackets of a superalgebra stay inside it")
    }

    /// Coordinates in the basis (even basis, then odd basis).
    pub fn coords(&self, v: &[u16]) -> Option<Vec<u16>> {
        let (e, o) = self.split(v);
        let mut c = self.even.coords(&e)?;
        c.extend(self.odd.coords(&o)?);
        Some(c)
    }

    /// Bracket table over GF(2) in the basis (even, then odd).
    pub fn gf2_table(&self) -> Result<Gf2Table> {
        if self.field.degree() != 1 {
            return Err(Error::UnsupportedField(format!(
                "ideal enumeration runs over GF(2) only, not {}",
                self.field
            )));
        }
        let (d0, d1) = self.dim();
        if d0 + d1 > 64 {
            return Err(Error::EnvelopeExceeded(format!("dimension {} exceeds 64", d0 + d1)));
        }
        let bits = |v: &[u16]| {
            let c = self.coords(v).expect("closed");
            c.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (u64::from(x & 1) << i))
        };
        let all: Vec<&Vec<u16>> = self.even.basis().iter().chain(self.odd.basis()).collect();
        let ad = all.iter().map(|x| all.iter().map(|y| bits(&self.bracket(x, y))).collect()).collect();
        let squares = all
            .iter()
            .enumerate()
            .map(|(i, x)| if i < d0 { 0 } else { bits(&self.square(x)) })
            .collect();
        let odd = ((1u64 << d1) - 1) << d0;
        let torus = self.space().torus(&self.even).iter().map(|t| bits(t)).collect();
        Gf2Table::new(ad, odd, squares, torus)
    }

    /// The graded subspace with the given coordinate bitmasks.
    pub fn from_gf2_coords(&self, coords: &[u64]) -> SuperAlgebra {
        let (d0, d1) = self.dim();
        let len = self.even.ambient_len();
        let mut even = Subspace::zero(self.field, len);
        let mut odd = Subspace::zero(self.field, len);
        for &c in coords {
            let ce: Vec<u16> = (0..d0).map(|i| (c >> i & 1) as u16).collect();
            let co: Vec<u16> = (0..d1).map(|i| (c >> (d0 + i) & 1) as u16).collect();
            even.insert(self.even.combine(&ce));
            odd.insert(self.odd.combine(&co));
        }
        SuperAlgebra { n0: self.n0, n1: self.n1, field: self.field, even, odd }
    }

    pub fn is_simple(&self) -> Result<SimplicityReport> {
        self.is_simple_with(Strategy::Auto)
    }

    pub fn is_simple_with(&self, strategy: Strategy) -> Result<SimplicityReport> {
        self.gf2_table()?.is_simple(strategy)
    }

    /// Checks the squaring axioms on all basis vectors, scaling by each of
    /// `coefficients`.
    pub fn squaring_axioms(&self, coefficients: &[u16]) -> SquaringReport {
        let f = self.field;
        let all: Vec<&Vec<u16>> = self.even.basis().iter().chain(self.odd.basis()).collect();
        let scale = |a: u16, v: &[u16]| v.iter().map(|&x| f.mul(a, x)).collect::<Vec<u16>>();
        let add = |u: &[u16], v: &[u16]| u.iter().zip(v).map(|(&a, &b)| a ^ b).collect::<Vec<u16>>();
        let mut report =
            SquaringReport { scaling: true, polarization: true, commutes_with_square: true, adjoint_square: true };
        let odd = self.odd.basis();
        for x in odd {
            let x2 = self.square(x);
            for &a in coefficients {
                if self.square(&scale(a, x)) != scale(f.square(a), &x2) {
                    report.scaling = false;
                }
            }
            if self.bracket(x, &x2).iter().any(|&c| c != 0) {
                report.commutes_with_square = false;
            }
            for y in &all {
                if self.bracket(&x2, y) != self.bracket(x, &self.bracket(x, y)) {
                    report.adjoint_square = false;
                }
            }
            for y in odd {
                let polar = |u: &[u16], v: &[u16]| add(&add(&self.square(&add(u, v)), &self.square(u)), &self.square(v));
                if polar(x, y) != self.bracket(x, y) {
                    report.polarization = false;
                }
                for &a in coefficients {
                    if polar(&scale(a, x), y) != scale(a, &polar(x, y)) || polar(x, &scale(a, y)) != scale(a, &polar(x, y)) {
                        report.polarization = false;
                    }
                }
            }
        }
        report
    }

    pub fn record(&self) -> SuperAlgebraRecord {
        SuperAlgebraRecord {
            sdim: [self.n0, self.n1],
            field: self.field.to_string(),
            dim: [self.even.dim(), self.odd.dim()],
            even: self.even_matrices(),
            odd: self.odd_matrices(),
        }
    }
}

/// Kernel of `X -> X^T B + B X` on the even and odd components separately.
pub fn super_preserver(b: &SuperMatrix) -> Result<SuperAlgebra> {
    let (n0, n1) = b.sdim();
    let field = b.matrix().field();
    let g = preserver(b.matrix())?;
    let len = (n0 + n1) * (n0 + n1);
    let positions = |odd: bool| {
        let n = n0 + n1;
        Subspace::span(
            field,
            len,
            (0..len).filter(|&t| position_is_odd(n0, t / n, t % n) == odd).map(|t| {
                let mut v = vec![0; len];
                v[t] = 1;
                v
            }),
        )
    };
    let even = g.subspace().intersection(&positions(false));
    let odd = g.subspace().intersection(&positions(true));
    if even.dim() + odd.dim() != g.dim() {
        return Err(Error::Certificate("preserver of a homogeneous form is not graded".into()));
    }
    SuperAlgebra::new(n0, n1, field, even.basis().to_vec(), odd.basis().to_vec())
}

/// Preserver of the named form of the given kind.
pub fn named_superalgebra(kind: SuperKind, n0: usize, n1: usize, field: Field) -> Result<SuperAlgebra> {
    super_preserver(&super_form(kind, n0, n1, field)?)
}

/// Permutation `M` reordering the blocks `(k0, k0 | k1, k1)` of
/// `diag(Π(n0), Π(n1))` as `(k0, k1, k0, k1)`, so that `M B M^T = Π(n0+n1)`.
pub fn pi_pi_reorder(n0: usize, n1: usize, field: Field) -> Result<Matrix> {
    if n0 % 2 == 1 || n1 % 2 == 1 {
        return Err(Error::param(format!("both dimensions must be even, got ({n0}|{n1})")));
    }
    let (k0, k1) = (n0 / 2, n1 / 2);
    let perm: Vec<usize> = (0..k0).chain(n0..n0 + k1).chain(k0..n0).chain(n0 + k1..n0 + n1).collect();
    Ok(Matrix::permutation(field, &perm))
}
