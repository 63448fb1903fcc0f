use crate::error::Result;
use crate::ff::Field;
use crate::mat::{standard_form, Matrix, StandardForm};

use super::{preserver, Algebra, AlgebraBasis, MatrixSpace};

pub fn gl(n: usize, field: Field) -> AlgebraBasis {
    Algebra::full(MatrixSpace::new(n, field))
}

/// `o_I(n)`: symmetric matrices.
pub fn o_i(n: usize, field: Field) -> Result<AlgebraBasis> {
    preserver(&Matrix::identity(field, n))
}

/// `o_S(n)`, preserving the antidiagonal form.
pub fn o_s(n: usize, field: Field) -> Result<AlgebraBasis> {
    preserver(&standard_form(StandardForm::S, n, field)?)
}

/// `o_Π(n)`, n even: matrices `[[A, B], [C, A^T]]` with `B`, `C` symmetric.
pub fn o_pi(n: usize, field: Field) -> Result<AlgebraBasis> {
    preserver(&standard_form(StandardForm::Pi, n, field)?)
}

/// Named elements used in the structure lemmas. Indices are 0-based; for
/// the `o_Π(2n)` elements `n` is the half size.
pub mod gens {
    use crate::ff::Field;
    use crate::mat::Matrix;

    fn with_ones(n: usize, field: Field, at: &[(usize, usize)]) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for &(i, j) in at {
            m.set(i, j, m.get(i, j) ^ 1);
        }
        m
    }

    /// `F^{ij} = E^{ij} + E^{ji}`.
    pub fn f(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(n, field, &[(i, j), (j, i)])
    }

    /// `H^{ij} = E^{ii} + E^{jj}`.
    pub fn h(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(n, field, &[(i, i), (j, j)])
    }

    /// `F_1^{ij}`: `A = C = 0`, `B = E^{ij} + E^{ji}`.
    pub fn f1(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(i, n + j), (j, n + i)])
    }

    /// `F_2^{ij}`: `A = B = 0`, `C = E^{ij} + E^{ji}`.
    pub fn f2(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(n + i, j), (n + j, i)])
    }

    /// `G^{ij}`: `B = C = 0`, `A = E^{ij}`.
    pub fn g(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(i, j), (n + j, n + i)])
    }

    /// `H^{ij}` of `o_Π(2n)`: `B = C = 0`, `A = E^{ii} + E^{jj}`.
    pub fn h_pi(n: usize, i: usize, j: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(i, i), (j, j), (n + i, n + i), (n + j, n + j)])
    }

    /// `K_0`: `A = E^{11}`.
    pub fn k0(n: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(0, 0), (n, n)])
    }

    /// `K_1`: `B = E^{11}`.
    pub fn k1(n: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(0, n)])
    }

    /// `K_2`: `C = E^{11}`.
    pub fn k2(n: usize, field: Field) -> Matrix {
        with_ones(2 * n, field, &[(n, 0)])
    }
}
