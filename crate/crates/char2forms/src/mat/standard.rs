use crate::error::{Error, Result};
use crate::ff::Field;

use super::Matrix;

/// The named matrices of the theory. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardForm {
    /// `1_n`.
    Identity,
    /// `S(n) = antidiag(1, ..., 1)`.
    S,
    /// `Π_n`: off-diagonal identity blocks, with a central 1 for odd n.
    Pi,
    /// `J_n` for even n; over characteristic 2 it coincides with `Π_n`.
    J,
    /// `Z(n) = diag(Π_2, ..., Π_2)`, n even.
    Z,
    /// `Ẑ(n) = diag(1, Z(n-1))`, n odd.
    Zhat,
    /// `Z̃(n, r) = diag(Z(r), 0)`, r even.
    Ztilde(usize),
    /// `S̃^{n,m}`: `S(m)` in the top-right corner.
    Stilde(usize),
    /// `Y(n, r)`: `1_r` in block position (1, 2).
    Y(usize),
    /// `Ỹ(n, r)`: `Y(n, r)` plus a 1 at `(2r, 2r)`.
    Ytilde(usize),
    /// Matrix unit `E^{ij}`.
    E(usize, usize),
    /// `T^{ij} = 1 + E^{ii} + E^{jj} + E^{ij} + E^{ji}`.
    T(usize, usize),
}

/// Builds the named matrix of size `n`.
pub fn standard_form(kind: StandardForm, n: usize, field: Field) -> Result<Matrix> {
    use StandardForm::*;
    let mut m = Matrix::zeros(field, n, n);
    match kind {
        Identity => return Ok(Matrix::identity(field, n)),
        S => {
            for i in 0..n {
                m.set(i, n - 1 - i, 1);
            }
        }
        Pi | J => {
            if kind == J && n % 2 == 1 {
                return Err(Error::param(format!("J_n needs even n, got {n}")));
            }
            let k = n / 2;
            for i in 0..k {
                m.set(i, n - k + i, 1);
                m.set(n - k + i, i, 1);
            }
            if n % 2 == 1 {
                m.set(k, k, 1);
            }
        }
        Z => {
            if n % 2 == 1 {
                return Err(Error::param(format!("Z(n) needs even n, got {n}")));
            }
            return standard_form(Ztilde(n), n, field);
        }
        Zhat => {
            if n % 2 == 0 {
                return Err(Error::param(format!("Ẑ(n) needs odd n, got {n}")));
            }
            m.set(0, 0, 1);
            for t in (1..n).step_by(2) {
                m.set(t, t + 1, 1);
                m.set(t + 1, t, 1);
            }
        }
        Ztilde(r) => {
            if r % 2 == 1 || r > n {
                return Err(Error::param(format!("Z̃({n}, {r}) needs even r <= n")));
            }
            for t in (0..r).step_by(2) {
                m.set(t, t + 1, 1);
                m.set(t + 1, t, 1);
            }
        }
        Stilde(k) => {
            if 2 * k > n {
                return Err(Error::param(format!("S̃^({n},{k}) needs 2m <= n")));
            }
            for i in 0..k {
                m.set(i, n - 1 - i, 1);
            }
        }
        Y(r) | Ytilde(r) => {
            let need = if matches!(kind, Y(_)) { 2 * r } else { 2 * r + 1 };
            if need > n {
                return Err(Error::param(format!("{kind:?} needs n >= {need}, got {n}")));
            }
            for t in 0..r {
                m.set(t, r + t, 1);
            }
            if matches!(kind, Ytilde(_)) {
                m.set(2 * r, 2 * r, 1);
            }
        }
        E(i, j) => {
            if i >= n || j >= n {
                return Err(Error::param(format!("E^({i},{j}) outside {n}x{n}")));
            }
            m.set(i, j, 1);
        }
        T(i, j) => {
            if i >= n || j >= n {
                return Err(Error::param(format!("T^({i},{j}) outside {n}x{n}")));
            }
            m = Matrix::identity(field, n);
            if i != j {
                m.set(i, i, 0);
                m.set(j, j, 0);
                m.set(i, j, 1);
                m.set(j, i, 1);
            }
        }
    }
    Ok(m)
}

/// The matrix M with `M M^T = Ẑ(n)` over GF(2), n odd:
/// `M_ij = 1` iff i = 1 or j = 1, or j = i, or j = i + 1 with i odd, or
/// j > i + 1 (1-based indices).
pub fn zhat_root(n: usize, field: Field) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let one = i == 1 || j == 1 || j == i || (j == i + 1 && i % 2 == 1) || j > i + 1;
        one as u16
    })
}
