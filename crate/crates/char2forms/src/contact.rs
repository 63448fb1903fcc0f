//! Contactness of the linear 1-forms `α = dx_0 + Σ B_ij x_i dx_j`.
//!
//! `x_0` has degree 2 and `x_1, ..., x_n` degree 1. Coordinate changes
//! preserving these degrees act on `B` by `B -> M B M^T + A` with `A`
//! symmetric (even variables, divided powers with every shearing exponent
//! above 1) or symmetric zero-diagonal (odd variables). The verdicts below
//! only use ranks and the value of `x^T B x` on a radical, so they are
//! invariant under both actions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::superalg::Parity;

/// `dx_0 + Σ B_ij x_i dx_j` with the parities of the variables; even
/// variables come first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormSpec {
    x0: Parity,
    n0: usize,
    b: Matrix,
}

impl OneFormSpec {
    pub fn new(x0: Parity, vars: &[Parity], b: Matrix) -> Result<OneFormSpec> {
        if !b.is_square() || b.rows() != vars.len() {
            return Err(Error::dim(format!(
                "{}x{} matrix for {} variables",
                b.rows(),
                b.cols(),
                vars.len()
            )));
        }
        let n0 = vars.iter().take_while(|&&p| p == Parity::Even).count();
        if vars[n0..].iter().any(|&p| p == Parity::Even) {
            return Err(Error::pre("even variables must precede odd ones"));
        }
        let n = vars.len();
        // Each term x_i dx_j has the parity of x_0.
        let wrong = (0..n).any(|i| (0..n).any(|j| b.get(i, j) != 0 && ((i < n0) != (j < n0)) != (x0 == Parity::Odd)));
        if wrong {
            return Err(Error::pre(format!("B has terms of the wrong parity for x_0 {x0:?}").to_lowercase()));
        }
        Ok(OneFormSpec { x0, n0, b })
    }

    pub fn all_even(b: Matrix) -> Result<OneFormSpec> {
        let vars = vec![Parity::Even; b.rows()];
        OneFormSpec::new(Parity::Even, &vars, b)
    }

    pub fn all_odd(b: Matrix) -> Result<OneFormSpec> {
        let vars = vec![Parity::Odd; b.rows()];
        OneFormSpec::new(Parity::Even, &vars, b)
    }

    /// `n0` even variables followed by odd ones.
    pub fn mixed(x0: Parity, n0: usize, b: Matrix) -> Result<OneFormSpec> {
        let n = b.rows();
        if n0 > n {
            return Err(Error::param(format!("{n0} even variables out of {n}")));
        }
        let vars: Vec<Parity> = (0..n).map(|i| if i < n0 { Parity::Even } else { Parity::Odd }).collect();
        OneFormSpec::new(x0, &vars, b)
    }

    pub fn x0(&self) -> Parity {
        self.x0
    }

    /// `(n_0, n_1)`: numbers of even and odd variables besides `x_0`.
    pub fn sdim(&self) -> (usize, usize) {
        (self.n0, self.b.rows() - self.n0)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }
}

/// A diagonal block of `B` for `x_0` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BlockClass {
    pub n: usize,
    /// `rank(B + B^T)`.
    pub rank: usize,
    /// Whether `x^T B x` is nonzero on the radical of `B + B^T`; only
    /// meaningful for odd variables.
    pub anisotropic_radical: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContactClass {
    /// `x_0` even; the even and odd blocks are judged separately.
    X0Even { even: BlockClass, odd: BlockClass },
    /// `x_0` odd; `B = [[0, C], [D, 0]]` and `r = rank(D + C^T)`.
    X0Odd { n0: usize, n1: usize, r: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactVerdict {
    pub contact: bool,
    pub class: ContactClass,
    pub expression: Option<String>,
}

fn block_class(b: &Matrix) -> BlockClass {
    let polar = b + &b.transpose();
    let (rank, radical) = polar.rank_and_kernel();
    let anisotropic_radical = radical.basis().iter().any(|v| b.form(v, v) != 0);
    BlockClass { n: b.rows(), rank, anisotropic_radical }
}

impl BlockClass {
    fn contact(&self, parity: Parity) -> bool {
        match parity {
            Parity::Even => self.n == self.rank,
            Parity::Odd => self.n == self.rank || (self.n == self.rank + 1 && self.anisotropic_radical),
        }
    }
}

/// Classifies the 1-form and, when it is contact, returns its canonical
/// expression.
pub fn is_contact(spec: &OneFormSpec) -> ContactVerdict {
    let (n0, n1) = spec.sdim();
    let b = &spec.b;
    let (contact, class) = match spec.x0 {
        Parity::Even => {
            let even = block_class(&b.submatrix(0, 0, n0, n0));
            let odd = block_class(&b.submatrix(n0, n0, n1, n1));
            (even.contact(Parity::Even) && odd.contact(Parity::Odd), ContactClass::X0Even { even, odd })
        }
        Parity::Odd => {
            let c = b.submatrix(0, n0, n0, n1);
            let d = b.submatrix(n0, 0, n1, n0);
            let r = (&d + &c.transpose()).rank();
            (r == n0 && r == n1, ContactClass::X0Odd { n0, n1, r })
        }
    };
    let expression = contact.then(|| expression(spec));
    ContactVerdict { contact, class, expression }
}

/// Token string of the canonical expression, e.g. `dt + p_1 dq_1`.
///
/// Terms are joined by `" + "`. `x_0` is `t` when even and `τ` when odd;
/// even pairs are `p_i dq_i`, odd pairs `ξ_i dη_i`, the unpaired odd
/// variable `θ dθ`. With only odd variables the pairs are written
/// `p_i dq_i` and the unpaired variable `x_n dx_n`; the pericontact pairs
/// are `ξ_i dq_i`.
pub fn canonical_contact_expression(spec: &OneFormSpec) -> Result<String> {
    if !is_contact(spec).contact {
        return Err(Error::pre("1-form is not contact"));
    }
    Ok(expression(spec))
}

fn expression(spec: &OneFormSpec) -> String {
    let (n0, n1) = spec.sdim();
    let mut terms = Vec::new();
    match spec.x0 {
        Parity::Odd => {
            terms.push("dτ".to_string());
            terms.extend((1..=n0).map(|i| format!("ξ_{i} dq_{i}")));
        }
        Parity::Even if n0 == 0 => {
            terms.push("dt".to_string());
            terms.extend((1..=n1 / 2).map(|i| format!("p_{i} dq_{i}")));
            if n1 % 2 == 1 {
                terms.push(format!("x_{n1} dx_{n1}"));
            }
        }
        Parity::Even => {
            terms.push("dt".to_string());
            terms.extend((1..=n0 / 2).map(|i| format!("p_{i} dq_{i}")));
            terms.extend((1..=n1 / 2).map(|i| format!("ξ_{i} dη_{i}")));
            if n1 % 2 == 1 {
                terms.push("θ dθ".to_string());
            }
        }
    }
    terms.join(" + ")
}

/// The matrix `B` of the canonical expression in the same variables.
pub fn canonical_one_form_matrix(spec: &OneFormSpec) -> Result<Matrix> {
    if !is_contact(spec).contact {
        return Err(Error::pre("1-form is not contact"));
    }
    let (n0, n1) = spec.sdim();
    let n = n0 + n1;
    let mut m = Matrix::zeros(spec.b.field(), n, n);
    match spec.x0 {
        Parity::Odd => {
            // ξ_i = x_{k+i}, q_i = x_i.
            for i in 0..n0 {
                m.set(n0 + i, i, 1);
            }
        }
        Parity::Even => {
            for (offset, size) in [(0, n0), (n0, n1)] {
                let k = size / 2;
                for i in 0..k {
                    m.set(offset + i, offset + k + i, 1);
                }
                if size % 2 == 1 {
                    m.set(offset + size - 1, offset + size - 1, 1);
                }
            }
        }
    }
    Ok(m)
}
