use crate::error::{Error, Result};
use crate::ff::Field;
use crate::mat::{Matrix, Subspace};

use super::JordanBlock;

/// `P^{-1} T P = L` with `L` in Jordan form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub blocks: Vec<JordanBlock>,
    pub form: Matrix,
    pub transform: Matrix,
}

/// Polynomial coefficients, lowest degree first.
type Poly = Vec<u16>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul(f: Field, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    trim(&mut out);
    out
}

fn poly_eval(f: Field, p: &Poly, x: u16) -> u16 {
    p.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
}

/// Divides by `x - root`, assuming it is a root.
fn deflate(f: Field, p: &Poly, root: u16) -> Poly {
    let d = p.len() - 1;
    let mut q = vec![0; d];
    let mut carry = 0;
    for i in (0..d).rev() {
        carry = f.mul(carry, root) ^ p[i + 1];
        q[i] = carry;
    }
    q
}

fn format_poly(f: Field, p: &Poly) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = if c == 1 && i > 0 { String::new() } else { f.format(c) };
            match i {
                0 => f.format(c),
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
fn charpoly(t: &Matrix) -> Poly {
    let f = t.field();
    let n = t.rows();
    let mut h = t.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if p != j + 1 {
            // Similarity by the transposition (p, j+1).
            for c in 0..n {
                let (a, b) = (h.get(p, c), h.get(j + 1, c));
                h.set(p, c, b);
                h.set(j + 1, c, a);
            }
            for r in 0..n {
                let (a, b) = (h.get(r, p), h.get(r, j + 1));
                h.set(r, p, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = f.inv(h.get(j + 1, j)).expect("pivot");
        for i in j + 2..n {
            let c = f.mul(h.get(i, j), inv);
            if c == 0 {
                continue;
            }
            // row_i -= c row_{j+1}, then col_{j+1} += c col_i.
            for k in 0..n {
                let v = h.get(i, k) ^ f.mul(c, h.get(j + 1, k));
                h.set(i, k, v);
            }
            for k in 0..n {
                let v = h.get(k, j + 1) ^ f.mul(c, h.get(k, i));
                h.set(k, j + 1, v);
            }
        }
    }
    // p_m = (x + h_mm) p_{m-1} + sum_i h_im (prod_{l=i+1..m} h_{l,l-1}) p_{i-1}
    let mut ps: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let mut next = poly_mul(f, &vec![h.get(m, m), 1], &ps[m]);
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h.get(i + 1, i));
            let c = f.mul(h.get(i, m), prod);
            if c != 0 {
                for (k, &x) in ps[i].iter().enumerate() {
                    next[k] ^= f.mul(c, x);
                }
            }
        }
        trim(&mut next);
        ps.push(next);
    }
    ps.pop().unwrap()
}

fn pow_kernel(n_mat: &Matrix, j: usize) -> Subspace {
    let f = n_mat.field();
    let mut p = Matrix::identity(f, n_mat.rows());
    for _ in 0..j {
        p = &p * n_mat;
    }
    p.kernel()
}

/// Jordan decomposition with upper blocks ordered by eigenvalue (as an
/// integer) ascending, then block size descending.
///
/// Fails with [`Error::NotSplit`] when the characteristic polynomial has a
/// factor without roots in the field.
pub fn jordan_form(t: &Matrix) -> Result<JordanDecomposition> {
    if !t.is_square() {
        return Err(Error::dim("Jordan form of a non-square matrix"));
    }
    let f = t.field();
    let n = t.rows();
    let mut rest = charpoly(t);
    let mut eigen: Vec<(u16, usize)> = Vec::new();
    for x in f.elements() {
        let mut mult = 0;
        while rest.len() > 1 && poly_eval(f, &rest, x) == 0 {
            rest = deflate(f, &rest, x);
            mult += 1;
        }
        if mult > 0 {
            eigen.push((x, mult));
        }
    }
    if rest.len() > 1 {
        return Err(Error::NotSplit { m: f.degree(), factor: format_poly(f, &rest) });
    }
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<u16>> = Vec::with_capacity(n);
    for (lambda, mult) in eigen {
        let nm = t + &Matrix::identity(f, n).scale(lambda);
        let mut kernels = vec![Subspace::zero(f, n)];
        while kernels.last().unwrap().dim() < mult {
            let j = kernels.len();
            kernels.push(pow_kernel(&nm, j));
        }
        let depth = kernels.len() - 1;
        let mut chains: Vec<(Vec<u16>, usize)> = Vec::new();
        for j in (1..=depth).rev() {
            let mut covered = kernels[j - 1].clone();
            for (v, s) in &chains {
                let mut w = v.clone();
                for _ in 0..(s - j) {
                    w = nm.mul_vec(&w);
                }
                covered.insert(w);
            }
            for w in kernels[j].basis() {
                if covered.insert(w.clone()) {
                    chains.push((w.clone(), j));
                }
            }
        }
        // Chains were found longest first.
        for (v, s) in chains {
            let mut chain = vec![v];
            for _ in 1..s {
                let next = nm.mul_vec(chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            columns.extend(chain);
            blocks.push(JordanBlock { eigenvalue: lambda, size: s });
        }
    }
    let transform = Matrix::from_fn(f, n, n, |i, j| columns[j][i]);
    let mut form = Matrix::zeros(f, n, n);
    let mut at = 0;
    for b in &blocks {
        for i in 0..b.size {
            form.set(at + i, at + i, b.eigenvalue);
            if i + 1 < b.size {
                form.set(at + i, at + i + 1, 1);
            }
        }
        at += b.size;
    }
    let inv = transform
        .inverse()
        .ok_or_else(|| Error::Certificate("Jordan basis is singular".into()))?;
    if &(&inv * t) * &transform != form {
        return Err(Error::Certificate("Jordan conjugation check failed".into()));
    }
    Ok(JordanDecomposition { blocks, form, transform })
}
