//! Test-side reference implementations. Everything here is written from the
//! definitions with plain loops and shares no code with the library except
//! the choice of modulus, so that field elements can be compared bit for
//! bit.

#![allow(dead_code)]

use char2forms::{Field, Matrix};

/// GF(2^m) by shift-and-add multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Gf {
    pub m: u32,
    pub modulus: u32,
}

impl Gf {
    pub fn of(field: Field) -> Gf {
        Gf { m: field.degree(), modulus: field.modulus() }
    }

    pub fn size(&self) -> u16 {
        1 << self.m
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        let (mut a, mut b, mut r) = (a as u32, b as u32, 0u32);
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.m & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r as u16
    }

    pub fn inv(&self, a: u16) -> u16 {
        (1..self.size()).find(|&x| self.mul(a, x) == 1).expect("nonzero element")
    }
}

/// Square matrix as a flat row-major vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sq {
    pub n: usize,
    pub a: Vec<u16>,
}

impl Sq {
    pub fn zero(n: usize) -> Sq {
        Sq { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Sq {
        let mut s = Sq::zero(n);
        for i in 0..n {
            s.a[i * n + i] = 1;
        }
        s
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Sq {
        let mut s = Sq::zero(n);
        s.a[i * n + j] = 1;
        s
    }

    pub fn from(m: &Matrix) -> Sq {
        Sq { n: m.rows(), a: m.as_slice().to_vec() }
    }

    pub fn to_matrix(&self, field: Field) -> Matrix {
        Matrix::from_flat(field, self.n, self.n, self.a.clone()).unwrap()
    }

    pub fn at(&self, i: usize, j: usize) -> u16 {
        self.a[i * self.n + j]
    }

    pub fn t(&self) -> Sq {
        let n = self.n;
        Sq { n, a: (0..n * n).map(|k| self.a[(k % n) * n + k / n]).collect() }
    }

    pub fn add(&self, o: &Sq) -> Sq {
        Sq { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x ^ y).collect() }
    }

    pub fn scale(&self, f: Gf, c: u16) -> Sq {
        Sq { n: self.n, a: self.a.iter().map(|&x| f.mul(c, x)).collect() }
    }

    pub fn mul(&self, f: Gf, o: &Sq) -> Sq {
        let n = self.n;
        let mut r = Sq::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    r.a[i * n + j] ^= f.mul(x, o.a[k * n + j]);
                }
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }
}

/// `[x, y] = xy + yx`; in characteristic 2 this is also the superbracket.
pub fn bracket(f: Gf, x: &Sq, y: &Sq) -> Sq {
    x.mul(f, y).add(&y.mul(f, x))
}

/// Reduced row echelon basis of the span.
pub fn echelon(f: Gf, vectors: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut rows: Vec<Vec<u16>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let len = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..len {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        rows[r] = rows[r].iter().map(|&x| f.mul(inv, x)).collect();
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let k = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x ^= f.mul(k, *y);
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(f: Gf, vectors: &[Vec<u16>]) -> usize {
    echelon(f, vectors).len()
}

/// Basis of `{x : Σ_j eq[i][j] x_j = 0 for all i}` in `len` unknowns.
pub fn nullspace(f: Gf, eqs: &[Vec<u16>], len: usize) -> Vec<Vec<u16>> {
    let e = echelon(f, eqs);
    let pivots: Vec<usize> = e.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    (0..len)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u16; len];
            v[free] = 1;
            for (row, &p) in e.iter().zip(&pivots) {
                v[p] = row[free];
            }
            v
        })
        .collect()
}

pub fn span_dim(f: Gf, mats: &[Sq]) -> usize {
    rank(f, &mats.iter().map(|m| m.a.clone()).collect::<Vec<_>>())
}

pub fn basis(f: Gf, mats: &[Sq]) -> Vec<Sq> {
    let n = mats.first().map_or(0, |m| m.n);
    echelon(f, &mats.iter().map(|m| m.a.clone()).collect::<Vec<_>>()).into_iter().map(|a| Sq { n, a }).collect()
}

pub fn same_span(f: Gf, a: &[Sq], b: &[Sq]) -> bool {
    let both: Vec<Sq> = a.iter().chain(b).cloned().collect();
    let d = span_dim(f, &both);
    d == span_dim(f, a) && d == span_dim(f, b)
}

pub fn in_span(f: Gf, a: &[Sq], x: &Sq) -> bool {
    let mut with = a.to_vec();
    with.push(x.clone());
    span_dim(f, &with) == span_dim(f, a)
}

/// `{X : X^T B + B X = 0}` with entries restricted to `allowed` positions.
pub fn preserver_where(f: Gf, b: &Sq, allowed: impl Fn(usize, usize) -> bool) -> Vec<Sq> {
    let n = b.n;
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| allowed(i, j)).collect();
    let images: Vec<Sq> = vars
        .iter()
        .map(|&(i, j)| {
            let x = Sq::unit(n, i, j);
            x.t().mul(f, b).add(&b.mul(f, &x))
        })
        .collect();
    let eqs: Vec<Vec<u16>> = (0..n * n).map(|k| images.iter().map(|im| im.a[k]).collect()).collect();
    nullspace(f, &eqs, vars.len())
        .into_iter()
        .map(|c| {
            let mut x = Sq::zero(n);
            for (&coef, &(i, j)) in c.iter().zip(&vars) {
                x.a[i * n + j] = coef;
            }
            x
        })
        .collect()
}

pub fn preserver(f: Gf, b: &Sq) -> Vec<Sq> {
    preserver_where(f, b, |_, _| true)
}

pub fn derived(f: Gf, g: &[Sq]) -> Vec<Sq> {
    let mut out = Vec::new();
    for (i, x) in g.iter().enumerate() {
        for y in &g[i + 1..] {
            out.push(bracket(f, x, y));
        }
    }
    basis(f, &out)
}

/// Dimensions of `g, g^(1), ..., g^(depth)`.
pub fn derived_dims(f: Gf, g: &[Sq], depth: usize) -> Vec<usize> {
    let mut dims = vec![g.len()];
    let mut cur = basis(f, g);
    for _ in 0..depth {
        cur = derived(f, &cur);
        dims.push(cur.len());
    }
    dims
}

pub fn center(f: Gf, g: &[Sq]) -> Vec<Sq> {
    let len = g.len();
    let mut eqs = Vec::new();
    for y in g {
        let ad: Vec<Sq> = g.iter().map(|x| bracket(f, x, y)).collect();
        for k in 0..y.a.len() {
            eqs.push(ad.iter().map(|m| m.a[k]).collect());
        }
    }
    nullspace(f, &eqs, len)
        .into_iter()
        .map(|c| {
            g.iter().zip(&c).fold(Sq::zero(g[0].n), |acc, (x, &k)| acc.add(&x.scale(f, k)))
        })
        .collect()
}

/// A Lie superalgebra of matrices with even and odd bases.
#[derive(Clone, Debug)]
pub struct SuperSpan {
    pub even: Vec<Sq>,
    pub odd: Vec<Sq>,
}

impl SuperSpan {
    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn total(&self) -> usize {
        self.even.len() + self.odd.len()
    }
}

/// Preserver of a homogeneous form in the standard format `(n0|n1)`.
pub fn super_preserver(f: Gf, b: &Sq, n0: usize) -> SuperSpan {
    let even = preserver_where(f, b, |i, j| (i < n0) == (j < n0));
    let odd = preserver_where(f, b, |i, j| (i < n0) != (j < n0));
    SuperSpan { even, odd }
}

/// Brackets of all basis pairs plus squares of odd basis elements; over
/// characteristic 2 `(x + y)^2 = x^2 + y^2 + [x, y]` covers every square.
pub fn super_derived(f: Gf, g: &SuperSpan) -> SuperSpan {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, x) in g.even.iter().enumerate() {
        for y in &g.even[i + 1..] {
            even.push(bracket(f, x, y));
        }
        for y in &g.odd {
            odd.push(bracket(f, x, y));
        }
    }
    for (i, x) in g.odd.iter().enumerate() {
        even.push(x.mul(f, x));
        for y in &g.odd[i + 1..] {
            even.push(bracket(f, x, y));
        }
    }
    SuperSpan { even: basis(f, &even), odd: basis(f, &odd) }
}

pub fn super_derived_dims(f: Gf, g: &SuperSpan, depth: usize) -> Vec<usize> {
    let mut dims = vec![g.total()];
    let mut cur = g.clone();
    for _ in 0..depth {
        cur = super_derived(f, &cur);
        dims.push(cur.total());
    }
    dims
}

/// Square GF(2) matrices of size at most 4 packed row by row, row `i` in
/// bits `4i..4i+4`, entry `(i, j)` at bit `4i + j`.
pub mod bits {
    use char2forms::{Field, Matrix};

    pub fn get(b: u16, i: usize, j: usize) -> u16 {
        b >> (4 * i + j) & 1
    }

    pub fn pack(m: &Matrix) -> u16 {
        let n = m.rows();
        let mut b = 0;
        for i in 0..n {
            for j in 0..n {
                b |= m.get(i, j) << (4 * i + j);
            }
        }
        b
    }

    pub fn unpack(b: u16, n: usize) -> Matrix {
        Matrix::from_fn(Field::gf2(), n, n, |i, j| get(b, i, j))
    }

    /// All `n x n` GF(2) matrices.
    pub fn all(n: usize) -> impl Iterator<Item = u16> {
        let mask: u16 = (0..n).map(|i| ((1u16 << n) - 1) << (4 * i)).fold(0, |a, b| a | b);
        (0..1u32 << 16).map(|x| x as u16).filter(move |&x| x & !mask == 0)
    }

    pub fn mul(a: u16, b: u16, n: usize) -> u16 {
        let mut r = 0;
        for i in 0..n {
            let row = a >> (4 * i) & 0xf;
            let mut acc = 0;
            for k in 0..n {
                if row >> k & 1 == 1 {
                    acc ^= b >> (4 * k) & 0xf;
                }
            }
            r |= acc << (4 * i);
        }
        r
    }

    pub fn t(a: u16, n: usize) -> u16 {
        let mut r = 0;
        for i in 0..n {
            for j in 0..n {
                r |= get(a, i, j) << (4 * j + i);
            }
        }
        r
    }

    pub fn identity(n: usize) -> u16 {
        (0..n).map(|i| 1u16 << (5 * i)).fold(0, |a, b| a | b)
    }

    pub fn invertible(n: usize) -> Vec<u16> {
        all(n).filter(|&a| rank(a, n) == n).collect()
    }

    pub fn rank(a: u16, n: usize) -> usize {
        let mut rows: Vec<u16> = (0..n).map(|i| a >> (4 * i) & 0xf).collect();
        let mut r = 0;
        for c in 0..n {
            if let Some(p) = (r..n).find(|&i| rows[i] >> c & 1 == 1) {
                rows.swap(r, p);
                for i in 0..n {
                    if i != r && rows[i] >> c & 1 == 1 {
                        rows[i] ^= rows[r];
                    }
                }
                r += 1;
            }
        }
        r
    }

    pub fn is_symmetric(a: u16, n: usize) -> bool {
        t(a, n) == a
    }

    pub fn zero_diagonal(a: u16, n: usize) -> bool {
        (0..n).all(|i| get(a, i, i) == 0)
    }

    /// Symmetric zero-diagonal matrices.
    pub fn zd(n: usize) -> Vec<u16> {
        all(n).filter(|&a| is_symmetric(a, n) && zero_diagonal(a, n)).collect()
    }

    /// Class index of every matrix under `B ~ M B M^T + A` with `A` in
    /// `offsets`, computed by acting with the whole group.
    pub fn orbits(n: usize, offsets: &[u16]) -> std::collections::HashMap<u16, usize> {
        let group = invertible(n);
        let mut class = std::collections::HashMap::new();
        let mut next = 0;
        for b in all(n) {
            if class.contains_key(&b) {
                continue;
            }
            for &m in &group {
                let c = mul(mul(m, b, n), t(m, n), n);
                for &a in offsets {
                    class.insert(c ^ a, next);
                }
            }
            next += 1;
        }
        class
    }
}
