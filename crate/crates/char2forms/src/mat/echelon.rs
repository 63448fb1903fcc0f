use crate::ff::Field;

/// `y += a * x`.
#[inline]
pub fn axpy(f: Field, y: &mut [u16], a: u16, x: &[u16]) {
    if f.is_prime_field() {
        if a != 0 {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi ^= xi;
            }
        }
    } else {
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi ^= f.mul(a, xi);
        }
    }
}

/// A subspace of `K^len` kept as a reduced row echelon basis.
///
/// The basis is sorted by pivot column and every pivot column is zero in all
/// other basis vectors, so two subspaces are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    len: usize,
    basis: Vec<Vec<u16>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, len: usize) -> Subspace {
        Subspace { field, len, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, len: usize) -> Subspace {
        let basis = (0..len)
            .map(|i| {
                let mut v = vec![0; len];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, len, basis, pivots: (0..len).collect() }
    }

    pub fn span<I: IntoIterator<Item = Vec<u16>>>(field: Field, len: usize, vectors: I) -> Subspace {
        let mut s = Subspace::zero(field, len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Length of the ambient vectors.
    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u16>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis from `v` so that `v` vanishes on every pivot.
    pub fn reduce(&self, v: &mut [u16]) {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let a = v[p];
            if a != 0 {
                axpy(self.field, v, a, b);
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u16>) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[p]).expect("nonzero");
        if inv != 1 {
            for x in &mut v {
                *x = f.mul(*x, inv);
            }
        }
        for b in &mut self.basis {
            let a = b[p];
            if a != 0 {
                axpy(f, b, a, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.basis.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains(&self, v: &[u16]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[u16]) -> Option<Vec<u16>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[u16]) -> Vec<u16> {
        let mut v = vec![0; self.len];
        for (b, &c) in self.basis.iter().zip(coords) {
            if c != 0 {
                axpy(self.field, &mut v, c, b);
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in &other.basis {
            s.insert(b.clone());
        }
        s
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.len;
        let mut z = Subspace::zero(self.field, 2 * n);
        for b in &self.basis {
            z.insert([b.as_slice(), b.as_slice()].concat());
        }
        for b in &other.basis {
            z.insert([b.as_slice(), &vec![0; n]].concat());
        }
        let vectors = z
            .basis
            .iter()
            .zip(&z.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(v, _)| v[n..].to_vec());
        Subspace::span(self.field, n, vectors)
    }

    /// The subspace cut out by `v -> constraint(v) = 0` for each linear
    /// functional given as a coefficient vector.
    pub fn restrict(&self, functionals: &[Vec<u16>]) -> Subspace {
        let f = self.field;
        let d = self.dim();
        // Rows: functionals evaluated on the basis; kernel in coordinates.
        let mut rows = Vec::with_capacity(functionals.len() * d);
        for phi in functionals {
            for b in &self.basis {
                rows.push(b.iter().zip(phi).fold(0, |acc, (&x, &y)| acc ^ f.mul(x, y)));
            }
        }
        let m = super::Matrix::from_flat(f, functionals.len(), d, rows).expect("shape");
        let k = m.kernel();
        Subspace::span(f, self.len, k.basis().iter().map(|c| self.combine(c)))
    }
}
