//! Exhaustive ground truth over GF(2) for `n <= 4`.
//!
//! A matrix is packed into a `u16` code with entry `(i, j)` at bit
//! `n² - 1 - (i n + j)`, so comparing codes compares matrices
//! lexicographically in row-major order. Orbits are computed by union-find
//! over the whole matrix space using generators of the acting group:
//! transvections `1 + E^{ab}` for `GL(n, 2)` and a basis of the added
//! symmetric matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::liealg::{preserver, Algebra, AlgebraBasis, Fingerprint, MatrixSpace};
use crate::mat::Matrix;

pub const MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Predicate {
    #[serde(rename = "nondeg-nonsym")]
    NondegNonsym,
    #[serde(rename = "nondeg-sym")]
    NondegSym,
    #[serde(rename = "all-sym")]
    AllSym,
    #[serde(rename = "all")]
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    /// `B ~ M B M^T`.
    Congruence,
    /// `B ~ M B M^T + A`, A symmetric.
    Sociological,
    /// `B ~ M B M^T + A`, A symmetric zero-diagonal.
    Albert,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [Predicate::NondegNonsym, Predicate::NondegSym, Predicate::AllSym, Predicate::All];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::NondegNonsym => "nondeg-nonsym",
            Predicate::NondegSym => "nondeg-sym",
            Predicate::AllSym => "all-sym",
            Predicate::All => "all",
        }
    }
}

impl Equivalence {
    pub const ALL: [Equivalence; 3] = [Equivalence::Congruence, Equivalence::Sociological, Equivalence::Albert];

    pub fn name(self) -> &'static str {
        match self {
            Equivalence::Congruence => "congruence",
            Equivalence::Sociological => "sociological",
            Equivalence::Albert => "albert",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Predicate> {
        match s {
            "nondeg-nonsym" | "nondegenerate-nonsymmetric" => Ok(Predicate::NondegNonsym),
            "nondeg-sym" | "nondegenerate-symmetric" => Ok(Predicate::NondegSym),
            "all-sym" | "all-symmetric" => Ok(Predicate::AllSym),
            "all" => Ok(Predicate::All),
            _ => Err(Error::param(format!("unknown predicate {s:?}"))),
        }
    }
}

impl FromStr for Equivalence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Equivalence> {
        match s {
            "congruence" => Ok(Equivalence::Congruence),
            "sociological" | "socio" => Ok(Equivalence::Sociological),
            "albert" => Ok(Equivalence::Albert),
            _ => Err(Error::param(format!("unknown equivalence {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub n: usize,
    pub predicate: Predicate,
    pub equivalence: Equivalence,
    pub count: usize,
    pub orbit_sizes: Vec<usize>,
    pub representatives: Vec<Matrix>,
}

/// Square `n x n` GF(2) matrices as packed row bit patterns.
#[derive(Clone, Copy, Debug)]
struct Packed {
    n: usize,
}

impl Packed {
    fn row(self, code: u16, i: usize) -> u16 {
        let n = self.n;
        (code >> (n * (n - 1 - i))) & ((1 << n) - 1)
    }

    fn from_rows(self, rows: impl Iterator<Item = u16>) -> u16 {
        rows.fold(0, |acc, r| (acc << self.n) | r)
    }

    fn get(self, code: u16, i: usize, j: usize) -> bool {
        self.row(code, i) >> (self.n - 1 - j) & 1 == 1
    }

    fn unit(self, i: usize, j: usize) -> u16 {
        1 << (self.n * self.n - 1 - (i * self.n + j))
    }

    fn identity(self) -> u16 {
        (0..self.n).fold(0, |acc, i| acc | self.unit(i, i))
    }

    fn mul(self, a: u16, b: u16) -> u16 {
        self.from_rows((0..self.n).map(|i| {
            let ra = self.row(a, i);
            (0..self.n).filter(|&k| ra >> (self.n - 1 - k) & 1 == 1).fold(0, |acc, k| acc ^ self.row(b, k))
        }))
    }

    fn transpose(self, a: u16) -> u16 {
        let mut t = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(a, i, j) {
                    t |= self.unit(j, i);
                }
            }
        }
        t
    }

    fn congruent(self, b: u16, m: u16) -> u16 {
        self.mul(self.mul(m, b), self.transpose(m))
    }

    fn rank(self, a: u16) -> usize {
        let mut rows: Vec<u16> = (0..self.n).map(|i| self.row(a, i)).collect();
        let mut rank = 0;
        for bit in (0..self.n).rev() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank];
                for r in rows.iter_mut().skip(rank + 1) {
                    if *r >> bit & 1 == 1 {
                        *r ^= pivot;
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn is_symmetric(self, a: u16) -> bool {
        self.transpose(a) == a
    }

    fn holds(self, predicate: Predicate, a: u16) -> bool {
        match predicate {
            Predicate::NondegNonsym => !self.is_symmetric(a) && self.rank(a) == self.n,
            Predicate::NondegSym => self.is_symmetric(a) && self.rank(a) == self.n,
            Predicate::AllSym => self.is_symmetric(a),
            Predicate::All => true,
        }
    }

    fn count(self) -> usize {
        1 << (self.n * self.n)
    }

    /// `1 + E^{ab}` for `a != b`.
    fn transvections(self) -> Vec<u16> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a != b {
                    out.push(self.identity() ^ self.unit(a, b));
                }
            }
        }
        out
    }

    /// Basis of the symmetric matrices added by the equivalence.
    fn offsets(self, equivalence: Equivalence) -> Vec<u16> {
        let mut out = Vec::new();
        if equivalence == Equivalence::Congruence {
            return out;
        }
        for i in 0..self.n {
            for j in i..self.n {
                if i != j {
                    out.push(self.unit(i, j) | self.unit(j, i));
                } else if equivalence == Equivalence::Sociological {
                    out.push(self.unit(i, i));
                }
            }
        }
        out
    }
}

fn check_envelope(n: usize, field: Field) -> Result<Packed> {
    if field.degree() != 1 {
        return Err(Error::UnsupportedField(format!("exhaustive enumeration runs over GF(2) only, not {field}")));
    }
    if n == 0 || n > MAX_N {
        return Err(Error::EnvelopeExceeded(format!("n = {n} outside 1..={MAX_N}")));
    }
    Ok(Packed { n })
}

/// Packs a GF(2) matrix of size at most 4.
pub fn encode(m: &Matrix) -> Result<u16> {
    if !m.is_square() {
        return Err(Error::dim("matrix is not square"));
    }
    let p = check_envelope(m.rows(), m.field())?;
    let mut code = 0;
    for i in 0..p.n {
        for j in 0..p.n {
            if m.get(i, j) != 0 {
                code |= p.unit(i, j);
            }
        }
    }
    Ok(code)
}

pub fn decode(code: u16, n: usize) -> Matrix {
    let p = Packed { n };
    Matrix::from_fn(Field::gf2(), n, n, |i, j| u16::from(p.get(code, i, j)))
}

/// Every element of `GL(n, 2)`.
pub fn general_linear_group(n: usize) -> Result<Vec<u16>> {
    let p = check_envelope(n, Field::gf2())?;
    Ok((0..p.count()).map(|c| c as u16).filter(|&c| p.rank(c) == n).collect())
}

/// `|GL(n, 2)| = Π (2^n - 2^i)`.
pub fn general_linear_order(n: usize) -> usize {
    (0..n).map(|i| (1usize << n) - (1 << i)).product()
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(size: usize) -> UnionFind {
        UnionFind { parent: (0..size as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // The smaller code becomes the root, so roots are orbit minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Orbits of the matrices satisfying `predicate` under `equivalence`.
pub fn enumerate_classes(field: Field, n: usize, predicate: Predicate, equivalence: Equivalence) -> Result<OrbitCensus> {
    let p = check_envelope(n, field)?;
    if equivalence != Equivalence::Congruence && !matches!(predicate, Predicate::All | Predicate::AllSym) {
        return Err(Error::param(format!("{predicate} is not stable under {equivalence} equivalence")));
    }
    let movers = p.transvections();
    let offsets = p.offsets(equivalence);
    let members: Vec<u16> = (0..p.count()).map(|c| c as u16).filter(|&c| p.holds(predicate, c)).collect();

    // Images are computed in parallel; the unions are cheap and run after.
    let threads = crate::worker_threads().min(members.len().max(1));
    let chunk = members.len().div_ceil(threads).max(1);
    let edges: Vec<Vec<(u16, u16)>> = std::thread::scope(|s| {
        let handles: Vec<_> = members
            .chunks(chunk)
            .map(|part| {
                let (movers, offsets) = (&movers, &offsets);
                s.spawn(move || {
                    let mut out = Vec::with_capacity(part.len() * (movers.len() + offsets.len()));
                    for &b in part {
                        out.extend(movers.iter().map(|&m| (b, p.congruent(b, m))));
                        out.extend(offsets.iter().map(|&a| (b, b ^ a)));
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });

    let mut uf = UnionFind::new(p.count());
    for (a, b) in edges.into_iter().flatten() {
        uf.union(u32::from(a), u32::from(b));
    }
    let mut orbits: BTreeMap<u32, usize> = BTreeMap::new();
    for &b in &members {
        *orbits.entry(uf.find(u32::from(b))).or_default() += 1;
    }
    Ok(OrbitCensus {
        n,
        predicate,
        equivalence,
        count: orbits.len(),
        orbit_sizes: orbits.values().copied().collect(),
        representatives: orbits.keys().map(|&r| decode(r as u16, n)).collect(),
    })
}

/// The orbit of `b` computed from the whole group: every invertible `M`
/// and every admissible `A`.
pub fn brute_orbit(b: &Matrix, equivalence: Equivalence) -> Result<Vec<u16>> {
    let code = encode(b)?;
    let p = Packed { n: b.rows() };
    let group = general_linear_group(p.n)?;
    let basis = p.offsets(equivalence);
    let offsets: Vec<u16> = (0..1u32 << basis.len())
        .map(|mask| basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &a)| acc ^ a))
        .collect();
    let mut seen = vec![false; p.count()];
    for &m in &group {
        let c = p.congruent(code, m);
        for &a in &offsets {
            seen[usize::from(c ^ a)] = true;
        }
    }
    Ok((0..p.count()).filter(|&c| seen[c]).map(|c| c as u16).collect())
}

/// `{X : X^T B + B X = 0}` found by testing every matrix.
pub fn brute_preserver(b: &Matrix) -> Result<AlgebraBasis> {
    let code = encode(b)?;
    let p = Packed { n: b.rows() };
    let solutions = (0..p.count()).map(|c| c as u16).filter(|&x| p.mul(p.transpose(x), code) == p.mul(code, x));
    let vectors: Vec<Vec<u16>> = solutions.map(|x| decode(x, p.n).into_vec()).collect();
    Algebra::new(MatrixSpace::new(p.n, Field::gf2()), vectors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clusters {
    pub count: usize,
    /// Indices into the input, grouped by fingerprint in order of first
    /// appearance.
    pub clusters: Vec<Vec<usize>>,
    pub fingerprints: Vec<Fingerprint>,
}

/// Groups forms by the fingerprints of their preservers.
pub fn lie_equiv_cluster(reps: &[Matrix]) -> Result<Clusters> {
    let fingerprints = reps.iter().map(|b| Ok(preserver(b)?.fingerprint())).collect::<Result<Vec<_>>>()?;
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, fp) in fingerprints.iter().enumerate() {
        match clusters.iter_mut().find(|c| fingerprints[c[0]] == *fp) {
            Some(c) => c.push(i),
            None => clusters.push(vec![i]),
        }
    }
    Ok(Clusters { count: clusters.len(), clusters, fingerprints })
}
