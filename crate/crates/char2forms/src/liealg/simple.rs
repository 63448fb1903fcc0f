//! Exhaustive ideal search over GF(2).
//!
//! Elements are coordinate bitmasks in a fixed basis of at most 64 vectors.
//! For superalgebras the basis is homogeneous, ideals are graded and closed
//! under squaring of odd elements.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mat::Subspace;

use super::{Algebra, LieSpace};

/// Largest dimension enumerated element by element.
pub const EXHAUSTIVE_ENVELOPE: usize = 22;

/// Largest weight space enumerated by [`Strategy::Weights`].
const WEIGHT_ENVELOPE: usize = 26;

/// Which elements seed the ideal closures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Every nonzero element; needs `dim <= EXHAUSTIVE_ENVELOPE`.
    Exhaustive,
    /// Every nonzero element of every joint eigenspace of a torus acting by
    /// commuting idempotent `ad` operators. Any nonzero ideal is stable under
    /// the torus and so contains such an element.
    Weights,
    /// `Exhaustive` within its envelope, `Weights` beyond it.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub simple: bool,
    /// A proper nonzero ideal, as coordinate bitmasks in reduced echelon
    /// form, when one was found.
    pub witness: Option<Vec<u64>>,
    /// Number of closures computed.
    pub seeds: u64,
    pub strategy: Strategy,
}

/// Distinct proper nonzero ideals generated by single seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSurvey {
    pub ideals: Vec<Vec<u64>>,
    pub seeds: u64,
    pub strategy: Strategy,
    /// Whether the search stopped before enumerating every seed.
    pub truncated: bool,
}

/// Bracket table of a Lie (super)algebra over GF(2).
#[derive(Clone, Debug)]
pub struct Gf2Table {
    dim: usize,
    ad: Vec<Vec<u64>>,
    chunks: usize,
    lut: Vec<u64>,
    odd: u64,
    squares: Vec<u64>,
    torus: Vec<u64>,
}

fn top_bit(v: u64) -> usize {
    63 - v.leading_zeros() as usize
}

fn insert(rows: &mut [u64; 64], mut v: u64) -> Option<u64> {
    while v != 0 {
        let b = top_bit(v);
        if rows[b] == 0 {
            rows[b] = v;
            return Some(v);
        }
        v ^= rows[b];
    }
    None
}

/// Canonical reduced echelon form of a set of bitmask vectors.
pub(crate) fn rref(vectors: &[u64]) -> Vec<u64> {
    let mut rows = [0u64; 64];
    for &v in vectors {
        insert(&mut rows, v);
    }
    let mut basis: Vec<u64> = rows.iter().rev().copied().filter(|&v| v != 0).collect();
    for i in 0..basis.len() {
        let p = top_bit(basis[i]);
        for j in 0..basis.len() {
            if j != i && basis[j] >> p & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
    basis
}

fn mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

impl Gf2Table {
    /// `ad[i][j] = [e_i, e_j]`; `odd` marks odd basis vectors and
    /// `squares[i]` is `e_i^2` for odd `i`.
    pub fn new(ad: Vec<Vec<u64>>, odd: u64, squares: Vec<u64>, torus: Vec<u64>) -> Result<Gf2Table> {
        let dim = ad.len();
        if dim > 64 {
            return Err(Error::EnvelopeExceeded(format!("dimension {dim} exceeds 64")));
        }
        let m = mask(dim);
        if ad.iter().any(|r| r.len() != dim || r.iter().any(|&v| v & !m != 0))
            || squares.len() != dim
            || odd & !m != 0
        {
            return Err(Error::dim("bracket table does not fit its dimension"));
        }
        let chunks = dim.div_ceil(8);
        let mut lut = vec![0u64; dim * chunks * 256];
        for i in 0..dim {
            for c in 0..chunks {
                let base = (i * chunks + c) * 256;
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let j = 8 * c + low;
                    let col = if j < dim { ad[i][j] } else { 0 };
                    lut[base + byte] = lut[base + (byte & (byte - 1))] ^ col;
                }
            }
        }
        Ok(Gf2Table { dim, ad, chunks, lut, odd, squares, torus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_super(&self) -> bool {
        self.odd != 0
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> u64 {
        self.ad[i][j]
    }

    /// `[e_i, w]`.
    #[inline]
    pub fn ad_apply(&self, i: usize, w: u64) -> u64 {
        let base = i * self.chunks * 256;
        let mut r = 0;
        for c in 0..self.chunks {
            r ^= self.lut[base + c * 256 + ((w >> (8 * c)) & 0xff) as usize];
        }
        r
    }

    pub fn bracket(&self, x: u64, y: u64) -> u64 {
        let mut r = 0;
        let mut x = x;
        while x != 0 {
            let i = x.trailing_zeros() as usize;
            r ^= self.ad_apply(i, y);
            x &= x - 1;
        }
        r
    }

    /// `w^2` for odd `w`.
    pub fn square(&self, w: u64) -> u64 {
        let mut r = 0;
        let mut x = w & self.odd;
        while x != 0 {
            let j = x.trailing_zeros() as usize;
            x &= x - 1;
            r ^= self.squares[j];
            let mut y = x;
            while y != 0 {
                let l = y.trailing_zeros() as usize;
                y &= y - 1;
                r ^= self.ad[j][l];
            }
        }
        r
    }

    pub fn is_abelian(&self) -> bool {
        self.ad.iter().all(|r| r.iter().all(|&v| v == 0)) && self.squares.iter().all(|&v| v == 0)
    }

    fn closure_rows(&self, seed: u64, stop_full: bool, rows: &mut [u64; 64]) -> usize {
        rows.fill(0);
        let mut queue = [0u64; 64];
        let mut qlen = 0;
        let mut count = 0;
        for part in [seed & !self.odd, seed & self.odd] {
            if let Some(r) = insert(rows, part) {
                queue[qlen] = r;
                qlen += 1;
                count += 1;
            }
        }
        while qlen > 0 {
            if stop_full && count == self.dim {
                return count;
            }
            qlen -= 1;
            let w = queue[qlen];
            for i in 0..self.dim {
                if let Some(r) = insert(rows, self.ad_apply(i, w)) {
                    queue[qlen] = r;
                    qlen += 1;
                    count += 1;
                }
            }
            if w & self.odd != 0 {
                if let Some(r) = insert(rows, self.square(w)) {
                    queue[qlen] = r;
                    qlen += 1;
                    count += 1;
                }
            }
        }
        count
    }

    /// Smallest (graded, square-closed) ideal containing `seed`, in reduced
    /// echelon form.
    pub fn closure(&self, seed: u64) -> Vec<u64> {
        let mut rows = [0u64; 64];
        self.closure_rows(seed, false, &mut rows);
        rref(&rows)
    }

    /// Whether the span of `basis` is a graded ideal closed under squares.
    pub fn is_ideal(&self, basis: &[u64]) -> bool {
        let mut rows = [0u64; 64];
        for &v in basis {
            insert(&mut rows, v);
        }
        let inside = |v: u64| {
            let mut probe = rows;
            insert(&mut probe, v).is_none()
        };
        basis.iter().all(|&v| {
            inside(v & self.odd)
                && (0..self.dim).all(|i| inside(self.ad_apply(i, v)))
                && (v & self.odd == 0 || inside(self.square(v & self.odd)))
        })
    }

    /// The quotient by an ideal, on the basis vectors that are not leading
    /// bits of the ideal's echelon basis.
    pub fn quotient(&self, ideal: &[u64]) -> Result<Gf2Table> {
        let ideal = rref(ideal);
        if !self.is_ideal(&ideal) {
            return Err(Error::pre("quotient by a subspace that is not an ideal"));
        }
        let pivots: u64 = ideal.iter().map(|&v| 1u64 << top_bit(v)).fold(0, |a, b| a | b);
        let keep: Vec<usize> = (0..self.dim).filter(|&i| pivots >> i & 1 == 0).collect();
        let project = |mut v: u64| {
            for &r in &ideal {
                if v >> top_bit(r) & 1 == 1 {
                    v ^= r;
                }
            }
            keep.iter().enumerate().fold(0u64, |acc, (k, &i)| acc | ((v >> i & 1) << k))
        };
        let ad = keep.iter().map(|&i| keep.iter().map(|&j| project(self.ad[i][j])).collect()).collect();
        let odd = project(self.odd & !pivots);
        let squares = keep.iter().map(|&i| project(self.squares[i])).collect();
        let torus = self.torus.iter().map(|&t| project(t)).filter(|&t| t != 0).collect();
        Gf2Table::new(ad, odd, squares, torus)
    }

    fn ad_of(&self, h: u64, w: u64) -> u64 {
        self.bracket(h, w)
    }

    /// Joint eigenspaces of the torus, split by parity, as bases.
    pub fn weight_spaces(&self) -> Result<Vec<Vec<u64>>> {
        let units = |m: u64| (0..self.dim).filter(move |&i| m >> i & 1 == 1).map(|i| 1u64 << i);
        let all = mask(self.dim);
        let usable: Vec<u64> = self
            .torus
            .iter()
            .copied()
            .filter(|&h| h & self.odd == 0 && units(all).all(|e| self.ad_of(h, self.ad_of(h, e)) == self.ad_of(h, e)))
            .collect();
        for (a, &h) in usable.iter().enumerate() {
            for &k in &usable[a + 1..] {
                if units(all).any(|e| self.ad_of(h, self.ad_of(k, e)) != self.ad_of(k, self.ad_of(h, e))) {
                    return Err(Error::pre("torus elements do not commute"));
                }
            }
        }
        if usable.is_empty() {
            return Err(Error::EnvelopeExceeded("no diagonalizable torus available".into()));
        }
        let mut spaces: Vec<Vec<u64>> =
            [all & !self.odd, self.odd].iter().map(|&m| units(m).collect::<Vec<_>>()).filter(|b| !b.is_empty()).collect();
        for &h in &usable {
            let mut next = Vec::new();
            for s in &spaces {
                let fixed: Vec<u64> = s.iter().map(|&b| self.ad_of(h, b)).collect();
                let killed: Vec<u64> = s.iter().zip(&fixed).map(|(&b, &x)| b ^ x).collect();
                for part in [rref(&killed), rref(&fixed)] {
                    if !part.is_empty() {
                        next.push(part);
                    }
                }
            }
            spaces = next;
        }
        debug_assert_eq!(spaces.iter().map(Vec::len).sum::<usize>(), self.dim);
        Ok(spaces)
    }

    fn seed_spaces(&self, strategy: Strategy) -> Result<(Strategy, Vec<Vec<u64>>)> {
        let strategy = match strategy {
            Strategy::Auto if self.dim <= EXHAUSTIVE_ENVELOPE => Strategy::Exhaustive,
            Strategy::Auto => Strategy::Weights,
            s => s,
        };
        match strategy {
            Strategy::Exhaustive => {
                if self.dim > EXHAUSTIVE_ENVELOPE {
                    return Err(Error::EnvelopeExceeded(format!(
                        "dimension {} exceeds the exhaustive envelope {EXHAUSTIVE_ENVELOPE}",
                        self.dim
                    )));
                }
                Ok((strategy, vec![(0..self.dim).map(|i| 1u64 << i).collect()]))
            }
            _ => {
                let spaces = self.weight_spaces()?;
                if let Some(big) = spaces.iter().find(|s| s.len() > WEIGHT_ENVELOPE) {
                    return Err(Error::EnvelopeExceeded(format!(
                        "weight space of dimension {} exceeds {WEIGHT_ENVELOPE}",
                        big.len()
                    )));
                }
                Ok((Strategy::Weights, spaces))
            }
        }
    }

    /// Closures of all seeds; with `first_only` the search stops at the first
    /// proper nonzero ideal.
    pub fn survey(&self, strategy: Strategy, first_only: bool) -> Result<IdealSurvey> {
        const KEEP: usize = 64;
        let (strategy, spaces) = self.seed_spaces(strategy)?;
        // Work items: (space, start, end) ranges of Gray-code indices 1..2^k.
        let threads = crate::worker_threads().max(1);
        let mut items: Vec<(usize, u64, u64)> = Vec::new();
        for (s, basis) in spaces.iter().enumerate() {
            let total = 1u64 << basis.len();
            let step = (total / (4 * threads as u64)).max(1 << 12);
            let mut a = 1;
            while a < total {
                let b = (a + step).min(total);
                items.push((s, a, b));
                a = b;
            }
        }
        let stop = AtomicBool::new(false);
        let found: Mutex<BTreeSet<Vec<u64>>> = Mutex::new(BTreeSet::new());
        let seeds = std::sync::atomic::AtomicU64::new(0);
        let next = std::sync::atomic::AtomicUsize::new(0);
        let work = || {
            let mut rows = [0u64; 64];
            loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(s, a, b)) = items.get(k) else { break };
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let basis = &spaces[s];
                let gray = |i: u64| i ^ (i >> 1);
                let g0 = gray(a);
                let mut v = (0..basis.len()).filter(|&t| g0 >> t & 1 == 1).fold(0, |acc, t| acc ^ basis[t]);
                let mut done = 0;
                for i in a..b {
                    if i > a {
                        v ^= basis[(gray(i) ^ gray(i - 1)).trailing_zeros() as usize];
                    }
                    done += 1;
                    let count = self.closure_rows(v, true, &mut rows);
                    if count < self.dim {
                        let ideal = rref(&rows);
                        let mut set = found.lock().expect("poisoned");
                        if set.len() < KEEP {
                            set.insert(ideal);
                        }
                        if first_only || set.len() >= KEEP {
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                    if done & 0xfff == 0 && stop.load(Ordering::Relaxed) {
                        break;
                    }
                }
                seeds.fetch_add(done, Ordering::Relaxed);
            }
        };
        if threads == 1 {
            work();
        } else {
            std::thread::scope(|sc| {
                for _ in 0..threads {
                    sc.spawn(&work);
                }
            });
        }
        let truncated = stop.load(Ordering::Relaxed);
        let ideals: Vec<Vec<u64>> = found.into_inner().expect("poisoned").into_iter().collect();
        Ok(IdealSurvey { ideals, seeds: seeds.into_inner(), strategy, truncated })
    }

    /// Simple iff non-abelian and every seed generates the whole algebra.
    pub fn is_simple(&self, strategy: Strategy) -> Result<SimplicityReport> {
        if self.dim == 0 {
            return Err(Error::pre("simplicity of the zero algebra"));
        }
        if self.is_abelian() {
            let witness = (self.dim > 1).then(|| vec![1u64]);
            return Ok(SimplicityReport { simple: false, witness, seeds: 0, strategy });
        }
        let survey = self.survey(strategy, true)?;
        Ok(SimplicityReport {
            simple: survey.ideals.is_empty(),
            witness: survey.ideals.into_iter().next(),
            seeds: survey.seeds,
            strategy: survey.strategy,
        })
    }
}

impl<S: LieSpace> Algebra<S> {
    /// Bracket table in the echelon basis of `g`; GF(2) only.
    pub fn gf2_table(&self) -> Result<Gf2Table> {
        if self.field().degree() != 1 {
            return Err(Error::UnsupportedField(format!(
                "ideal enumeration runs over GF(2) only, not {}",
                self.field()
            )));
        }
        if self.dim() > 64 {
            return Err(Error::EnvelopeExceeded(format!("dimension {} exceeds 64", self.dim())));
        }
        let to_bits = |c: Vec<u16>| c.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (u64::from(x & 1) << i));
        let b = self.basis();
        let ad = b
            .iter()
            .map(|x| b.iter().map(|y| to_bits(self.subspace().coords(&self.bracket(x, y)).expect("closed"))).collect())
            .collect();
        let torus = self.torus().into_iter().map(|t| to_bits(self.subspace().coords(&t).expect("in g"))).collect();
        Gf2Table::new(ad, 0, vec![0; b.len()], torus)
    }

    /// The subspace of `g` with the given coordinate bitmasks.
    pub fn from_gf2_coords(&self, coords: &[u64]) -> Algebra<S> {
        let d = self.dim();
        let vectors = coords.iter().map(|&c| {
            let cs: Vec<u16> = (0..d).map(|i| (c >> i & 1) as u16).collect();
            self.subspace().combine(&cs)
        });
        let basis = Subspace::span(self.field(), self.space().vector_len(), vectors);
        Algebra::from_closed(self.space().clone(), basis)
    }

    pub fn is_simple(&self) -> Result<SimplicityReport> {
        self.is_simple_with(Strategy::Auto)
    }

    pub fn is_simple_with(&self, strategy: Strategy) -> Result<SimplicityReport> {
        self.gf2_table()?.is_simple(strategy)
    }
}
