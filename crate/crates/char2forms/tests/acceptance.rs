//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! with status 1 if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use char2forms::canon::{albert_canon, reduce_symmetric, sociological_canon, AlbertKind, ClassLabel};
use char2forms::contact::{is_contact, OneFormSpec};
use char2forms::liealg::{o_i, o_pi, o_s, preserver, AlgebraBasis, Strategy};
use char2forms::mat::{standard_form, StandardForm};
use char2forms::oracle::{enumerate_classes, lie_equiv_cluster, Equivalence, Predicate};
use char2forms::superalg::{named_superalgebra, Parity, SuperAlgebra, SuperKind};
use char2forms::{Field, Matrix};
use common::{bits, Gf, Sq, SuperSpan};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn field(m: u32) -> Field {
    Field::new(m).unwrap()
}

fn sq_all(ms: &[Matrix]) -> Vec<Sq> {
    ms.iter().map(Sq::from).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    let size = 1u16 << f.degree();
    let entries = (0..n * n).map(|_| rng.gen_range(0..size)).collect();
    Matrix::from_flat(f, n, n, entries).unwrap()
}

fn random_symmetric(rng: &mut ChaCha8Rng, f: Field, n: usize, alternating: bool) -> Matrix {
    let size = 1u16 << f.degree();
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in i..n {
            let x = if i == j && alternating { 0 } else { rng.gen_range(0..size) };
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

fn oracle_rank(f: Field, m: &Matrix) -> usize {
    let n = m.cols();
    let rows: Vec<Vec<u16>> = (0..m.rows()).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    common::rank(Gf::of(f), &rows)
}

fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, f, n);
        if oracle_rank(f, &m) == n {
            return m;
        }
    }
}

/// `M C M^T` with the reference arithmetic.
fn congruent(gf: Gf, m: &Matrix, c: &Matrix) -> Sq {
    let m = Sq::from(m);
    m.mul(gf, &Sq::from(c)).mul(gf, &m.t())
}

// 1 ------------------------------------------------------------------------

fn symmetric_classification() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for m in [1, 2, 4] {
        let f = field(m);
        let gf = Gf::of(f);
        for n in 2..=8 {
            let mut labels = BTreeSet::new();
            let mut drawn = 0;
            while drawn < 1000 {
                // Half the draws are alternating for even n; uniform draws
                // almost never are once the field is large.
                let alternating = n % 2 == 0 && drawn % 2 == 1;
                let b = random_symmetric(&mut rng, f, n, alternating);
                if oracle_rank(f, &b) < n {
                    continue;
                }
                drawn += 1;
                let r = reduce_symmetric(&b).map_err(|e| format!("GF(2^{m}) n={n}: {e}"))?;
                let ClassLabel::Symmetric(class) = r.label else {
                    return Err(format!("unexpected label {:?}", r.label));
                };
                ensure!(class.r == n, "rank {} for a non-degenerate {n}x{n} form", class.r);
                ensure!(class.fully_isotropic == b.is_zero_diagonal(), "isotropy label wrong for\n{b}");
                ensure!(congruent(gf, &r.witness_m, &b) == Sq::from(&r.canonical), "certificate fails for\n{b}");
                labels.insert(class);
                checked += 1;
            }
            let want = if n % 2 == 0 { 2 } else { 1 };
            ensure!(labels.len() == want, "GF(2^{m}) n={n}: {} labels, expected {want}", labels.len());
        }
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(10), "took {t:?}");
    Ok(format!("{checked} forms, labels 1/2 for odd/even n, all certificates verify, {t:.2?}"))
}

// 2 ------------------------------------------------------------------------

fn oracle_counts() -> Outcome {
    let f = Field::gf2();
    let start = Instant::now();
    let cases = [
        (2, Predicate::NondegNonsym, 1),
        (3, Predicate::NondegNonsym, 3),
        (4, Predicate::NondegNonsym, 8),
        (2, Predicate::NondegSym, 2),
        (3, Predicate::NondegSym, 1),
        (4, Predicate::NondegSym, 2),
    ];
    let mut parts = Vec::new();
    for (n, pred, want) in cases {
        let c = enumerate_classes(f, n, pred, Equivalence::Congruence).map_err(|e| e.to_string())?;
        ensure!(c.count == want, "n={n} {}: {} classes, expected {want}", pred.name(), c.count);
        // Reference: orbits of the whole group acting on all matrices.
        let classes = bits::orbits(n, &[0]);
        let keep = |b: u16| {
            let sym = bits::is_symmetric(b, n);
            bits::rank(b, n) == n && if pred == Predicate::NondegSym { sym } else { !sym }
        };
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for (&b, &c) in &classes {
            if keep(b) {
                *sizes.entry(c).or_default() += 1;
            }
        }
        let mut ref_sizes: Vec<usize> = sizes.values().copied().collect();
        ref_sizes.sort_unstable();
        let mut got = c.orbit_sizes.clone();
        got.sort_unstable();
        ensure!(got == ref_sizes, "n={n} {}: orbit sizes {got:?}, brute force {ref_sizes:?}", pred.name());
        if n == 2 && pred == Predicate::NondegNonsym {
            ensure!(got == vec![2], "n=2 class has {got:?} matrices");
        }
        parts.push(format!("{n}:{}", c.count));
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(600), "took {t:?}");
    Ok(format!("nonsym 1/3/8, sym 2/1/2, orbit sizes match the full-group brute force ({}), {t:.2?}", parts.join(" ")))
}

// 3 ------------------------------------------------------------------------

fn named_four_by_four() -> Vec<Matrix> {
    let rows = [
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 1, 1]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [1, 0, 0, 0], [1, 1, 0, 1]],
        [[0, 0, 0, 1], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 0]],
    ];
    rows.iter().map(|r| Matrix::from_fn(Field::gf2(), 4, 4, |i, j| r[i][j])).collect()
}

fn clustering() -> Outcome {
    let f = Field::gf2();
    let gf = Gf::of(f);
    let census = enumerate_classes(f, 4, Predicate::NondegNonsym, Equivalence::Congruence).map_err(|e| e.to_string())?;
    let reps = &census.representatives;
    let cl = lie_equiv_cluster(reps).map_err(|e| e.to_string())?;
    ensure!(cl.count == 5, "{} clusters", cl.count);

    // Which census representative is B_i.
    let classes = bits::orbits(4, &[0]);
    let rep_of = |b: &Matrix| {
        let c = classes[&bits::pack(b)];
        reps.iter().position(|r| classes[&bits::pack(r)] == c).unwrap()
    };
    let named: Vec<usize> = named_four_by_four().iter().map(rep_of).collect();
    let distinct: BTreeSet<usize> = named.iter().copied().collect();
    ensure!(distinct.len() == 8, "B1..B8 fall into {} classes", distinct.len());
    let cluster_of = |i: usize| cl.clusters.iter().position(|c| c.contains(&i)).unwrap();
    for (a, b) in [(0, 3), (2, 6), (4, 5)] {
        ensure!(cluster_of(named[a]) == cluster_of(named[b]), "B{} and B{} are separated", a + 1, b + 1);
    }
    // Fingerprint dimensions against the reference preserver.
    for r in reps {
        let lib = preserver(r).map_err(|e| e.to_string())?;
        ensure!(lib.dim() == common::preserver(gf, &Sq::from(r)).len(), "preserver dimension of\n{r}");
    }

    let three = enumerate_classes(f, 3, Predicate::NondegNonsym, Equivalence::Congruence).map_err(|e| e.to_string())?;
    for r in &three.representatives {
        let g = common::preserver(gf, &Sq::from(r));
        ensure!(g.len() == 2, "n=3 preserver of dim {}", g.len());
        ensure!(common::derived(gf, &g).is_empty(), "n=3 preserver is not abelian");
        ensure!(common::in_span(gf, &g, &Sq::identity(3)), "1_3 not in the preserver");
        let lib = preserver(r).map_err(|e| e.to_string())?;
        ensure!(lib.dim() == 2 && lib.is_abelian() && lib.contains_matrix(&Matrix::identity(f, 3)), "library preserver differs");
    }
    let sizes: Vec<usize> = cl.clusters.iter().map(Vec::len).collect();
    Ok(format!("5 clusters {sizes:?}, (B1,B4) (B3,B7) (B5,B6) together; n=3 preservers 2-dim abelian with 1_3"))
}

// 4 ------------------------------------------------------------------------

fn sociological() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0usize;
    for m in [1, 2] {
        let f = field(m);
        let gf = Gf::of(f);
        for n in 2..=8 {
            let mut samples = Vec::new();
            for k in 0..120 {
                let s = k % (n / 2 + 1);
                let mut z = Matrix::zeros(f, n, n);
                for i in 0..s {
                    z.set(2 * i, 2 * i + 1, 1);
                }
                let mm = random_invertible(&mut rng, f, n);
                let b = Sq::from(&mm).mul(gf, &Sq::from(&z)).mul(gf, &Sq::from(&mm).t());
                let b = b.add(&Sq::from(&random_symmetric(&mut rng, f, n, false))).to_matrix(f);
                samples.push(b);
            }
            let mut results = Vec::new();
            for b in &samples {
                let r = sociological_canon(b).map_err(|e| e.to_string())?;
                let rank = oracle_rank(f, &(b + &b.transpose()));
                let ClassLabel::Sociological { rank: label_rank, .. } = r.label else {
                    return Err(format!("unexpected label {:?}", r.label));
                };
                ensure!(label_rank == rank, "label rank {label_rank}, rank(B+B^T) = {rank}");
                let a = Sq::from(b).add(&congruent(gf, &r.witness_m, &r.canonical));
                ensure!(a == a.t(), "offset is not symmetric for\n{b}");
                if let Some(wa) = &r.witness_a {
                    ensure!(Sq::from(wa) == a, "reported offset differs from B - M C M^T");
                }
                results.push((r, rank));
            }
            let labels: BTreeSet<String> = results.iter().map(|(r, _)| format!("{:?}", r.label)).collect();
            ensure!(labels.len() == n / 2 + 1, "GF(2^{m}) n={n}: {} labels", labels.len());
            for (i, (ri, ranki)) in results.iter().enumerate() {
                for (j, (rj, rankj)) in results.iter().enumerate().skip(i + 1) {
                    pairs += 1;
                    let same = ri.canonical == rj.canonical;
                    ensure!(same == (ranki == rankj), "pair ({i}, {j}) at n={n}");
                    if same && j == i + 1 {
                        // B_j = N B_i N^T + symmetric, N = M_j M_i^{-1}.
                        let inv = ri.witness_m.inverse().ok_or("singular witness")?;
                        let nn = Sq::from(&rj.witness_m).mul(gf, &Sq::from(&inv));
                        let moved = nn.mul(gf, &Sq::from(&samples[i])).mul(gf, &nn.t());
                        let d = Sq::from(&samples[j]).add(&moved);
                        ensure!(d == d.t(), "composed certificate fails at n={n}");
                    }
                }
            }
        }
    }
    Ok(format!("labels take ⌊n/2⌋+1 values, equivalence iff equal rank over {pairs} pairs, certificates verify"))
}

// 5 ------------------------------------------------------------------------

fn block(n: usize, a: &Sq, b: &Sq, c: &Sq, d: &Sq) -> Sq {
    let k = a.n;
    let mut s = Sq::zero(n);
    for i in 0..k {
        for j in 0..k {
            s.a[i * n + j] = a.at(i, j);
            s.a[i * n + k + j] = b.at(i, j);
            s.a[(k + i) * n + j] = c.at(i, j);
            s.a[(k + i) * n + k + j] = d.at(i, j);
        }
    }
    s
}

/// Spans of `[[A, B], [C, A^T]]` with `B, C` in ZD(k), without and with
/// `tr A = 0`.
fn pi_shape_spans(k: usize) -> (Vec<Sq>, Vec<Sq>) {
    let z = Sq::zero(k);
    let n = 2 * k;
    let mut m2 = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                m2.push(block(n, &Sq::unit(k, i, j), &z, &z, &Sq::unit(k, j, i)));
                let sym = Sq::unit(k, i, j).add(&Sq::unit(k, j, i));
                m2.push(block(n, &z, &sym, &z, &z));
                m2.push(block(n, &z, &z, &sym, &z));
                let h = Sq::unit(k, i, i).add(&Sq::unit(k, j, j));
                m2.push(block(n, &h, &z, &z, &h));
            }
        }
    }
    let mut m1 = m2.clone();
    m1.push(block(n, &Sq::unit(k, 0, 0), &z, &z, &Sq::unit(k, 0, 0)));
    (m1, m2)
}

fn pi_n(n: usize) -> Sq {
    Sq::from(&standard_form(StandardForm::Pi, n, Field::gf2()).unwrap())
}

fn lib_terms(g: &AlgebraBasis, depth: usize) -> Vec<Vec<Sq>> {
    let mut out = vec![sq_all(&g.matrices())];
    out.extend(g.derived_series(depth).terms.iter().map(|t| sq_all(&t.matrices())));
    out
}

fn super_lib_terms(g: &SuperAlgebra, depth: usize) -> Vec<SuperSpan> {
    let span = |a: &SuperAlgebra| SuperSpan { even: sq_all(&a.even_matrices()), odd: sq_all(&a.odd_matrices()) };
    let mut out = vec![span(g)];
    out.extend(g.derived_series(depth).terms.iter().map(span));
    out
}

fn super_terms(gf: Gf, g: &SuperSpan, depth: usize) -> Vec<SuperSpan> {
    let mut out = vec![g.clone()];
    for _ in 0..depth {
        let next = common::super_derived(gf, out.last().unwrap());
        out.push(next);
    }
    out
}

fn same_super(gf: Gf, a: &SuperSpan, b: &SuperSpan) -> bool {
    common::same_span(gf, &a.even, &b.even) && common::same_span(gf, &a.odd, &b.odd)
}

fn derived_tables() -> Outcome {
    let mut notes = Vec::new();
    for m in [1, 2] {
        let f = field(m);
        let gf = Gf::of(f);
        for n in 3..=6 {
            let b = Sq::identity(n);
            let want = vec![n * (n + 1) / 2, n * (n - 1) / 2, n * (n - 1) / 2];
            let reference = common::derived_dims(gf, &common::preserver(gf, &b), 2);
            ensure!(reference == want, "o_I({n}) reference dims {reference:?}");
            let lib: Vec<usize> = lib_terms(&o_i(n, f).unwrap(), 2).iter().map(Vec::len).collect();
            ensure!(lib == want, "o_I({n}) over GF(2^{m}): {lib:?}, expected {want:?}");
        }
        let want = vec![10, 6, 5, 1, 0];
        let reference = common::derived_dims(gf, &common::preserver(gf, &pi_n(4)), 4);
        let lib: Vec<usize> = lib_terms(&o_pi(4, f).unwrap(), 4).iter().map(Vec::len).collect();
        ensure!(reference == want && lib == want, "o_Π(4): reference {reference:?}, library {lib:?}");

        for k in [3, 4] {
            let (m1, m2) = pi_shape_spans(k);
            let reference = {
                let g = common::preserver(gf, &pi_n(2 * k));
                let g1 = common::derived(gf, &g);
                let g2 = common::derived(gf, &g1);
                let g3 = common::derived(gf, &g2);
                vec![g1, g2, g3]
            };
            let lib = lib_terms(&o_pi(2 * k, f).unwrap(), 3);
            for (i, want) in [&m1, &m2, &m2].into_iter().enumerate() {
                ensure!(common::same_span(gf, &reference[i], want), "o_Π^({})({}) reference differs from the lemma", i + 1, 2 * k);
                ensure!(common::same_span(gf, &lib[i + 1], want), "o_Π^({})({}) differs from the lemma", i + 1, 2 * k);
            }
        }

        // oo_II(1|1).
        let ref_ii = common::super_preserver(gf, &Sq::identity(2), 1);
        let lib_ii = super_lib_terms(&named_superalgebra(SuperKind::OoII, 1, 1, f).unwrap(), 3);
        let ref_terms = super_terms(gf, &ref_ii, 3);
        let dims: Vec<usize> = ref_terms.iter().map(SuperSpan::total).collect();
        ensure!(dims == [3, 2, 1, 0], "oo_II(1|1) reference {dims:?}");
        let lib_dims: Vec<usize> = lib_ii.iter().map(SuperSpan::total).collect();
        ensure!(lib_dims == dims, "oo_II(1|1) library {lib_dims:?}");
        let display1 = SuperSpan { even: vec![Sq::identity(2)], odd: vec![Sq::unit(2, 0, 1).add(&Sq::unit(2, 1, 0))] };
        let display2 = SuperSpan { even: vec![Sq::identity(2)], odd: vec![] };
        ensure!(same_super(gf, &lib_ii[1], &display1) && same_super(gf, &lib_ii[2], &display2), "oo_II(1|1) spans");

        // pe(2): the same block shape as o_Π(4) with C, D odd.
        let ref_pe = common::super_preserver(gf, &pi_n(4), 2);
        let ref_terms = super_terms(gf, &ref_pe, 4);
        let lib_pe = super_lib_terms(&named_superalgebra(SuperKind::Pe, 2, 2, f).unwrap(), 4);
        let dims: Vec<usize> = ref_terms.iter().map(SuperSpan::total).collect();
        let lib_dims: Vec<usize> = lib_pe.iter().map(SuperSpan::total).collect();
        ensure!(dims == [10, 6, 5, 1, 0] && lib_dims == dims, "pe(2): reference {dims:?}, library {lib_dims:?}");
        let (p1, p2) = pi_shape_spans(2);
        let split = |ms: &[Sq]| {
            let (even, odd): (Vec<Sq>, Vec<Sq>) = ms.iter().cloned().partition(|x| (0..4).all(|i| (0..4).all(|j| (i < 2) == (j < 2) || x.at(i, j) == 0)));
            SuperSpan { even, odd }
        };
        let scalars = SuperSpan { even: vec![Sq::identity(4)], odd: vec![] };
        for (i, want) in [split(&p1), split(&p2), scalars].iter().enumerate() {
            ensure!(same_super(gf, &lib_pe[i + 1], want) && same_super(gf, &ref_terms[i + 1], want), "pe^({})(2) span", i + 1);
        }

        // oo_ΠΠ(2|2), whose display uses X B + B X^T = 0: compare transposes.
        let bpp = block(4, &pi_n(2), &Sq::zero(2), &Sq::zero(2), &pi_n(2));
        let ref_pp = common::super_preserver(gf, &bpp, 2);
        let ref_terms = super_terms(gf, &ref_pp, 4);
        let lib_pp = super_lib_terms(&named_superalgebra(SuperKind::OoPiPi, 2, 2, f).unwrap(), 4);
        let dims: Vec<usize> = ref_terms.iter().map(SuperSpan::total).collect();
        let lib_dims: Vec<usize> = lib_pp.iter().map(SuperSpan::total).collect();
        ensure!(dims == [10, 6, 5, 1, 0] && lib_dims == dims, "oo_ΠΠ(2|2): reference {dims:?}, library {lib_dims:?}");
        let z = Sq::zero(2);
        let pi2 = pi_n(2);
        let odd_part: Vec<Sq> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| {
                let c = Sq::unit(2, i, j);
                let upper = pi2.mul(gf, &c.t()).mul(gf, &pi2);
                block(4, &z, &upper, &c, &z).t()
            })
            .collect();
        let id2 = Sq::identity(2);
        let d1 = SuperSpan { even: vec![block(4, &id2, &z, &z, &z), block(4, &z, &z, &z, &id2)], odd: odd_part.clone() };
        let d2 = SuperSpan { even: vec![Sq::identity(4)], odd: odd_part };
        let d3 = SuperSpan { even: vec![Sq::identity(4)], odd: vec![] };
        for (i, want) in [d1, d2, d3].iter().enumerate() {
            ensure!(same_super(gf, &lib_pp[i + 1], want) && same_super(gf, &ref_terms[i + 1], want), "oo_ΠΠ^({})(2|2) span", i + 1);
        }
        ensure!(lib_pp[4].total() == 0, "oo_ΠΠ^(4)(2|2) is not zero");
        notes.push(format!("GF(2^{m})"));
    }
    Ok(format!("o_I(3..6), o_Π(4), o_Π^(i)(6, 8) spans, oo_II(1|1), pe(2), oo_ΠΠ(2|2) over {}", notes.join(", ")))
}

// 6 ------------------------------------------------------------------------

fn non_isomorphism() -> Outcome {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for m in [1, 2] {
        let f = field(m);
        let gf = Gf::of(f);
        for k in 1..=3 {
            let n = 2 * k;
            let mut inter = Vec::new();
            let mut prints = Vec::new();
            for (name, b) in [("o_I", Sq::identity(n)), ("o_S", Sq::from(&standard_form(StandardForm::S, n, f).unwrap()))] {
                let g = common::preserver(gf, &b);
                let z = common::center(gf, &g);
                let d = common::derived(gf, &g);
                let both: Vec<Sq> = z.iter().chain(&d).cloned().collect();
                let dim = z.len() + d.len() - common::span_dim(gf, &both);
                let lib = if name == "o_I" { o_i(n, f) } else { o_s(n, f) }.unwrap();
                let fp = lib.fingerprint();
                if fp.0[5] != dim {
                    return Err(format!("{name}({n}) fingerprint says {} for Z ∩ g^(1), reference {dim}", fp.0[5]));
                }
                inter.push(dim);
                let series = lib.derived_series(2);
                prints.push([fp, series.terms[0].fingerprint(), series.terms[1].fingerprint()]);
            }
            let levels_differ = (0..3).filter(|&i| prints[0][i] != prints[1][i]).count();
            rows.push(format!("GF(2^{m}) k={k}: Z∩g' {}/{}, fingerprints differ at {levels_differ}/3 levels", inter[0], inter[1]));
            if inter[0] != 0 || inter[1] < 1 || levels_differ != 3 {
                failures.push(rows.last().unwrap().clone());
            }
        }
    }
    if failures.is_empty() {
        Ok(rows.join("; "))
    } else {
        Err(format!("{} (all: {})", failures.join("; "), rows.join("; ")))
    }
}

// 7 ------------------------------------------------------------------------

fn simplicity() -> Outcome {
    let f = Field::gf2();
    let gf = Gf::of(f);
    let limit = Duration::from_secs(60);
    let mut notes = Vec::new();
    let lie = |name: &str, g: AlgebraBasis| -> Outcome {
        let start = Instant::now();
        let strategy = if g.dim() <= char2forms::liealg::EXHAUSTIVE_ENVELOPE { Strategy::Exhaustive } else { Strategy::Weights };
        let r = g.is_simple_with(strategy).map_err(|e| e.to_string())?;
        ensure!(r.simple, "{name} reported not simple");
        let t = start.elapsed();
        ensure!(t < limit, "{name} took {t:?}");
        Ok(format!("{name} dim {} simple ({:?}, {t:.1?})", g.dim(), r.strategy))
    };
    let derived = |g: AlgebraBasis, i: usize| g.derived_series(i).terms.pop().unwrap();
    notes.push(lie("o_I^(1)(3)", derived(o_i(3, f).unwrap(), 1))?);
    notes.push(lie("o_I^(1)(5)", derived(o_i(5, f).unwrap(), 1))?);
    notes.push(lie("o_Π^(2)(6)", derived(o_pi(6, f).unwrap(), 2))?);

    let sup = |name: &str, g: SuperAlgebra| -> Outcome {
        let start = Instant::now();
        let r = g.is_simple_with(Strategy::Exhaustive).map_err(|e| e.to_string())?;
        ensure!(r.simple, "{name} reported not simple");
        let t = start.elapsed();
        ensure!(t < limit, "{name} took {t:?}");
        Ok(format!("{name} dim {:?} simple ({t:.1?})", g.dim()))
    };
    let sderived = |g: SuperAlgebra, i: usize| g.derived_series(i).terms.pop().unwrap();
    notes.push(sup("oo_II^(1)(2|1)", sderived(named_superalgebra(SuperKind::OoII, 2, 1, f).unwrap(), 1))?);
    notes.push(sup("oo_ΠΠ^(2)(4|2)", sderived(named_superalgebra(SuperKind::OoPiPi, 4, 2, f).unwrap(), 2))?);

    // Unique nontrivial ideal: the closure of every seed is either the
    // scalars or everything, and the quotient is simple.
    {
        let start = Instant::now();
        let g = derived(o_pi(8, f).unwrap(), 2);
        let t = g.gf2_table().map_err(|e| e.to_string())?;
        let survey = t.survey(Strategy::Weights, false).map_err(|e| e.to_string())?;
        ensure!(survey.ideals.len() == 1 && !survey.truncated, "o_Π^(2)(8): {} ideals", survey.ideals.len());
        let ideal = sq_all(&g.from_gf2_coords(&survey.ideals[0]).matrices());
        ensure!(common::same_span(gf, &ideal, &[Sq::identity(8)]), "o_Π^(2)(8) ideal is not the scalars");
        let q = t.quotient(&survey.ideals[0]).map_err(|e| e.to_string())?;
        ensure!(q.is_simple(Strategy::Weights).map_err(|e| e.to_string())?.simple, "o_Π^(2)(8)/Z not simple");
        let el = start.elapsed();
        ensure!(el < limit, "o_Π^(2)(8) took {el:?}");
        notes.push(format!("o_Π^(2)(8) dim {} ideal span{{1}} only, quotient simple (weights, {el:.1?})", g.dim()));
    }
    {
        let start = Instant::now();
        let g = sderived(named_superalgebra(SuperKind::OoII, 3, 1, f).unwrap(), 1);
        let t = g.gf2_table().map_err(|e| e.to_string())?;
        let survey = t.survey(Strategy::Exhaustive, false).map_err(|e| e.to_string())?;
        ensure!(survey.ideals.len() == 1, "oo_II^(1)(3|1): {} ideals", survey.ideals.len());
        let ideal = g.from_gf2_coords(&survey.ideals[0]);
        ensure!(
            ideal.odd_matrices().is_empty() && common::same_span(gf, &sq_all(&ideal.even_matrices()), &[Sq::identity(4)]),
            "oo_II^(1)(3|1) ideal is not the scalars"
        );
        let q = t.quotient(&survey.ideals[0]).map_err(|e| e.to_string())?;
        ensure!(q.is_simple(Strategy::Exhaustive).map_err(|e| e.to_string())?.simple, "oo_II^(1)(3|1)/Z not simple");
        let el = start.elapsed();
        notes.push(format!("oo_II^(1)(3|1) dim {:?} ideal span{{1}} only, quotient simple ({el:.1?})", g.dim()));
    }
    Ok(notes.join("; "))
}

// 8 ------------------------------------------------------------------------

fn superalgebras(f: Field) -> Vec<(String, SuperAlgebra)> {
    let grid = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3), (3, 2), (4, 2), (2, 4)];
    let mut out = Vec::new();
    for kind in SuperKind::ALL {
        let dims: Vec<(usize, usize)> =
            if kind == SuperKind::Pe { vec![(1, 1), (2, 2), (3, 3)] } else { grid.to_vec() };
        for (n0, n1) in dims {
            let Ok(g) = named_superalgebra(kind, n0, n1, f) else { continue };
            for (i, t) in g.derived_series(3).terms.into_iter().enumerate() {
                out.push((format!("{}^({})({n0}|{n1})", kind.name(), i + 1), t));
            }
            out.push((format!("{}({n0}|{n1})", kind.name()), g));
        }
    }
    out
}

fn squaring() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    let mut checks = 0usize;
    for m in [1, 2, 4] {
        let f = field(m);
        let gf = Gf::of(f);
        let coefficients: Vec<u16> = (0..100).map(|_| rng.gen_range(0..1u16 << m)).collect();
        for (name, g) in superalgebras(f) {
            let even = sq_all(&g.even_matrices());
            let odd = sq_all(&g.odd_matrices());
            for x in &odd {
                let x2 = x.mul(gf, x);
                for &a in &coefficients {
                    let ax = x.scale(gf, a);
                    ensure!(ax.mul(gf, &ax) == x2.scale(gf, gf.mul(a, a)), "{name} over GF(2^{m}): (ax)^2 != a^2 x^2");
                }
                ensure!(common::bracket(gf, x, &x2).is_zero(), "{name} over GF(2^{m}): [x, x^2] != 0");
                for y in even.iter().chain(&odd) {
                    let lhs = common::bracket(gf, &x2, y);
                    let rhs = common::bracket(gf, x, &common::bracket(gf, x, y));
                    ensure!(lhs == rhs, "{name} over GF(2^{m}): [x^2, y] != [x, [x, y]]");
                    checks += 1;
                }
            }
            ensure!(g.squaring_axioms(&coefficients).holds(), "{name} over GF(2^{m}): library check fails");
            count += 1;
        }
    }
    Ok(format!("{count} superalgebra bases over GF(2), GF(4), GF(16), {checks} pairs, 100 coefficients per field"))
}

// 9 ------------------------------------------------------------------------

fn socio_contact(b: &Matrix) -> bool {
    let ClassLabel::Sociological { n, rank } = sociological_canon(b).unwrap().label else { unreachable!() };
    n == rank
}

fn albert_contact(b: &Matrix) -> bool {
    let ClassLabel::Albert(c) = albert_canon(b).unwrap().label else { unreachable!() };
    c.n == 2 * c.r || (c.n == 2 * c.r + 1 && c.kind == AlbertKind::YTilde)
}

fn contact() -> Outcome {
    let f = Field::gf2();
    let mut checked = 0usize;
    let all = |n: usize| -> Vec<Matrix> { bits::all(n).map(|b| bits::unpack(b, n)).collect() };
    let mut mats: Vec<Vec<Matrix>> = vec![vec![Matrix::zeros(f, 0, 0)]];
    for n in 1..=4 {
        mats.push(all(n));
    }
    for n in 1..=4 {
        for b in &mats[n] {
            let even = is_contact(&OneFormSpec::all_even(b.clone()).unwrap());
            ensure!(even.contact == socio_contact(b), "even variables:\n{b}");
            ensure!(even.contact == even.expression.is_some(), "expression mismatch");
            let odd = is_contact(&OneFormSpec::all_odd(b.clone()).unwrap());
            ensure!(odd.contact == albert_contact(b), "odd variables:\n{b}");
            checked += 2;
        }
    }
    // Mixed variables with x_0 even: B is block diagonal.
    for n0 in 1..=3 {
        for n1 in 1..=(4 - n0) {
            for b0 in &mats[n0] {
                for b1 in &mats[n1] {
                    let b = Matrix::block_diag(f, &[b0, b1]);
                    let v = is_contact(&OneFormSpec::mixed(Parity::Even, n0, b).unwrap());
                    ensure!(v.contact == (socio_contact(b0) && albert_contact(b1)), "mixed ({n0}|{n1}):\n{b0}\n{b1}");
                    checked += 1;
                }
            }
        }
    }
    // x_0 odd: B is block off-diagonal and contact means rank(B + B^T) = n
    // with n0 = n1.
    for n0 in 1..=3 {
        for n1 in 1..=(4 - n0) {
            for c in 0u32..1 << (2 * n0 * n1) {
                let mut b = Matrix::zeros(f, n0 + n1, n0 + n1);
                for i in 0..n0 {
                    for j in 0..n1 {
                        b.set(i, n0 + j, (c >> (i * n1 + j) & 1) as u16);
                        b.set(n0 + j, i, (c >> (n0 * n1 + j * n0 + i) & 1) as u16);
                    }
                }
                let v = is_contact(&OneFormSpec::mixed(Parity::Odd, n0, b.clone()).unwrap());
                ensure!(v.contact == (n0 == n1 && socio_contact(&b)), "x_0 odd ({n0}|{n1}):\n{b}");
                checked += 1;
            }
        }
    }
    for n in 2..=8 {
        let v = is_contact(&OneFormSpec::all_odd(Matrix::identity(f, n)).unwrap());
        ensure!(!v.contact, "dx_0 + Σ x_i dx_i reported contact for n = {n}");
    }
    Ok(format!("{checked} one-forms agree with the sociological/Albert labels; dx_0 + Σ x_i dx_i non-contact for n = 2..8"))
}

// 10 -----------------------------------------------------------------------

fn albert() -> Outcome {
    let f = Field::gf2();
    let mut checked = 0usize;
    let mut neither = 0usize;
    let mut arf = 0usize;
    let mut both = 0usize;
    let mut label_failures = Vec::new();
    for n in 1..=4 {
        let zd = bits::zd(n);
        let classes = bits::orbits(n, &zd);
        let mut label_class: HashMap<String, usize> = HashMap::new();
        let mut class_label: HashMap<usize, String> = HashMap::new();
        for b in bits::all(n) {
            let bm = bits::unpack(b, n);
            let r = albert_canon(&bm).map_err(|e| e.to_string())?;
            let a = r.witness_a.as_ref().ok_or("missing offset")?;
            let pa = bits::pack(a);
            ensure!(bits::is_symmetric(pa, n) && bits::zero_diagonal(pa, n), "offset not in ZD for\n{bm}");
            let moved = bits::mul(bits::mul(bits::pack(&r.witness_m), bits::pack(&r.canonical), n), bits::t(bits::pack(&r.witness_m), n), n);
            ensure!(moved ^ pa == b, "certificate fails for\n{bm}");
            ensure!(bits::rank(bits::pack(&r.witness_m), n) == n, "singular witness");
            let label = format!("{:?}", r.label);
            let c = classes[&b];
            ensure!(classes[&bits::pack(&r.canonical)] == c, "canonical form outside the orbit of\n{bm}");
            if *label_class.entry(label.clone()).or_insert(c) != c || *class_label.entry(c).or_insert(label.clone()) != label {
                label_failures.push(label);
            }
            // Y(n, r) and Ỹ(n, r) for r = rank(B + B^T) / 2.
            let rr = bits::rank(b ^ bits::t(b, n), n) / 2;
            let y = bits::pack(&standard_form(StandardForm::Y(rr), n, f).unwrap());
            let in_y = classes[&y] == c;
            let in_yt = 2 * rr < n && classes[&bits::pack(&standard_form(StandardForm::Ytilde(rr), n, f).unwrap())] == c;
            match (in_y, in_yt) {
                (false, false) => neither += 1,
                (true, true) => both += 1,
                _ => {}
            }
            if let ClassLabel::Albert(cl) = r.label {
                if cl.kind == AlbertKind::YArf {
                    arf += 1;
                }
            }
            checked += 1;
        }
    }
    ensure!(label_failures.is_empty(), "labels disagree with brute-force orbits: {label_failures:?}");
    let summary = format!(
        "{checked} matrices (n ≤ 4): certificates verify, labels match the brute-force orbits; \
         {neither} lie in neither Y(n,r) nor Ỹ(n,r), {both} in both, {arf} labelled YArf"
    );
    if neither > 0 || both > 0 {
        Err(format!("exactly-one-of Y/Ỹ fails: {summary}"))
    } else {
        Ok(summary)
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("symmetric classification", symmetric_classification),
        ("orbit census counts", oracle_counts),
        ("Lie-equivalence clustering", clustering),
        ("sociological equivalence", sociological),
        ("derived-series tables", derived_tables),
        ("non-isomorphism invariant", non_isomorphism),
        ("simplicity certificates", simplicity),
        ("squaring axioms", squaring),
        ("contact classification", contact),
        ("Albert canonicalization", albert),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({t:.1?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name} ({t:.1?}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
