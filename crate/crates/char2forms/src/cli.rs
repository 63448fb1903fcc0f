//! Command-line front end.
//!
//! Every subcommand prints one JSON document (or a plain-text rendering of
//! it with `--out text`). Exit status is 0 on success, 1 on usage, I/O or
//! parse errors and 2 on domain errors. Canonical forms are re-verified
//! before they are printed.
//!
//! Matrices are read from files in the text format of [`crate::mat`]; `-`
//! reads standard input and an argument containing `;` is taken as the
//! file contents with `;` for newlines, e.g. `--matrix "2 1;0 1;1 0"`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{
    albert_canon, equiv_symmetric, reduce_symmetric, sociological_canon, super_even_canon, super_odd_nonsym_canon,
    super_odd_sym_canon, CanonResult, ClassLabel, Relation,
};
use crate::contact::{is_contact, OneFormSpec};
use crate::error::{Error, Result};
use crate::ff::Field;
use crate::liealg::{o_i, o_pi, o_s, preserver, AlgebraBasis, Strategy};
use crate::mat::{parse_matrix, Matrix};
use crate::oracle::{enumerate_classes, lie_equiv_cluster, Equivalence, Predicate};
use crate::superalg::{named_superalgebra, super_preserver, Parity, SuperAlgebra, SuperKind, SuperMatrix};

#[derive(Parser, Debug)]
#[command(name = "char2forms", version, about = "Bilinear forms and their Lie (super)algebras over GF(2^m)")]
pub struct Cli {
    /// Output format.
    #[arg(long = "out", value_enum, default_value_t = OutFormat::Json, global = true)]
    pub out: OutFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    Weights,
}

#[derive(Args, Debug)]
pub struct MatrixArg {
    /// Field `gf2_m`; must agree with the matrix header when both are given.
    #[arg(long)]
    pub field: Option<String>,
    /// Matrix file, `-` for stdin, or inline text with `;` line breaks.
    #[arg(long)]
    pub matrix: String,
}

/// A matrix or a named algebra such as `oI1` (the first derived algebra of
/// `o_I`) or `ooPiPi2`.
#[derive(Args, Debug)]
pub struct AlgebraArg {
    #[arg(long)]
    pub field: Option<String>,
    /// Form whose preserver is taken.
    #[arg(long, conflicts_with = "algebra")]
    pub matrix: Option<String>,
    /// oI, oS, oPi, ooII, ooIPi, ooPiI, ooPiPi or pe, optionally followed by
    /// a derived level.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Size for oI, oS, oPi; k for pe.
    #[arg(long)]
    pub n: Option<usize>,
    /// Superdimension `n0,n1`.
    #[arg(long)]
    pub sdim: Option<String>,
    /// Parity of a super form given by `--matrix`.
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form of a symmetric matrix under congruence.
    Canon(MatrixArg),
    /// Congruence of two symmetric matrices, with a witness.
    Equiv {
        #[command(flatten)]
        first: MatrixArg,
        #[arg(long)]
        matrix2: String,
    },
    /// Basis of a preserver or named algebra.
    Preserver(AlgebraArg),
    /// Dimensions of the derived series.
    Derived {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Center of an algebra.
    Center(AlgebraArg),
    /// Simplicity over GF(2) by ideal enumeration.
    Simple {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// List every distinct ideal generated by one element.
        #[arg(long)]
        survey: bool,
    },
    /// Isomorphism invariants of an algebra.
    Fingerprint(AlgebraArg),
    /// Canonical form under the sociological equivalence.
    Socio(MatrixArg),
    /// Canonical form under the quadratic (Albert) equivalence.
    Albert(MatrixArg),
    /// Canonical form of a homogeneous super form.
    SuperCanon {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        sdim: String,
        #[arg(long, value_enum)]
        parity: ParityArg,
    },
    /// Preserver of a homogeneous super form or a named superalgebra.
    SuperPreserver(AlgebraArg),
    /// Derived series of a superalgebra, squares of odd elements included.
    SuperDerived {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Contactness of dx_0 + Σ B_ij x_i dx_j.
    Contact {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Numbers of even and odd variables besides x_0; all even by default.
        #[arg(long)]
        sdim: Option<String>,
        /// Parity of x_0.
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
    },
    /// Orbit census over GF(2).
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "all")]
        predicate: String,
        #[arg(long = "equiv", default_value = "congruence")]
        equivalence: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Groups forms by the invariants of their preservers.
    Cluster {
        /// Forms to cluster; without any, the census representatives.
        #[arg(long)]
        matrix: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "nondeg-nonsym")]
        predicate: String,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(value) => {
            let text = match cli.out {
                OutFormat::Json => serde_json::to_string_pretty(&value).expect("values serialize") + "\n",
                OutFormat::Text => render_text(&value),
            };
            match stdout.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if arg.contains(';') {
        Ok(arg.replace(';', "\n"))
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn load_matrix(arg: &str, field: Option<&str>) -> Result<Matrix> {
    let m = parse_matrix(&read_source(arg)?)?;
    if let Some(spec) = field {
        let f = Field::parse(spec)?;
        if f != m.field() {
            return Err(Error::FieldMismatch(f.degree(), m.field().degree()));
        }
    }
    Ok(m)
}

fn field_or_default(field: Option<&str>) -> Result<Field> {
    field.map_or(Ok(Field::gf2()), Field::parse)
}

fn parse_sdim(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::parse(0, format!("bad superdimension {s:?}, expected n0,n1"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// Splits `ooPiPi2` into the kind and the derived level.
fn split_name(name: &str) -> Result<(&str, usize)> {
    let cut = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (kind, level) = name.split_at(cut);
    let level = if level.is_empty() {
        0
    } else {
        level.parse().map_err(|_| Error::param(format!("bad derived level in {name:?}")))?
    };
    Ok((kind, level))
}

fn super_kind(kind: &str) -> Option<SuperKind> {
    SuperKind::ALL.into_iter().find(|k| k.name() == kind)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::param(format!("missing --{flag}")))
}

fn lie_algebra(arg: &AlgebraArg) -> Result<AlgebraBasis> {
    if let Some(path) = &arg.matrix {
        return preserver(&load_matrix(path, arg.field.as_deref())?);
    }
    let field = field_or_default(arg.field.as_deref())?;
    let name = need(arg.algebra.as_deref(), "matrix or --algebra")?;
    let (kind, level) = split_name(name)?;
    if super_kind(kind).is_some() {
        let g = super_algebra(arg)?;
        return Ok(g.forgetful());
    }
    let n = need(arg.n, "n")?;
    let g = match kind {
        "oI" => o_i(n, field)?,
        "oS" => o_s(n, field)?,
        "oPi" => o_pi(n, field)?,
        _ => return Err(Error::param(format!("unknown algebra {name:?}"))),
    };
    Ok(if level == 0 { g } else { g.derived_series(level).terms.pop().expect("level >= 1") })
}

fn super_algebra(arg: &AlgebraArg) -> Result<SuperAlgebra> {
    if let Some(path) = &arg.matrix {
        let m = load_matrix(path, arg.field.as_deref())?;
        let (n0, n1) = parse_sdim(need(arg.sdim.as_deref(), "sdim")?)?;
        let parity = need(arg.parity, "parity")?;
        return super_preserver(&SuperMatrix::new(m, n0, n1, parity.into())?);
    }
    let field = field_or_default(arg.field.as_deref())?;
    let name = need(arg.algebra.as_deref(), "matrix or --algebra")?;
    let (kind, level) = split_name(name)?;
    let kind = super_kind(kind).ok_or_else(|| Error::param(format!("unknown superalgebra {name:?}")))?;
    let (n0, n1) = match (&arg.sdim, arg.n) {
        (Some(s), _) => parse_sdim(s)?,
        (None, Some(k)) if kind == SuperKind::Pe => (k, k),
        _ => return Err(Error::param("missing --sdim")),
    };
    let g = named_superalgebra(kind, n0, n1, field)?;
    Ok(if level == 0 { g } else { g.derived_series(level).terms.pop().expect("level >= 1") })
}

#[derive(Serialize)]
struct CanonOutput<'a> {
    relation: Relation,
    label: &'a ClassLabel,
    canonical: &'a Matrix,
    witness_m: &'a Matrix,
    witness_a: Option<&'a Matrix>,
    verified: bool,
}

fn certified(r: &CanonResult, input: &Matrix) -> Result<Value> {
    if !r.verify(input) {
        return Err(Error::Certificate("certificate does not reproduce the input".into()));
    }
    let out = CanonOutput {
        relation: r.relation,
        label: &r.label,
        canonical: &r.canonical,
        witness_m: &r.witness_m,
        witness_a: r.witness_a.as_ref(),
        verified: true,
    };
    Ok(serde_json::to_value(out).expect("serializable"))
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn super_dims(g: &SuperAlgebra) -> Value {
    let (e, o) = g.dim();
    json!([e, o])
}

pub fn execute(command: &Command) -> Result<Value> {
    match command {
        Command::Canon(a) => {
            let b = load_matrix(&a.matrix, a.field.as_deref())?;
            certified(&reduce_symmetric(&b)?, &b)
        }
        Command::Equiv { first, matrix2 } => {
            let b = load_matrix(&first.matrix, first.field.as_deref())?;
            let c = load_matrix(matrix2, first.field.as_deref())?;
            let r = equiv_symmetric(&b, &c)?;
            let verified = match &r.witness {
                Some(x) => b.congruent(x) == c,
                None => {
                    let (rb, rc) = (reduce_symmetric(&b)?, reduce_symmetric(&c)?);
                    rb.verify(&b) && rc.verify(&c) && rb.label != rc.label
                }
            };
            if !verified {
                return Err(Error::Certificate("equivalence witness does not verify".into()));
            }
            Ok(json!({ "equivalent": r.equivalent, "witness": r.witness, "verified": true }))
        }
        Command::Preserver(a) => Ok(to_value(lie_algebra(a)?.record())),
        Command::Derived { algebra, depth } => {
            let g = lie_algebra(algebra)?;
            let s = g.derived_series(*depth);
            Ok(json!({ "dim": g.dim(), "dims": s.dims(), "stabilized_at": s.stabilized_at }))
        }
        Command::Center(a) => {
            let z = lie_algebra(a)?.center();
            Ok(json!({ "dim": z.dim(), "basis": z.matrices() }))
        }
        Command::Simple { algebra, strategy, survey } => {
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Weights => Strategy::Weights,
            };
            simple(algebra, strategy, *survey)
        }
        Command::Fingerprint(a) => {
            let g = lie_algebra(a)?;
            Ok(json!({ "dim": g.dim(), "fingerprint": g.fingerprint() }))
        }
        Command::Socio(a) => {
            let b = load_matrix(&a.matrix, a.field.as_deref())?;
            certified(&sociological_canon(&b)?, &b)
        }
        Command::Albert(a) => {
            let b = load_matrix(&a.matrix, a.field.as_deref())?;
            certified(&albert_canon(&b)?, &b)
        }
        Command::SuperCanon { matrix, sdim, parity } => {
            let b = load_matrix(&matrix.matrix, matrix.field.as_deref())?;
            let (n0, n1) = parse_sdim(sdim)?;
            let r = match parity {
                ParityArg::Even => super_even_canon(&b, n0, n1)?,
                ParityArg::Odd if b.is_symmetric() => super_odd_sym_canon(&b, n0, n1)?,
                ParityArg::Odd => super_odd_nonsym_canon(&b, n0, n1)?,
            };
            certified(&r, &b)
        }
        Command::SuperPreserver(a) => Ok(to_value(super_algebra(a)?.record())),
        Command::SuperDerived { algebra, depth } => {
            let g = super_algebra(algebra)?;
            let s = g.derived_series(*depth);
            let dims: Vec<Value> = s.terms.iter().map(super_dims).collect();
            Ok(json!({
                "dim": super_dims(&g),
                "dims": dims,
                "total_dims": s.dims(),
                "stabilized_at": s.stabilized_at,
            }))
        }
        Command::Contact { matrix, sdim, parity } => {
            let b = load_matrix(&matrix.matrix, matrix.field.as_deref())?;
            let n0 = match sdim {
                Some(s) => {
                    let (n0, n1) = parse_sdim(s)?;
                    if n0 + n1 != b.rows() {
                        return Err(Error::dim(format!("({n0}|{n1}) does not match a {}x{} matrix", b.rows(), b.rows())));
                    }
                    n0
                }
                None => b.rows(),
            };
            Ok(to_value(is_contact(&OneFormSpec::mixed((*parity).into(), n0, b)?)))
        }
        Command::Census { n, predicate, equivalence, field } => {
            let field = field_or_default(field.as_deref())?;
            let predicate: Predicate = predicate.parse()?;
            let equivalence: Equivalence = equivalence.parse()?;
            Ok(to_value(enumerate_classes(field, *n, predicate, equivalence)?))
        }
        Command::Cluster { matrix, n, predicate } => {
            let reps = if matrix.is_empty() {
                let n = need(*n, "n or --matrix")?;
                enumerate_classes(Field::gf2(), n, predicate.parse()?, Equivalence::Congruence)?.representatives
            } else {
                matrix.iter().map(|m| load_matrix(m, None)).collect::<Result<Vec<_>>>()?
            };
            let c = lie_equiv_cluster(&reps)?;
            Ok(json!({
                "count": c.count,
                "clusters": c.clusters,
                "fingerprints": c.fingerprints,
                "representatives": reps,
            }))
        }
    }
}

fn simple(arg: &AlgebraArg, strategy: Strategy, survey: bool) -> Result<Value> {
    let name_is_super = arg
        .algebra
        .as_deref()
        .map(|n| split_name(n).map(|(k, _)| super_kind(k).is_some()))
        .transpose()?
        .unwrap_or(false)
        || (arg.matrix.is_some() && arg.sdim.is_some());
    let (table, dim, ideal_matrices): (_, Value, Box<dyn Fn(&[u64]) -> Value>) = if name_is_super {
        let g = super_algebra(arg)?;
        let t = g.gf2_table()?;
        let dim = super_dims(&g);
        (t, dim, Box::new(move |c: &[u64]| {
            let i = g.from_gf2_coords(c);
            json!({ "dim": super_dims(&i), "even": i.even_matrices(), "odd": i.odd_matrices() })
        }))
    } else {
        let g = lie_algebra(arg)?;
        let t = g.gf2_table()?;
        let dim = json!(g.dim());
        (t, dim, Box::new(move |c: &[u64]| {
            let i = g.from_gf2_coords(c);
            json!({ "dim": i.dim(), "basis": i.matrices() })
        }))
    };
    let report = table.is_simple(strategy)?;
    let mut out = json!({
        "dim": dim,
        "simple": report.simple,
        "strategy": report.strategy,
        "seeds": report.seeds,
        "witness": report.witness.as_deref().map(&ideal_matrices),
    });
    if survey {
        let s = table.survey(strategy, false)?;
        out["ideals"] = Value::Array(s.ideals.iter().map(|c| ideal_matrices(c)).collect());
        out["truncated"] = json!(s.truncated);
    }
    Ok(out)
}

/// `key: value` lines; matrices (arrays of rows of hex strings) are printed
/// as grids below their key.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                if let Some(rows) = as_matrix(v) {
                    out.push_str(&format!("{k}:\n"));
                    push_grid(&mut out, &rows);
                } else if let Some(list) = as_matrix_list(v) {
                    out.push_str(&format!("{k}: {} matrices\n", list.len()));
                    for (i, rows) in list.iter().enumerate() {
                        out.push_str(&format!("  [{i}]\n"));
                        push_grid(&mut out, rows);
                    }
                } else {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

fn push_grid(out: &mut String, rows: &[String]) {
    for r in rows {
        out.push_str(&format!("    {r}\n"));
    }
}

fn as_matrix_list(v: &Value) -> Option<Vec<Vec<String>>> {
    let items = v.as_array()?;
    if items.is_empty() {
        return None;
    }
    items.iter().map(as_matrix).collect()
}

fn as_matrix(v: &Value) -> Option<Vec<String>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            let entries = r.as_array()?;
            let cells: Option<Vec<&str>> = entries.iter().map(Value::as_str).collect();
            Some(cells?.join(" "))
        })
        .collect()
}
