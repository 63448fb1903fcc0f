use crate::error::{Error, Result};
use crate::ff::Field;
use crate::mat::{axpy, standard_form, Matrix, StandardForm};

use super::symmetric::zd_witness;
use super::{rows_matrix, AlbertClass, AlbertKind, CanonResult, ClassLabel, Relation};

/// `Q_B(x) = x^T B x`.
pub fn quadratic_value(b: &Matrix, x: &[u16]) -> u16 {
    b.form(x, x)
}

/// `Y(n, r)` with the first hyperbolic plane replaced by `δx² + xy + y²`,
/// δ the smallest element of absolute trace 1.
pub fn y_arf(n: usize, r: usize, field: Field) -> Result<Matrix> {
    if r == 0 {
        return Err(Error::param("the Arf class needs r >= 1"));
    }
    let mut m = standard_form(StandardForm::Y(r), n, field)?;
    m.set(0, 0, field.trace_one());
    m.set(r, r, 1);
    Ok(m)
}

fn scaled(f: Field, c: u16, v: &[u16]) -> Vec<u16> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

/// `u + c v`.
fn plus(f: Field, u: &[u16], c: u16, v: &[u16]) -> Vec<u16> {
    let mut w = u.to_vec();
    axpy(f, &mut w, c, v);
    w
}

struct Forms<'a> {
    b: &'a Matrix,
    polar: Matrix,
}

impl Forms<'_> {
    fn q(&self, x: &[u16]) -> u16 {
        quadratic_value(self.b, x)
    }

    fn n(&self, x: &[u16], y: &[u16]) -> u16 {
        self.polar.form(x, y)
    }

    /// Turns a pair with polar value 1 into a hyperbolic one if the plane
    /// is isotropic; otherwise into the Arf-1 normal form.
    fn normalize_plane(&self, e: Vec<u16>, f_: Vec<u16>) -> (Vec<u16>, Vec<u16>, bool) {
        let f = self.b.field();
        let a = self.q(&e);
        let b = self.q(&f_);
        if a == 0 {
            let v = plus(f, &f_, b, &e);
            return (e, v, false);
        }
        if b == 0 {
            let u = plus(f, &e, a, &f_);
            return (u, f_, false);
        }
        let ab = f.mul(a, b);
        if let Some(s) = f.solve_artin_schreier(ab) {
            // u = (s/a) e + f is isotropic and N(u, e) = 1.
            let u = plus(f, &f_, f.div(s, a).expect("a != 0"), &e);
            let v = plus(f, &e, self.q(&e), &u);
            return (u, v, false);
        }
        let delta = f.trace_one();
        let sb = f.sqrt(b);
        let v = scaled(f, f.inv(sb).expect("b != 0"), &f_);
        let u = scaled(f, sb, &e);
        let s = f.solve_artin_schreier(ab ^ delta).expect("trace(ab + δ) = 0");
        let u = plus(f, &u, s, &v);
        (u, v, true)
    }

    /// Rewrites two orthogonal planes so that the second one is hyperbolic.
    fn split_hyperbolic(
        &self,
        e0: Vec<u16>,
        f0: Vec<u16>,
        et: Vec<u16>,
        ft: Vec<u16>,
    ) -> [Vec<u16>; 4] {
        let f = self.b.field();
        let span = [e0, f0, et, ft];
        let u = if let Some(x) = span.iter().find(|x| self.q(x) == 0) {
            x.clone()
        } else {
            // Q(μ e0 + ft) = μ² Q(e0) + Q(ft) vanishes for μ = sqrt(Q(ft)/Q(e0)).
            let mu = f.sqrt(f.div(self.q(&span[3]), self.q(&span[0])).expect("anisotropic"));
            plus(f, &span[3], mu, &span[0])
        };
        let x = span.iter().find(|x| self.n(&u, x) != 0).expect("plane is non-degenerate");
        let v = scaled(f, f.inv(self.n(&u, x)).expect("nonzero"), x);
        let v = plus(f, &v, self.q(&v), &u);
        let project = |z: &[u16]| {
            let w = plus(f, z, self.n(z, &v), &u);
            plus(f, &w, self.n(z, &u), &v)
        };
        let mut complement: Vec<Vec<u16>> = Vec::new();
        for z in &span {
            let p = project(z);
            let independent = match complement.as_slice() {
                [] => p.iter().any(|&c| c != 0),
                [first] => self.n(first, &p) != 0,
                _ => false,
            };
            if independent {
                complement.push(p);
            }
        }
        let [z1, z2]: [Vec<u16>; 2] = complement.try_into().expect("complement is a plane");
        let z2 = scaled(f, f.inv(self.n(&z1, &z2)).expect("nonzero"), &z2);
        [z1, z2, u, v]
    }
}

/// Canonical form for `B = M C M^T + A`, A symmetric zero-diagonal.
///
/// The invariants are `r = rank(B + B^T) / 2`, whether the quadratic form
/// `x^T B x` vanishes on the radical of `B + B^T`, and when it does, the Arf
/// invariant of the induced non-degenerate form.
pub fn albert_canon(b: &Matrix) -> Result<CanonResult> {
    if !b.is_square() {
        return Err(Error::dim(format!("{}x{} matrix is not square", b.rows(), b.cols())));
    }
    let f = b.field();
    let n = b.rows();
    let polar = b + &b.transpose();
    let forms = Forms { b, polar };
    let w = zd_witness(&forms.polar);
    let two_r = forms.polar.rank();
    let r = two_r / 2;
    let wrows: Vec<Vec<u16>> = (0..n).map(|i| w.row(i).to_vec()).collect();
    let mut es: Vec<Vec<u16>> = (0..r).map(|t| wrows[2 * t].clone()).collect();
    let mut fs: Vec<Vec<u16>> = (0..r).map(|t| wrows[2 * t + 1].clone()).collect();
    let radical = &wrows[two_r..];

    let (rows, kind) = if let Some(p) = radical.iter().position(|x| forms.q(x) != 0) {
        let qp = forms.q(&radical[p]);
        let u0 = scaled(f, f.inv(f.sqrt(qp)).expect("nonzero"), &radical[p]);
        let mut rows: Vec<Vec<u16>> = Vec::with_capacity(n);
        let fix = |x: &[u16]| plus(f, x, f.sqrt(forms.q(x)), &u0);
        rows.extend(es.iter().map(|x| fix(x)));
        rows.extend(fs.iter().map(|x| fix(x)));
        rows.push(u0.clone());
        for (i, x) in radical.iter().enumerate() {
            if i != p {
                let c = f.sqrt(f.div(forms.q(x), qp).expect("nonzero"));
                rows.push(plus(f, x, c, &radical[p]));
            }
        }
        (rows, AlbertKind::YTilde)
    } else {
        let mut arf = false;
        if r > 0 {
            for t in 1..r {
                let [z1, z2, u, v] = forms.split_hyperbolic(
                    es[0].clone(),
                    fs[0].clone(),
                    es[t].clone(),
                    fs[t].clone(),
                );
                es[0] = z1;
                fs[0] = z2;
                es[t] = u;
                fs[t] = v;
            }
            let (e0, f0, odd) = forms.normalize_plane(es[0].clone(), fs[0].clone());
            es[0] = e0;
            fs[0] = f0;
            arf = odd;
        }
        let mut rows = es;
        rows.extend(fs);
        rows.extend(radical.iter().cloned());
        (rows, if arf { AlbertKind::YArf } else { AlbertKind::Y })
    };

    let canonical = match kind {
        AlbertKind::Y => standard_form(StandardForm::Y(r), n, f)?,
        AlbertKind::YTilde => standard_form(StandardForm::Ytilde(r), n, f)?,
        AlbertKind::YArf => y_arf(n, r, f)?,
    };
    let p = rows_matrix(f, n, &rows);
    let witness_m = p
        .inverse()
        .ok_or_else(|| Error::Certificate("Albert change of basis is singular".into()))?;
    let witness_a = b + &canonical.congruent(&witness_m);
    if !(witness_a.is_symmetric() && witness_a.is_zero_diagonal()) {
        return Err(Error::Certificate("Albert offset is not symmetric zero-diagonal".into()));
    }
    Ok(CanonResult {
        relation: Relation::Albert,
        label: ClassLabel::Albert(AlbertClass { n, r, kind }),
        canonical,
        witness_m,
        witness_a: Some(witness_a),
    })
}
