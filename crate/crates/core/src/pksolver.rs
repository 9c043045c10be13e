//! Closed (1,1) families, pseudo-Kähler and symplectic existence, metrics,
//! signatures and pseudo-Hermitian-symplectic decompositions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeffs::{Assignment, ParamDecl, ParamKind, Poly, Scalar, Substitution, Var};
use crate::error::{Error, Result};
use crate::exterior::{Form, Key, Presentation};
use crate::lie::{realify, realize};
use crate::linalg::{self, Matrix};

/// One real or complex coordinate of an ansatz, with its basis form.
#[derive(Clone, Debug)]
struct Coord {
    name: String,
    var: Var,
    form: Form,
}

/// Solution set of `dF = 0` on a (1,1) ansatz, on the generic branch of the
/// logged pivot polynomials.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFamily {
    pub label: String,
    pub context: String,
    pub reality: bool,
    pub coordinates: Vec<String>,
    pub free: Vec<String>,
    /// Pinned coordinate = linear expression in the free coordinates.
    pub pinned: Vec<(String, String)>,
    /// Variables the family form is written in.
    pub unknowns: Vec<ParamDecl>,
    #[serde(serialize_with = "ser_display")]
    pub form: Form,
    /// Nonconstant pivot polynomials assumed nonzero.
    pub case_split: Vec<String>,
    #[serde(skip)]
    pub pivot_polys: Vec<Poly>,
    /// Real dimension when `reality`, complex dimension otherwise.
    pub dimension: usize,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn real_ansatz(n: usize) -> Vec<Coord> {
    let mut out = Vec::new();
    for k in 1..=n {
        let name = format!("x{k}{k}");
        out.push(Coord {
            var: Var::real(&name),
            name,
            form: Form::mono(&[k], &[k], Scalar::i()),
        });
    }
    for k in 1..=n {
        for l in k + 1..=n {
            let kl = Form::mono(&[k], &[l], Scalar::one());
            let lk = Form::mono(&[l], &[k], Scalar::one());
            let a = format!("a{k}{l}");
            let b = format!("b{k}{l}");
            out.push(Coord {
                var: Var::real(&a),
                name: a,
                form: kl.sub(&lk),
            });
            out.push(Coord {
                var: Var::real(&b),
                name: b,
                form: kl.add(&lk).scale(&Scalar::i()),
            });
        }
    }
    out
}

fn complex_ansatz(n: usize) -> Vec<Coord> {
    let mut out = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            let name = format!("x{k}{l}");
            out.push(Coord {
                var: Var::holo(&name),
                name,
                form: Form::mono(&[k], &[l], Scalar::one()),
            });
        }
    }
    out
}

/// Column visiting order: later columns are preferred as free unknowns.
fn pivot_order(coords: &[Coord], reality: bool) -> Vec<usize> {
    let idx: BTreeMap<&str, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| (c.name.as_str(), i))
        .collect();
    let mut names: Vec<&str> = coords.iter().map(|c| c.name.as_str()).collect();
    if reality {
        // imaginary parts first, then off-diagonal real parts, then the
        // diagonal, each from the highest index down
        names.sort_by_key(|s| {
            let rank = match &s[..1] {
                "b" => 0,
                "a" => 1,
                _ => 2,
            };
            (rank, std::cmp::Reverse(s.to_string()))
        });
    } else {
        names.sort_by_key(|s| std::cmp::Reverse(s.to_string()));
    }
    names.iter().map(|s| idx[s]).collect()
}

/// Coordinate vectors of `forms` over the union of their keys.
fn coordinates(forms: &[Form]) -> Matrix {
    let mut keys = BTreeMap::new();
    for f in forms {
        for (k, _) in f.terms() {
            let next = keys.len();
            keys.entry(*k).or_insert(next);
        }
    }
    // one row per key, one column per form
    let mut m = linalg::zeros(keys.len(), forms.len());
    for (j, f) in forms.iter().enumerate() {
        for (k, s) in f.terms() {
            m[keys[k]][j] = s.clone();
        }
    }
    m
}

pub fn closed_compatible_family(p: &Presentation, reality: bool) -> Result<ClosedFamily> {
    let coords = if reality {
        real_ansatz(p.n)
    } else {
        complex_ansatz(p.n)
    };
    let images: Vec<Form> = coords.iter().map(|c| p.d(&c.form)).collect::<Result<_>>()?;
    let m = coordinates(&images);
    let order = pivot_order(&coords, reality);
    let red = linalg::rref_ordered(&m, coords.len(), &order);
    let free_cols = red.free_cols();
    let null = red.nullspace();

    // pinned coordinate expressions in the free coordinate variables
    let mut value: Vec<Scalar> = vec![Scalar::zero(); coords.len()];
    for (v, &f) in null.iter().zip(&free_cols) {
        let x = Scalar::var(coords[f].var.clone());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                value[i] = &value[i] + &(c * &x);
            }
        }
    }
    let pinned: Vec<(String, String)> = red
        .pivot_cols
        .iter()
        .map(|&c| (coords[c].name.clone(), value[c].to_string()))
        .collect();

    // rename free coordinates into display unknowns
    let is_free = |name: &str| free_cols.iter().any(|&f| coords[f].name == name);
    let mut unknowns = Vec::new();
    let mut display = Substitution::new();
    for &f in &free_cols {
        let c = &coords[f];
        let name = &c.name;
        if !reality || name.starts_with('x') {
            let d = if reality {
                ParamDecl::real(name)
            } else {
                ParamDecl::complex(name)
            };
            unknowns.push((name.clone(), d));
            continue;
        }
        let kl = &name[1..];
        let both = is_free(&format!("a{kl}")) && is_free(&format!("b{kl}"));
        if both {
            let x = Var::holo(&format!("x{kl}"));
            let (xs, xb) = (Scalar::var(x.clone()), Scalar::var(x.conj()));
            if name.starts_with('a') {
                display.insert(c.var.clone(), &(&xs + &xb) * &Scalar::from_ratio(1, 2));
                unknowns.push((format!("x{kl}"), ParamDecl::complex(&format!("x{kl}"))));
            } else {
                display.insert(
                    c.var.clone(),
                    &(&xs - &xb) * &(-&Scalar::i() * Scalar::from_ratio(1, 2)),
                );
            }
        } else {
            let dn = if name.starts_with('a') {
                format!("x{kl}")
            } else {
                format!("y{kl}")
            };
            display.insert(c.var.clone(), Scalar::var(Var::real(&dn)));
            unknowns.push((dn.clone(), ParamDecl::real(&dn)));
        }
    }
    unknowns.sort_by_key(|a| unknown_key(&a.0));
    let mut form = Form::zero();
    for (c, v) in coords.iter().zip(&value) {
        if !v.is_zero() {
            form = form.add(&c.form.scale(&display.apply(v)?));
        }
    }
    let pivot_polys: Vec<Poly> = red
        .pivots
        .iter()
        .filter(|q| !q.is_constant())
        .cloned()
        .collect();
    let case_split = pivot_polys.iter().map(|q| q.to_string()).collect();
    Ok(ClosedFamily {
        label: p.label.clone(),
        context: crate::cohomology::context_of(p),
        reality,
        coordinates: coords.iter().map(|c| c.name.clone()).collect(),
        free: free_cols.iter().map(|&f| coords[f].name.clone()).collect(),
        pinned,
        unknowns: unknowns.into_iter().map(|u| u.1).collect(),
        form,
        case_split,
        pivot_polys,
        dimension: free_cols.len(),
    })
}

fn unknown_key(name: &str) -> (String, String) {
    (name[1..].to_string(), name[..1].to_string())
}

impl ClosedFamily {
    /// Fails with the first logged pivot that vanishes on `locus`.
    pub fn check_branch(&self, locus: &Substitution) -> Result<()> {
        for q in &self.pivot_polys {
            if locus.apply_poly(q).is_zero() {
                return Err(Error::UnresolvedCaseSplit(q.to_string()));
            }
        }
        Ok(())
    }

    /// The family form at the given values of its unknowns.
    pub fn at(&self, values: &Substitution) -> Result<Form> {
        self.form.substitute(values)
    }
}

/// Values tried for an unknown, those of max-norm exactly `r` first.
fn ring(kind: ParamKind, r: i64) -> Vec<Scalar> {
    if r == 0 {
        return vec![Scalar::zero()];
    }
    match kind {
        ParamKind::Real => vec![Scalar::from_int(r), Scalar::from_int(-r)],
        ParamKind::Complex => {
            let mut pts = vec![(r, 0), (-r, 0), (0, r), (0, -r)];
            let mut rest = Vec::new();
            for a in -r..=r {
                for b in -r..=r {
                    if a.abs().max(b.abs()) == r && a != 0 && b != 0 {
                        rest.push((a, b));
                    }
                }
            }
            rest.sort_by_key(|&(a, b)| (a.abs() + b.abs(), -a, -b));
            pts.extend(rest);
            pts.into_iter()
                .map(|(a, b)| &Scalar::from_int(a) + &(&Scalar::i() * &Scalar::from_int(b)))
                .collect()
        }
    }
}

fn assignment(unknowns: &[ParamDecl], vals: &[Scalar]) -> Substitution {
    let mut s = Substitution::new();
    for (u, v) in unknowns.iter().zip(vals) {
        s.insert(u.var(), v.clone());
        if u.kind == ParamKind::Complex {
            s.insert(u.partner(), v.conj());
        }
    }
    s
}

/// First point (by radius, then support size, then lexicographic order) at
/// which `pred` holds.
pub fn search(
    unknowns: &[ParamDecl],
    max_radius: i64,
    mut pred: impl FnMut(&Substitution) -> Result<bool>,
) -> Result<Option<(Vec<Scalar>, Substitution)>> {
    let m = unknowns.len();
    for r in 0..=max_radius {
        let lists: Vec<Vec<(i64, Scalar)>> = unknowns
            .iter()
            .map(|u| {
                (1..=r)
                    .flat_map(|k| ring(u.kind, k).into_iter().map(move |v| (k, v)))
                    .collect()
            })
            .collect();
        let sizes = if r == 0 { 0..=0 } else { 1..=m };
        for s in sizes {
            for support in combinations(m, s) {
                let mut idx = vec![0usize; s];
                loop {
                    let top = support
                        .iter()
                        .zip(&idx)
                        .map(|(&p, &i)| lists[p][i].0)
                        .max()
                        .unwrap_or(0);
                    if top == r {
                        let mut vals = vec![Scalar::zero(); m];
                        for (&p, &i) in support.iter().zip(&idx) {
                            vals[p] = lists[p][i].1.clone();
                        }
                        let sub = assignment(unknowns, &vals);
                        if pred(&sub)? {
                            return Ok(Some((vals, sub)));
                        }
                    }
                    if !advance(&mut idx, |k| lists[support[k]].len()) {
                        break;
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Mixed-radix increment, last position fastest; false after the last tuple.
fn advance(idx: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < radix(k) {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn combinations(m: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i >= s - cur.len() {
                cur.push(i);
                go(i + 1, m, s, cur, out);
                cur.pop();
            }
        }
    }
    go(0, m, s, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Tag {
    PseudoKahler,
    Kahler,
    NeutralKahler,
    NeutralCalabiYau,
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tag::PseudoKahler => "pseudoKahler",
            Tag::Kahler => "kahler",
            Tag::NeutralKahler => "neutralKahler",
            Tag::NeutralCalabiYau => "neutralCalabiYau",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub values: Vec<(String, String)>,
    pub form: String,
    pub closed: bool,
    pub top_coefficient: String,
    pub signature: Option<(usize, usize)>,
    #[serde(skip)]
    pub form_value: Form,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricVerdict {
    pub exists: bool,
    pub family: ClosedFamily,
    /// Coefficient of `ω^{1…n} ∧ ω^{1̄…n̄}` in `F^n`.
    pub nondegeneracy: String,
    pub witness: Option<Witness>,
    pub neutral_witness: Option<Witness>,
    pub tags: Vec<Tag>,
    pub notes: Vec<String>,
}

fn witness_at(
    p: &Presentation,
    fam: &ClosedFamily,
    vals: &[Scalar],
    sub: &Substitution,
) -> Result<Witness> {
    let f = fam.at(sub)?;
    let closed = p.d(&f)?.is_zero();
    let top = f.pow(p.n).top_coeff(p.n);
    let signature = if p.is_parametric() {
        None
    } else {
        Some(linalg::signature(&metric_matrix(&f, p)?)?)
    };
    Ok(Witness {
        values: fam
            .unknowns
            .iter()
            .zip(vals)
            .map(|(u, v)| (u.name.clone(), v.to_string()))
            .collect(),
        form: f.to_string(),
        closed,
        top_coefficient: top.to_string(),
        signature,
        form_value: f,
    })
}

pub fn pk_exists(p: &Presentation) -> Result<MetricVerdict> {
    let family = closed_compatible_family(p, true)?;
    let pnd = family.form.pow(p.n).top_coeff(p.n);
    let exists = !pnd.is_zero();
    let mut notes = Vec::new();
    let nilpotent = !p.is_parametric()
        && p.twist.is_none()
        && realize(p).map(|a| a.nilpotency().0).unwrap_or(false);
    if !exists {
        if nilpotent || p.twist.is_none() {
            notes.push("invariant level; on nilmanifolds symmetrization extends non-existence to all metrics".into());
        }
        if p.twist.is_some() {
            notes.push("untwisted invariant forms only; no manifold-level claim".into());
        }
    }
    let mut witness = None;
    let mut neutral_witness = None;
    let mut tags = Vec::new();
    if exists {
        tags.push(Tag::PseudoKahler);
        let radius = p.n as i64 / 2 + 1;
        let hit = search(&family.unknowns, radius, |s| Ok(!s.apply(&pnd)?.is_zero()))?;
        let (vals, sub) =
            hit.ok_or_else(|| Error::Invalid("no witness within the search radius".into()))?;
        let w = witness_at(p, &family, &vals, &sub)?;
        if !w.closed || w.top_coefficient == "0" {
            return Err(Error::Invalid("witness failed re-verification".into()));
        }
        if !p.is_parametric() && p.twist.is_none() {
            let n2 = 2 * p.n;
            let sig_at = |s: &Substitution| -> Result<Option<(usize, usize)>> {
                if s.apply(&pnd)?.is_zero() {
                    return Ok(None);
                }
                Ok(Some(linalg::signature(&metric_matrix(
                    &fam_at(&family, s)?,
                    p,
                )?)?))
            };
            let is_definite = |sig: (usize, usize)| sig.0 == n2 || sig.1 == n2;
            // a vanishing diagonal entry rules out definite metrics
            let diagonal_free = (1..=p.n).all(|k| {
                !family
                    .form
                    .coeff(&Key::new(1 << (k - 1), 1 << (k - 1), 0))
                    .is_zero()
            });
            let definite = match w.signature {
                Some(sig) if is_definite(sig) => true,
                _ if !diagonal_free => false,
                _ => match diagonal_probe(&family, p.n, |_| 1) {
                    Some((_, s)) if sig_at(&s)?.is_some_and(is_definite) => true,
                    _ => search(&family.unknowns, 2, |s| {
                        Ok(sig_at(s)?.is_some_and(is_definite))
                    })?
                    .is_some(),
                },
            };
            if definite {
                tags.push(Tag::Kahler);
            }
            if p.n % 2 == 0 {
                let is_neutral =
                    |s: &Substitution| -> Result<bool> { Ok(sig_at(s)? == Some((p.n, p.n))) };
                let neutral = match w.signature {
                    Some(sig) if sig == (p.n, p.n) => Some((vals.clone(), sub.clone())),
                    _ => match diagonal_probe(&family, p.n, |k| if k % 2 == 1 { 1 } else { -1 }) {
                        Some(hit) if is_neutral(&hit.1)? => Some(hit),
                        _ => search(&family.unknowns, 2, |s| is_neutral(s))?,
                    },
                };
                if let Some((vals, sub)) = neutral {
                    let nw = witness_at(p, &family, &vals, &sub)?;
                    tags.push(Tag::NeutralKahler);
                    let cy = crate::connection::neutral_cy_check(p, &nw.form_value)?;
                    if cy.tags.contains(&Tag::NeutralCalabiYau) {
                        tags.push(Tag::NeutralCalabiYau);
                    }
                    neutral_witness = Some(nw);
                }
            }
        }
        witness = Some(w);
    }
    Ok(MetricVerdict {
        exists,
        nondegeneracy: pnd.to_string(),
        family,
        witness,
        neutral_witness,
        tags,
        notes,
    })
}

/// The point with `x_kk = sign(k)` and every other unknown zero, when all
/// diagonal unknowns are free.
fn diagonal_probe(
    f: &ClosedFamily,
    n: usize,
    sign: impl Fn(usize) -> i64,
) -> Option<(Vec<Scalar>, Substitution)> {
    let mut vals = vec![Scalar::zero(); f.unknowns.len()];
    for k in 1..=n {
        let i = f
            .unknowns
            .iter()
            .position(|u| u.name == format!("x{k}{k}"))?;
        vals[i] = Scalar::from_int(sign(k));
    }
    let sub = assignment(&f.unknowns, &vals);
    Some((vals, sub))
}

fn fam_at(f: &ClosedFamily, s: &Substitution) -> Result<Form> {
    f.at(s)
}

/// `g(x, y) = F(x, J y)` on the real basis `e_1..e_{2n}`.
pub fn metric_matrix(f: &Form, p: &Presentation) -> Result<Matrix> {
    if !f.is_zero() && f.bidegree() != Some((1, 1)) {
        return Err(Error::NotType11);
    }
    if !p.is_real(f) {
        return Err(Error::NotReal);
    }
    let r = realify(f)?;
    let m = 2 * p.n;
    let eval = |a: usize, b: usize| -> Scalar {
        if a == b {
            return Scalar::zero();
        }
        let (lo, hi, neg) = if a < b { (a, b, false) } else { (b, a, true) };
        let c = r.coeff(&Key::new(1 << lo | 1 << hi, 0, 0)).re();
        if neg {
            -c
        } else {
            c
        }
    };
    let mut g = linalg::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            // J e_{2k-1} = e_{2k}, J e_{2k} = -e_{2k-1}
            g[a][b] = if b % 2 == 0 {
                eval(a, b + 1)
            } else {
                -eval(a, b - 1)
            };
        }
    }
    Ok(g)
}

pub fn signature(g: &Matrix) -> Result<(usize, usize)> {
    linalg::signature(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymplecticVerdict {
    pub exists: bool,
    pub closed_dimension: usize,
    pub nondegeneracy: String,
    pub witness: Option<String>,
}

/// Presentation on the real coframe `e^1..e^{2n}` with every form of type (k,0).
pub fn real_presentation(p: &Presentation) -> Result<Presentation> {
    let a = crate::lie::realize_generic(p)?;
    let m = a.dim;
    let mut d = vec![Form::zero(); m];
    for x in 0..m {
        for y in x + 1..m {
            for (c, s) in a.bracket_basis(x, y).iter().enumerate() {
                if !s.is_zero() {
                    d[c] = d[c].add(&Form::term(Key::new(1 << x | 1 << y, 0, 0), -s));
                }
            }
        }
    }
    Presentation::build(
        &format!("{}-real", p.label),
        m,
        p.params.clone(),
        d,
        None,
        p.locus.clone(),
    )
}

pub fn symplectic_exists(p: &Presentation) -> Result<SymplecticVerdict> {
    let rp = real_presentation(p)?;
    let m = rp.n;
    let mut coords = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            let name = format!("y{a}_{b}");
            coords.push((Var::real(&name), Form::mono(&[a, b], &[], Scalar::one())));
        }
    }
    let images: Vec<Form> = coords.iter().map(|c| rp.d(&c.1)).collect::<Result<_>>()?;
    let mat = coordinates(&images);
    // parameters make fraction-field reduction expensive; the fraction-free
    // kernel spans the same space with polynomial entries
    let (kernel, free) = if rp.is_parametric() {
        let (k, f, _) = linalg::nullspace_fraction_free(&mat, coords.len());
        (k, f)
    } else {
        let red = linalg::rref(&mat, coords.len());
        (red.nullspace(), red.free_cols())
    };
    let mut omega = Form::zero();
    let mut unknowns = Vec::new();
    for (v, &f) in kernel.iter().zip(&free) {
        let x = Scalar::var(coords[f].0.clone());
        unknowns.push(ParamDecl::real(coords[f].0.name()));
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                omega = omega.add(&coords[i].1.scale(&(c * &x)));
            }
        }
    }
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let top = Key::new(all, 0, 0);
    if unknowns.len() > 12 || rp.is_parametric() {
        // a nonzero value at one point already certifies a symplectic form;
        // with parameters, the kernel is polynomial in them, so a nonzero
        // value at one parameter point certifies the generic case
        for shift in 0..3 {
            let mut sub = Substitution::new();
            for (k, u) in unknowns.iter().enumerate() {
                sub.insert(u.var(), Scalar::from_int((k as i64 + shift) % 5 - 2));
            }
            let w = omega.substitute(&sub)?;
            let mut at = Assignment::new();
            for (k, q) in rp.params.iter().enumerate() {
                let k = k as i64 + shift;
                let re = Scalar::from_ratio(k % 7 - 3, k % 4 + 2);
                let v = if q.var().is_real() {
                    re
                } else {
                    &re + &(&Scalar::i() * &Scalar::from_ratio(k % 3 + 1, 5))
                };
                at.set(q, v)?;
            }
            let Ok(wn) = w.substitute(at.substitution()) else {
                continue;
            };
            let c = wn.pow(m / 2).coeff(&top);
            if !c.is_zero() {
                let nondegeneracy = if at.is_empty() {
                    format!("nonzero at the witness: {c}")
                } else {
                    format!("nonzero at the witness with {at}: {c}")
                };
                return Ok(SymplecticVerdict {
                    exists: true,
                    closed_dimension: free.len(),
                    nondegeneracy,
                    witness: Some(w.to_string()),
                });
            }
        }
    }
    let pnd = omega.pow(m / 2).coeff(&top);
    let exists = !pnd.is_zero();
    let witness = if exists {
        search(&unknowns, m as i64 / 4 + 1, |s| {
            Ok(!s.apply(&pnd)?.is_zero())
        })?
        .map(|(_, s)| omega.substitute(&s).map(|f| f.to_string()))
        .transpose()?
    } else {
        None
    };
    Ok(SymplecticVerdict {
        exists,
        closed_dimension: free.len(),
        nondegeneracy: pnd.to_string(),
        witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "ser_display")]
    pub alpha: Form,
    #[serde(serialize_with = "ser_display")]
    pub f: Form,
    #[serde(serialize_with = "ser_display")]
    pub beta: Form,
    pub nondegenerate_11: bool,
    pub top_coefficient: String,
    #[serde(serialize_with = "ser_display")]
    pub d_f: Form,
    pub beta_is_conj_alpha: bool,
}

/// Splits a closed 2-form into its (2,0), (1,1) and (0,2) parts.
pub fn phs_decompose(omega: &Form, p: &Presentation) -> Result<Decomposition> {
    if !p.d(omega)?.is_zero() {
        return Err(Error::NotClosed);
    }
    let alpha = omega.component(2, 0);
    let f = omega.component(1, 1);
    let beta = omega.component(0, 2);
    let top = f.pow(p.n).top_coeff(p.n);
    Ok(Decomposition {
        beta_is_conj_alpha: p.conj(&alpha) == beta,
        nondegenerate_11: !top.is_zero(),
        top_coefficient: top.to_string(),
        d_f: p.d(&f)?,
        alpha,
        f,
        beta,
    })
}

/// Sign relating `ω^{1 1̄ 2 2̄ … n n̄}` to the stored `ω^{1…n} ∧ ω^{1̄…n̄}`.
pub fn interleaved_volume_sign(n: usize) -> i64 {
    if (n * (n - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EfvReport {
    pub del_alpha_zero: bool,
    pub del_f_is_minus_delbar_alpha: bool,
    pub omega_closed: bool,
    pub omega_cube_zero: bool,
    /// Coefficient of `F^3` on `ω^{1 1̄ 2 2̄ 3 3̄}`.
    pub f_cube: String,
    pub f_nondegenerate: bool,
    pub del_f: String,
}

impl EfvReport {
    pub fn ok(&self) -> bool {
        self.del_alpha_zero
            && self.del_f_is_minus_delbar_alpha
            && self.omega_closed
            && self.omega_cube_zero
    }
}

/// Checks `Ω = α + F + ᾱ` with `F = (i/2) r ω^{11̄} − ω^{23̄} + ω^{32̄}`,
/// `α = −ω^{23}` on a specialized three-generator presentation.
pub fn efv_counterexample_check(p: &Presentation, r: &Scalar) -> Result<EfvReport> {
    if p.n != 3 {
        return Err(Error::DimensionMismatch(
            "the check needs three generators".into(),
        ));
    }
    let half_i = &Scalar::i() * &Scalar::from_ratio(1, 2);
    let f = Form::mono(&[1], &[1], &half_i * r)
        .sub(&Form::mono(&[2], &[3], Scalar::one()))
        .add(&Form::mono(&[3], &[2], Scalar::one()));
    let alpha = Form::mono(&[2, 3], &[], -Scalar::one());
    let omega = alpha.add(&f).add(&p.conj(&alpha));
    let del_f = p.del(&f)?;
    let f3 = f.pow(3).top_coeff(3);
    let f3 = if interleaved_volume_sign(3) < 0 {
        -f3
    } else {
        f3
    };
    Ok(EfvReport {
        del_alpha_zero: p.del(&alpha)?.is_zero(),
        del_f_is_minus_delbar_alpha: del_f.add(&p.delbar(&alpha)?).is_zero(),
        omega_closed: p.d(&omega)?.is_zero(),
        omega_cube_zero: omega.pow(3).is_zero(),
        f_nondegenerate: !f3.is_zero(),
        f_cube: f3.to_string(),
        del_f: del_f.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_order_is_radius_then_support() {
        let u = vec![ParamDecl::real("a"), ParamDecl::complex("b")];
        let mut seen = Vec::new();
        search(&u, 1, |s| {
            seen.push(s.to_string());
            Ok(false)
        })
        .unwrap();
        // zero, then 2 + 8 single-support points, then 2 * 8 pairs
        assert_eq!(seen.len(), 1 + 2 + 8 + 16);
        assert_eq!(seen[0], "{a=0, b=0, bbar=0}");
        assert_eq!(seen[1], "{a=1, b=0, bbar=0}");
        assert_eq!(seen[3], "{a=0, b=1, bbar=1}");
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }
}
