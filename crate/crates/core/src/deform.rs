//! Coframe changes `η^k = Σ a_kj ω^j + Σ b_kj ω̄^j` and the structure
//! equations they induce.

use crate::coeffs::ParamDecl;
use crate::error::{Error, Result};
use crate::exterior::{parse_form, Form, Key, Presentation, Symbols};
use crate::linalg::{self, Matrix};

/// New (1,0) forms `η^1..η^n` written in the old coframe, plus any
/// parameters they introduce.
#[derive(Clone, Debug)]
pub struct CoframeSubstitution {
    pub eta: Vec<Form>,
    pub params: Vec<ParamDecl>,
}

impl CoframeSubstitution {
    pub fn identity(n: usize) -> Self {
        CoframeSubstitution {
            eta: (1..=n).map(Form::omega).collect(),
            params: Vec::new(),
        }
    }

    /// Parses lines such as `h3 = w3 + t*w3~`; generators not mentioned
    /// stay unchanged.
    pub fn parse(p: &Presentation, lines: &[&str], params: Vec<ParamDecl>) -> Result<Self> {
        let mut syms = Symbols::for_presentation(p);
        for d in &params {
            syms.declare(d);
        }
        let mut s = CoframeSubstitution::identity(p.n);
        s.params = params;
        for raw in lines.iter().flat_map(|l| l.split(';')) {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: format!("expected `hK = ...` in `{line}`"),
            })?;
            let k: usize = lhs
                .trim()
                .strip_prefix('h')
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("bad target `{}`", lhs.trim()),
                })?;
            if k == 0 || k > p.n {
                return Err(Error::DimensionMismatch(format!("h{k} outside 1..{}", p.n)));
            }
            let f = parse_form(rhs, &syms)?;
            if !f.is_zero() && (f.degree() != Some(1) || f.terms().any(|(k, _)| k.w != 0)) {
                return Err(Error::Invalid(format!("h{k} must be an untwisted 1-form")));
            }
            s.eta[k - 1] = f;
        }
        Ok(s)
    }
}

/// A change of coframe on a presentation: `fwd` expresses `(η, η̄)` in
/// `(ω, ω̄)`, `inv` the reverse.
#[derive(Clone, Debug)]
pub struct Coframe {
    pub n: usize,
    pub fwd: Matrix,
    pub inv: Matrix,
}

impl Coframe {
    pub fn new(p: &Presentation, s: &CoframeSubstitution) -> Result<Self> {
        let n = p.n;
        if s.eta.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} new forms for {} generators",
                s.eta.len(),
                n
            )));
        }
        let mut fwd = linalg::zeros(2 * n, 2 * n);
        for (k, eta) in s.eta.iter().enumerate() {
            let bar = p.conj(eta);
            for c in 1..=n {
                fwd[k][c - 1] = eta.coeff(&Key::new(1 << (c - 1), 0, 0));
                fwd[k][n + c - 1] = eta.coeff(&Key::new(0, 1 << (c - 1), 0));
                fwd[n + k][c - 1] = bar.coeff(&Key::new(1 << (c - 1), 0, 0));
                fwd[n + k][n + c - 1] = bar.coeff(&Key::new(0, 1 << (c - 1), 0));
            }
        }
        let inv = linalg::inverse(&fwd).ok_or(Error::NotInvertible)?;
        Ok(Coframe { n, fwd, inv })
    }

    /// Image of an old generator (`ω^k`, or `ω̄^k` when `bar`) in the new coframe.
    fn old_generator(&self, k: usize, bar: bool) -> Form {
        let row = &self.inv[if bar { self.n + k - 1 } else { k - 1 }];
        let mut f = Form::zero();
        for c in 1..=self.n {
            f = f.add(&Form::omega(c).scale(&row[c - 1]));
            f = f.add(&Form::omega_bar(c).scale(&row[self.n + c - 1]));
        }
        f
    }

    fn new_generator(&self, k: usize, bar: bool) -> Form {
        let row = &self.fwd[if bar { self.n + k - 1 } else { k - 1 }];
        let mut f = Form::zero();
        for c in 1..=self.n {
            f = f.add(&Form::omega(c).scale(&row[c - 1]));
            f = f.add(&Form::omega_bar(c).scale(&row[self.n + c - 1]));
        }
        f
    }

    fn transform(&self, f: &Form, image: impl Fn(usize, bool) -> Form) -> Form {
        let mut out = Form::zero();
        for (key, s) in f.terms() {
            let mut t = Form::term(Key::new(0, 0, key.w), s.clone());
            for k in key.holo() {
                t = t.wedge(&image(k, false));
            }
            for k in key.anti() {
                t = t.wedge(&image(k, true));
            }
            out = out.add(&t);
        }
        out
    }

    /// Rewrites a form given in the old coframe in terms of the new one.
    pub fn to_new(&self, f: &Form) -> Form {
        self.transform(f, |k, b| self.old_generator(k, b))
    }

    /// Rewrites a form given in the new coframe in terms of the old one.
    pub fn to_old(&self, f: &Form) -> Form {
        self.transform(f, |k, b| self.new_generator(k, b))
    }
}

/// Structure equations of `p` in the coframe `s`.
pub fn deform(p: &Presentation, s: &CoframeSubstitution) -> Result<Presentation> {
    Ok(deform_with_coframe(p, s)?.0)
}

pub fn deform_with_coframe(
    p: &Presentation,
    s: &CoframeSubstitution,
) -> Result<(Presentation, Coframe)> {
    let cf = Coframe::new(p, s)?;
    let mut d = Vec::with_capacity(p.n);
    for (k, eta) in s.eta.iter().enumerate() {
        let de = cf.to_new(&p.d(eta)?);
        let bad = de.component(0, 2);
        if !bad.is_zero() {
            return Err(Error::NotIntegrable(format!(
                "d h{} has (0,2) part {}",
                k + 1,
                bad
            )));
        }
        d.push(de);
    }
    let twist = p.twist.as_ref().map(|l| cf.to_new(l));
    let mut params = p.params.clone();
    for q in &s.params {
        if p.param(&q.name).is_none() {
            params.push(q.clone());
        }
    }
    let out = Presentation::build(&p.label, p.n, params, d, twist, p.locus.clone())?;
    let report = out.validate();
    if !report.ok() {
        return Err(Error::NotIntegrable(report.failures().join("; ")));
    }
    Ok((out, cf))
}

/// True when the (0,1) part of every new form is ∂̄-closed.
pub fn inserted_pieces_delbar_closed(p: &Presentation, s: &CoframeSubstitution) -> Result<bool> {
    for eta in &s.eta {
        let b = eta.component(0, 1);
        if !b.is_zero() && !p.delbar(&b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the structure equations of two presentations term by term.
pub fn compare(a: &Presentation, b: &Presentation) -> (bool, Vec<String>) {
    if a.n != b.n {
        return (false, vec![format!("dimension {} vs {}", a.n, b.n)]);
    }
    let mut diff = Vec::new();
    for k in 1..=a.n {
        let x = a.d_omega(k).sub(b.d_omega(k));
        if !x.is_zero() {
            diff.push(format!("d w{k}: {} vs {}", a.d_omega(k), b.d_omega(k)));
        }
    }
    let zero = Form::zero();
    let (ta, tb) = (
        a.twist.as_ref().unwrap_or(&zero),
        b.twist.as_ref().unwrap_or(&zero),
    );
    if ta != tb {
        diff.push(format!("twist: {ta} vs {tb}"));
    }
    (diff.is_empty(), diff)
}
