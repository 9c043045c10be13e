use std::fmt;

use serde::Serialize;

use super::form::{bits, Form, Key, MAX_GENERATORS};
use crate::coeffs::{Assignment, ParamDecl, ParamKind, Scalar, Substitution, Var};
use crate::error::{Error, Result};

/// Complex structure equations `dω^k` on `n` generators, with optional twist
/// 1-form `λ` (so that `d f = f λ`) and an optional reality locus.
///
/// The locus is a substitution applied after every conjugation; `tbar -> -t`
/// restricts to `Re t = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Presentation {
    pub label: String,
    pub n: usize,
    pub params: Vec<ParamDecl>,
    d_omega: Vec<Form>,
    d_omega_bar: Vec<Form>,
    pub twist: Option<Form>,
    pub locus: Substitution,
}

impl Presentation {
    pub fn new(label: &str, n: usize, params: Vec<ParamDecl>, d_omega: Vec<Form>) -> Result<Self> {
        Presentation::build(label, n, params, d_omega, None, Substitution::new())
    }

    pub fn build(
        label: &str,
        n: usize,
        params: Vec<ParamDecl>,
        d_omega: Vec<Form>,
        twist: Option<Form>,
        locus: Substitution,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "a presentation needs at least one generator".into(),
            ));
        }
        if n > MAX_GENERATORS {
            return Err(Error::DimensionMismatch(format!(
                "at most {MAX_GENERATORS} generators"
            )));
        }
        if d_omega.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} equations for {} generators",
                d_omega.len(),
                n
            )));
        }
        for (k, f) in d_omega.iter().enumerate() {
            if f.max_index() > n {
                return Err(Error::DimensionMismatch(format!(
                    "d w{} uses a generator beyond {}",
                    k + 1,
                    n
                )));
            }
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(Error::Invalid(format!("d w{} is not a 2-form", k + 1)));
            }
            if f.terms().any(|(key, _)| key.w != 0) {
                return Err(Error::Invalid(format!("d w{} has twisted terms", k + 1)));
            }
        }
        let d_omega: Vec<Form> = d_omega
            .iter()
            .map(|f| f.substitute(&locus))
            .collect::<Result<_>>()?;
        let twist = twist.map(|t| t.substitute(&locus)).transpose()?;
        let d_omega_bar = d_omega.iter().map(|f| conj_in(&locus, f)).collect();
        Ok(Presentation {
            label: label.to_string(),
            n,
            params,
            d_omega,
            d_omega_bar,
            twist,
            locus,
        })
    }

    pub fn d_omega(&self, k: usize) -> &Form {
        &self.d_omega[k - 1]
    }

    pub fn equations(&self) -> &[Form] {
        &self.d_omega
    }

    pub fn param(&self, name: &str) -> Option<&ParamDecl> {
        self.params.iter().find(|p| p.name == name)
    }

    pub fn param_vars(&self) -> Vec<Var> {
        self.params.iter().flat_map(|p| p.vars()).collect()
    }

    pub fn is_parametric(&self) -> bool {
        let vars = self.param_vars();
        self.d_omega.iter().chain(self.twist.iter()).any(|f| {
            f.terms()
                .any(|(_, s)| s.vars().iter().any(|v| vars.contains(v)))
        })
    }

    /// Conjugation honoring the reality locus.
    pub fn conj(&self, f: &Form) -> Form {
        conj_in(&self.locus, f)
    }

    pub fn conj_scalar(&self, s: &Scalar) -> Scalar {
        self.locus.conj(s)
    }

    pub fn is_real(&self, f: &Form) -> bool {
        self.conj(f) == self.on_locus(f)
    }

    /// `f` with the reality locus substituted into its coefficients.
    pub fn on_locus(&self, f: &Form) -> Form {
        if self.locus.is_empty() {
            f.clone()
        } else {
            f.map_coeffs(|s| {
                self.locus
                    .apply(s)
                    .expect("locus keeps denominators nonzero")
            })
        }
    }

    pub fn volume_key(&self) -> Key {
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        Key::new(all, all, 0)
    }

    /// `ω^{1…n} ∧ ω^{1̄…n̄}`.
    pub fn volume(&self) -> Form {
        Form::term(self.volume_key(), Scalar::one())
    }

    fn d_generator(&self, holo: bool, k: usize) -> &Form {
        if holo {
            &self.d_omega[k - 1]
        } else {
            &self.d_omega_bar[k - 1]
        }
    }

    /// `d` of the basis term with key `k` (coefficient 1).
    pub fn d_key(&self, k: &Key) -> Result<Form> {
        let mut out = Form::zero();
        if k.w != 0 {
            let lambda = self.twist.as_ref().ok_or(Error::TwistWithoutLambda)?;
            let rest = Form::term(Key::new(k.i, k.j, 0), Scalar::one());
            out = lambda.wedge(&rest).scale(&Scalar::from_int(k.w as i64));
        }
        let gens: Vec<(bool, usize)> = bits(k.i)
            .map(|x| (true, x))
            .chain(bits(k.j).map(|x| (false, x)))
            .collect();
        for (pos, &(h, x)) in gens.iter().enumerate() {
            let dg = self.d_generator(h, x);
            if dg.is_zero() {
                continue;
            }
            let (mut pi, mut pj) = (0u64, 0u64);
            for &(h2, y) in &gens[..pos] {
                if h2 {
                    pi |= 1 << (y - 1)
                } else {
                    pj |= 1 << (y - 1)
                }
            }
            let (mut si, mut sj) = (0u64, 0u64);
            for &(h2, y) in &gens[pos + 1..] {
                if h2 {
                    si |= 1 << (y - 1)
                } else {
                    sj |= 1 << (y - 1)
                }
            }
            let prefix = Form::term(Key::new(pi, pj, 0), Scalar::one());
            let suffix = Form::term(Key::new(si, sj, 0), Scalar::one());
            let t = prefix.wedge(dg).wedge(&suffix);
            out = if pos % 2 == 0 {
                out.add(&t)
            } else {
                out.sub(&t)
            };
        }
        if k.w != 0 {
            out = out.map_keys_weight(k.w);
        }
        Ok(out)
    }

    pub fn d(&self, a: &Form) -> Result<Form> {
        let mut out = Form::zero();
        for (k, s) in a.terms() {
            let dk = self.d_key(k)?;
            for (k2, s2) in dk.terms() {
                out.add_term(*k2, s * s2);
            }
        }
        Ok(self.on_locus(&out))
    }

    fn split_d(&self, a: &Form) -> Result<(Form, Form, (usize, usize))> {
        let (p, q) = match a.bidegree() {
            Some(b) => b,
            None if a.is_zero() => return Ok((Form::zero(), Form::zero(), (0, 0))),
            None => return Err(Error::MixedBidegree),
        };
        let da = self.d(a)?;
        Ok((da.component(p + 1, q), da.component(p, q + 1), (p, q)))
    }

    pub fn del(&self, a: &Form) -> Result<Form> {
        Ok(self.split_d(a)?.0)
    }

    pub fn delbar(&self, a: &Form) -> Result<Form> {
        Ok(self.split_d(a)?.1)
    }

    /// Applies a substitution to every coefficient (parameters or locus).
    pub fn specialize(&self, sub: &Substitution) -> Result<Presentation> {
        let d: Vec<Form> = self
            .d_omega
            .iter()
            .map(|f| f.substitute(sub))
            .collect::<Result<_>>()?;
        let twist = self.twist.as_ref().map(|t| t.substitute(sub)).transpose()?;
        let locus = if self.locus.is_empty() {
            sub.clone()
        } else {
            self.locus.then(sub)?
        };
        let params = self
            .params
            .iter()
            .filter(|p| p.vars().iter().any(|v| sub.get(v).is_none()))
            .cloned()
            .collect();
        let locus = strip_assigned(&locus, sub);
        Presentation::build(&self.label, self.n, params, d, twist, locus)
    }

    pub fn assign(&self, a: &Assignment) -> Result<Presentation> {
        self.specialize(a.substitution())
    }

    /// Restricts to a reality locus such as `tbar -> -t`.
    pub fn with_locus(&self, locus: &Substitution) -> Result<Presentation> {
        let merged = if self.locus.is_empty() {
            locus.clone()
        } else {
            self.locus.then(locus)?
        };
        Presentation::build(
            &self.label,
            self.n,
            self.params.clone(),
            self.d_omega.clone(),
            self.twist.clone(),
            merged,
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut jacobi = Vec::new();
        for k in 1..=self.n {
            let dd = self.d(&self.d_omega[k - 1]);
            let ok = matches!(&dd, Ok(f) if f.is_zero());
            jacobi.push(GeneratorCheck {
                generator: format!("w{k}"),
                ok,
                residual: match dd {
                    Ok(f) => f.to_string(),
                    Err(e) => e.to_string(),
                },
            });
        }
        let mut no_02 = Vec::new();
        for k in 1..=self.n {
            let c = self.d_omega[k - 1].component(0, 2);
            no_02.push(GeneratorCheck {
                generator: format!("w{k}"),
                ok: c.is_zero(),
                residual: c.to_string(),
            });
        }
        let twist = self.twist.as_ref().map(|l| {
            let closed = matches!(self.d(l), Ok(f) if f.is_zero());
            let imaginary = self.conj(l) == l.neg();
            let one_form =
                l.is_zero() || (l.degree() == Some(1) && l.terms().all(|(k, _)| k.w == 0));
            TwistCheck {
                closed,
                imaginary,
                one_form,
            }
        });
        let rationality = if self.is_parametric() {
            Rationality::ConditionalOnParameters
        } else {
            Rationality::Rational
        };
        ValidationReport {
            label: self.label.clone(),
            n: self.n,
            jacobi,
            no_02,
            twist,
            rationality,
        }
    }

    /// Direct sum with `other`, whose generators are shifted past ours.
    pub fn product(&self, other: &Presentation) -> Result<Presentation> {
        for p in &other.params {
            if self.param(&p.name).is_some() {
                return Err(Error::Invalid(format!(
                    "parameter {} declared in both factors",
                    p.name
                )));
            }
        }
        if self.twist.is_some() || other.twist.is_some() {
            return Err(Error::Unsupported(
                "product of twisted presentations".into(),
            ));
        }
        let mut d = self.d_omega.clone();
        d.extend(other.d_omega.iter().map(|f| f.shift(self.n)));
        let mut params = self.params.clone();
        params.extend(other.params.iter().cloned());
        let mut locus = self.locus.clone();
        for (v, s) in other.locus.iter() {
            locus.insert(v.clone(), s.clone());
        }
        Presentation::build(
            &format!("{}x{}", self.label, other.label),
            self.n + other.n,
            params,
            d,
            None,
            locus,
        )
    }

    pub fn torus(n: usize) -> Result<Presentation> {
        Presentation::new(&format!("torus-{n}"), n, Vec::new(), vec![Form::zero(); n])
    }
}

fn strip_assigned(locus: &Substitution, sub: &Substitution) -> Substitution {
    let mut out = Substitution::new();
    for (v, s) in locus.iter() {
        if sub.get(v).is_none() {
            out.insert(v.clone(), s.clone());
        }
    }
    out
}

pub(crate) fn conj_in(locus: &Substitution, f: &Form) -> Form {
    let c = f.conj();
    if locus.is_empty() {
        c
    } else {
        c.map_coeffs(|s| locus.apply(s).expect("locus keeps denominators nonzero"))
    }
}

impl Form {
    pub(crate) fn map_keys_weight(&self, w: i32) -> Form {
        let mut out = Form::zero();
        for (k, s) in self.terms() {
            out.add_term(Key::new(k.i, k.j, k.w + w), s.clone());
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub generator: String,
    pub ok: bool,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TwistCheck {
    pub closed: bool,
    pub imaginary: bool,
    pub one_form: bool,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub enum Rationality {
    /// Every structure constant lies in ℚ(i).
    Rational,
    /// Structure constants are rational functions of the parameters; they are
    /// in ℚ(i) exactly at parameter values in ℚ(i).
    ConditionalOnParameters,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub label: String,
    pub n: usize,
    pub jacobi: Vec<GeneratorCheck>,
    pub no_02: Vec<GeneratorCheck>,
    pub twist: Option<TwistCheck>,
    pub rationality: Rationality,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.jacobi.iter().all(|c| c.ok)
            && self.no_02.iter().all(|c| c.ok)
            && self
                .twist
                .as_ref()
                .is_none_or(|t| t.closed && t.imaginary && t.one_form)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.jacobi {
            if !c.ok {
                out.push(format!("d^2 {} = {}", c.generator, c.residual));
            }
        }
        for c in &self.no_02 {
            if !c.ok {
                out.push(format!("d {} has (0,2) part {}", c.generator, c.residual));
            }
        }
        if let Some(t) = &self.twist {
            if !t.closed {
                out.push("twist 1-form is not closed".into());
            }
            if !t.imaginary {
                out.push("twist 1-form is not imaginary".into());
            }
            if !t.one_form {
                out.push("twist is not an untwisted 1-form".into());
            }
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_empty() {
            writeln!(f, "label {}", self.label)?;
        }
        writeln!(f, "dim {}", self.n)?;
        for p in &self.params {
            let kind = match p.kind {
                ParamKind::Real => "real",
                ParamKind::Complex => "complex",
            };
            writeln!(f, "param {} {}", p.name, kind)?;
        }
        if let Some(l) = &self.twist {
            writeln!(f, "twist lambda = {l}")?;
        }
        for (v, s) in self.locus.iter() {
            writeln!(f, "locus {v} = {s}")?;
        }
        for (k, e) in self.d_omega.iter().enumerate() {
            writeln!(f, "d w{} = {}", k + 1, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
