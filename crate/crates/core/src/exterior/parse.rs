//! Text format for presentations and form expressions.
//!
//! ```text
//! label ecccus-t
//! dim 3
//! param t complex
//! d w3 = w1^w2~ - t*w2^w1~
//! ```
//!
//! `wk` is ω^k, `wk~` its conjugate, `f^m` the twist character, `I` the
//! imaginary unit and `tbar` the partner of a complex parameter `t`.
//! `^` between a scalar and an integer literal is a power, otherwise a wedge.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::form::{Form, Key};
use super::presentation::Presentation;
use crate::coeffs::{GaussRat, ParamDecl, ParamKind, Scalar, Substitution, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Gen(usize, bool),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Lexed> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |c: usize, msg: String| Error::Parse {
        line,
        col: col0 + c + 1,
        msg,
    };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, start)),
            '-' => toks.push((Tok::Minus, start)),
            '*' => toks.push((Tok::Star, start)),
            '/' => toks.push((Tok::Slash, start)),
            '^' => toks.push((Tok::Caret, start)),
            '(' => toks.push((Tok::LParen, start)),
            ')' => toks.push((Tok::RParen, start)),
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Num(s.parse().unwrap()), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let gen = s
                    .strip_prefix('w')
                    .filter(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
                    .map(|r| r.parse::<usize>().unwrap());
                match gen {
                    Some(0) => return Err(err(start, "generators are numbered from 1".into())),
                    Some(k) => {
                        let bar = i < chars.len() && chars[i] == '~';
                        if bar {
                            i += 1;
                        }
                        toks.push((Tok::Gen(k, bar), start));
                    }
                    None => toks.push((Tok::Ident(s), start)),
                }
                continue;
            }
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(Lexed {
        toks,
        end: chars.len(),
    })
}

/// Names usable in expressions besides the generators.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    vars: BTreeMap<String, Var>,
    pub n: Option<usize>,
    pub allow_twist: bool,
}

impl Symbols {
    pub fn new() -> Self {
        Symbols {
            allow_twist: true,
            ..Default::default()
        }
    }

    pub fn from_params(params: &[ParamDecl]) -> Self {
        let mut s = Symbols::new();
        for p in params {
            s.declare(p);
        }
        s
    }

    pub fn for_presentation(p: &Presentation) -> Self {
        let mut s = Symbols::from_params(&p.params);
        s.n = Some(p.n);
        s
    }

    pub fn declare(&mut self, p: &ParamDecl) {
        match p.kind {
            ParamKind::Real => {
                self.vars.insert(p.name.clone(), Var::real(&p.name));
            }
            ParamKind::Complex => {
                self.vars.insert(p.name.clone(), Var::holo(&p.name));
                self.vars
                    .insert(format!("{}bar", p.name), Var::anti(&p.name));
            }
        }
    }

    fn lookup(&self, name: &str) -> Option<Var> {
        self.vars.get(name).cloned()
    }
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    line: usize,
    col0: usize,
    syms: &'a Symbols,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let c = self.toks.get(self.pos).map_or(self.end, |t| t.1);
        Error::Parse {
            line: self.line,
            col: self.col0 + c + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Form> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.product()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.product()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Form> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.wedge(&self.power()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.power()?;
                    let s = as_scalar(&d).ok_or_else(|| self.err("division by a non-scalar"))?;
                    if s.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&s.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn int_literal(&mut self) -> Option<i64> {
        let save = self.pos;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        if let Some(Tok::Num(n)) = self.peek().cloned() {
            if let Ok(v) = i64::try_from(&n) {
                self.bump();
                return Some(if neg { -v } else { v });
            }
        }
        self.pos = save;
        None
    }

    fn power(&mut self) -> Result<Form> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            if acc.degree() == Some(0) || acc.is_zero() {
                if let Some(e) = self.int_literal() {
                    acc = self.raise(&acc, e)?;
                    continue;
                }
            }
            acc = acc.wedge(&self.atom()?);
        }
        Ok(acc)
    }

    fn raise(&self, base: &Form, e: i64) -> Result<Form> {
        let e32 = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
        if let Some(s) = as_scalar(base) {
            if s.is_zero() && e < 0 {
                return Err(self.err("negative power of zero"));
            }
            return Ok(Form::scalar(s.pow(e32)));
        }
        let mut it = base.terms();
        if let (Some((k, c)), None) = (it.next(), it.next()) {
            if k.i == 0 && k.j == 0 {
                let c = if c.is_zero() && e < 0 {
                    return Err(self.err("negative power of zero"));
                } else {
                    c.pow(e32)
                };
                return Ok(Form::term(Key::new(0, 0, k.w * e32), c));
            }
        }
        Err(self.err("only monomial scalars can be raised to a power"))
    }

    fn atom(&mut self) -> Result<Form> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Form::scalar(Scalar::from_gauss(GaussRat::from_rational(
                BigRational::from_integer(n),
            )))),
            Some(Tok::Gen(k, bar)) => {
                if let Some(n) = self.syms.n {
                    if k > n {
                        self.pos -= 1;
                        return Err(self.err(format!("generator w{k} exceeds dimension {n}")));
                    }
                }
                if k > super::form::MAX_GENERATORS {
                    self.pos -= 1;
                    return Err(self.err("generator index too large"));
                }
                Ok(if bar {
                    Form::omega_bar(k)
                } else {
                    Form::omega(k)
                })
            }
            Some(Tok::Ident(name)) => {
                if name == "I" {
                    return Ok(Form::scalar(Scalar::i()));
                }
                if name == "f" && self.syms.allow_twist {
                    return Ok(Form::twist(1));
                }
                match self.syms.lookup(&name) {
                    Some(v) => Ok(Form::scalar(Scalar::var(v))),
                    None => {
                        self.pos -= 1;
                        Err(Error::UnknownParameter(name))
                    }
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Minus) => Ok(self.power()?.neg()),
            _ => {
                self.pos = self.pos.saturating_sub(1).min(self.toks.len());
                Err(self.err("expected a term"))
            }
        }
    }
}

fn as_scalar(f: &Form) -> Option<Scalar> {
    if f.is_zero() {
        return Some(Scalar::zero());
    }
    let mut it = f.terms();
    let (k, c) = it.next()?;
    (it.next().is_none() && *k == Key::new(0, 0, 0)).then(|| c.clone())
}

fn parse_at(src: &str, syms: &Symbols, line: usize, col0: usize) -> Result<Form> {
    let lx = lex(src, line, col0)?;
    let mut p = Parser {
        toks: &lx.toks,
        pos: 0,
        end: lx.end,
        line,
        col0,
        syms,
    };
    if lx.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let f = p.expr()?;
    if p.pos < lx.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a form expression.
pub fn parse_form(src: &str, syms: &Symbols) -> Result<Form> {
    parse_at(src, syms, 1, 0)
}

/// Parses a scalar expression (a form of degree 0 without twist).
pub fn parse_scalar(src: &str, syms: &Symbols) -> Result<Scalar> {
    let f = parse_form(src, syms)?;
    as_scalar(&f).ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: format!("`{src}` is not a scalar"),
    })
}

/// Parses `name = expr` pairs separated by commas into a substitution, e.g.
/// `tbar=-t`.
pub fn parse_substitution(src: &str, syms: &Symbols) -> Result<Substitution> {
    let mut sub = Substitution::new();
    for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = part.split_once('=').ok_or_else(|| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("expected `name=value` in `{part}`"),
        })?;
        let v = syms
            .lookup(lhs.trim())
            .ok_or_else(|| Error::UnknownParameter(lhs.trim().to_string()))?;
        sub.insert(v, parse_scalar(rhs.trim(), syms)?);
    }
    Ok(sub)
}

pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let mut label = String::new();
    let mut n: Option<usize> = None;
    let mut params: Vec<ParamDecl> = Vec::new();
    let mut twist_src: Option<(usize, usize, String)> = None;
    let mut locus_src: Vec<(usize, usize, String, String)> = Vec::new();
    let mut eqs: Vec<(usize, usize, usize, String)> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let text = raw.split('#').next().unwrap();
        let trimmed = text.trim_start();
        let indent = text.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        let perr = |col: usize, msg: String| Error::Parse {
            line,
            col: col + 1,
            msg,
        };
        let (kw, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest_col = indent
            + kw.len()
            + (rest.len() - rest.trim_start().len())
            + usize::from(!rest.is_empty());
        let rest = rest.trim();
        match kw {
            "label" => label = rest.to_string(),
            "dim" => {
                let v: usize = rest
                    .parse()
                    .map_err(|_| perr(rest_col, format!("bad dimension `{rest}`")))?;
                if v == 0 {
                    return Err(perr(rest_col, "dimension must be positive".into()));
                }
                if v > super::form::MAX_GENERATORS {
                    return Err(perr(
                        rest_col,
                        format!("dimension above {}", super::form::MAX_GENERATORS),
                    ));
                }
                n = Some(v);
            }
            "param" => {
                let mut it = rest.split_whitespace();
                let name = it
                    .next()
                    .ok_or_else(|| perr(rest_col, "missing parameter name".into()))?;
                let kind = match it.next() {
                    Some("real") => ParamKind::Real,
                    Some("complex") => ParamKind::Complex,
                    other => {
                        return Err(perr(rest_col, format!("unknown parameter kind {other:?}")))
                    }
                };
                let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                    && name != "I"
                    && name != "f"
                    && !(name.starts_with('w') && name[1..].chars().all(|c| c.is_ascii_digit()));
                if !valid {
                    return Err(perr(rest_col, format!("invalid parameter name `{name}`")));
                }
                if params.iter().any(|p| p.name == name) {
                    return Err(perr(rest_col, format!("parameter `{name}` declared twice")));
                }
                params.push(ParamDecl {
                    name: name.to_string(),
                    kind,
                });
            }
            "twist" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(rest_col, "expected `twist lambda = ...`".into()))?;
                if lhs.trim() != "lambda" {
                    return Err(perr(rest_col, "expected `lambda`".into()));
                }
                let col = rest_col + lhs.len() + 1;
                twist_src = Some((line, col, rhs.to_string()));
            }
            "locus" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(rest_col, "expected `locus v = expr`".into()))?;
                locus_src.push((
                    line,
                    rest_col + lhs.len() + 1,
                    lhs.trim().to_string(),
                    rhs.to_string(),
                ));
            }
            "d" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(rest_col, "expected `d wk = ...`".into()))?;
                let k: usize = lhs
                    .trim()
                    .strip_prefix('w')
                    .and_then(|r| r.parse().ok())
                    .filter(|&k| k > 0)
                    .ok_or_else(|| perr(rest_col, format!("bad generator `{}`", lhs.trim())))?;
                eqs.push((line, rest_col + lhs.len() + 1, k, rhs.to_string()));
            }
            other => return Err(perr(indent, format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing `dim` line".into(),
    })?;
    let mut syms = Symbols::from_params(&params);
    syms.n = Some(n);
    let mut d = vec![Form::zero(); n];
    let mut seen = vec![false; n];
    for (line, col, k, rhs) in eqs {
        if k > n {
            return Err(Error::DimensionMismatch(format!(
                "line {line}: d w{k} with dim {n}"
            )));
        }
        if seen[k - 1] {
            return Err(Error::Parse {
                line,
                col,
                msg: format!("d w{k} given twice"),
            });
        }
        seen[k - 1] = true;
        let f = parse_at(&rhs, &syms, line, col)?;
        if !f.is_zero() && f.degree() != Some(2) {
            return Err(Error::Parse {
                line,
                col: col + 1,
                msg: format!("d w{k} must be a 2-form"),
            });
        }
        d[k - 1] = f;
    }
    let twist = match twist_src {
        Some((line, col, rhs)) => Some(parse_at(&rhs, &syms, line, col)?),
        None => None,
    };
    let mut locus = Substitution::new();
    for (line, col, lhs, rhs) in locus_src {
        let v = syms
            .lookup(&lhs)
            .ok_or(Error::UnknownParameter(lhs.clone()))?;
        let f = parse_at(&rhs, &syms, line, col)?;
        let s = as_scalar(&f).ok_or(Error::Parse {
            line,
            col,
            msg: "locus value must be a scalar".into(),
        })?;
        locus.insert(v, s);
    }
    Presentation::build(&label, n, params, d, twist, locus)
}

/// Parses a conjugate-pair name like `tbar` into its variable, if declared.
pub fn lookup_var(syms: &Symbols, name: &str) -> Option<Var> {
    syms.lookup(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let mut syms = Symbols::new();
        syms.declare(&ParamDecl::complex("t"));
        let f = parse_form("2*t^2*w1", &syms).unwrap();
        let t = Scalar::var(Var::holo("t"));
        assert_eq!(f, Form::omega(1).scale(&(&Scalar::from_int(2) * &t.pow(2))));
        let g = parse_form("t*w2^w1~", &syms).unwrap();
        assert_eq!(g, Form::omega(2).wedge(&Form::omega_bar(1)).scale(&t));
        let h = parse_form("f^-1*w2~^w3", &syms).unwrap();
        assert_eq!(
            h,
            Form::twist(-1)
                .wedge(&Form::omega_bar(2))
                .wedge(&Form::omega(3))
        );
        assert!(matches!(
            parse_form("q*w1", &syms),
            Err(Error::UnknownParameter(_))
        ));
    }

    #[test]
    fn zero_after_normalization() {
        let p = parse_presentation("dim 3\nd w3 = w1^w1\n").unwrap();
        assert!(p.d_omega(3).is_zero());
    }
}
