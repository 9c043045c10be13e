use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::{Scalar, Substitution};
use crate::error::Result;

/// Index data of a basis term `f^w ω^I ∧ ω̄^J`, with `I` and `J` stored as
/// bitmasks (bit `k-1` stands for generator `k`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Key {
    pub i: u64,
    pub j: u64,
    pub w: i32,
}

pub const MAX_GENERATORS: usize = 64;

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1).map(|b| b + 1)
}

/// Sign of concatenating two ascending index sets, or `None` if they meet.
fn merge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inv = 0u32;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        inv += (b & ((1u64 << x) - 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

impl Key {
    pub fn new(i: u64, j: u64, w: i32) -> Self {
        Key { i, j, w }
    }

    pub fn p(&self) -> usize {
        self.i.count_ones() as usize
    }

    pub fn q(&self) -> usize {
        self.j.count_ones() as usize
    }

    pub fn degree(&self) -> usize {
        self.p() + self.q()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn holo(&self) -> Vec<usize> {
        bits(self.i).collect()
    }

    pub fn anti(&self) -> Vec<usize> {
        bits(self.j).collect()
    }

    /// `self ∧ o` as a signed key, or `None` if an index repeats.
    pub fn wedge(&self, o: &Key) -> Option<(i32, Key)> {
        let si = merge_sign(self.i, o.i)?;
        let sj = merge_sign(self.j, o.j)?;
        let cross = if self.q() * o.p() % 2 == 0 { 1 } else { -1 };
        Some((
            si * sj * cross,
            Key::new(self.i | o.i, self.j | o.j, self.w + o.w),
        ))
    }

    /// Conjugate key and sign: `conj(ω^I ∧ ω̄^J) = (-1)^{|I||J|} ω^J ∧ ω̄^I`.
    pub fn conj(&self) -> (i32, Key) {
        let s = if self.p() * self.q() % 2 == 0 { 1 } else { -1 };
        (s, Key::new(self.j, self.i, -self.w))
    }
}

impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| o.p().cmp(&self.p()))
            .then_with(|| self.holo().cmp(&o.holo()))
            .then_with(|| self.anti().cmp(&o.anti()))
            .then_with(|| self.w.cmp(&o.w))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A twist-weighted exterior form with scalar coefficients, stored sparsely.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Form {
    terms: BTreeMap<Key, Scalar>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn scalar(s: Scalar) -> Self {
        Form::term(Key::new(0, 0, 0), s)
    }

    pub fn one() -> Self {
        Form::scalar(Scalar::one())
    }

    pub fn term(k: Key, s: Scalar) -> Self {
        let mut f = Form::zero();
        if !s.is_zero() {
            f.terms.insert(k, s);
        }
        f
    }

    /// The twist character `f^w`.
    pub fn twist(w: i32) -> Self {
        Form::term(Key::new(0, 0, w), Scalar::one())
    }

    /// ω^k (1-based).
    pub fn omega(k: usize) -> Self {
        Form::term(Key::new(1 << (k - 1), 0, 0), Scalar::one())
    }

    /// ω^{k̄} (1-based).
    pub fn omega_bar(k: usize) -> Self {
        Form::term(Key::new(0, 1 << (k - 1), 0), Scalar::one())
    }

    /// `c · ω^{i₁} ∧ … ∧ ω^{j̄₁} ∧ …` for indices in the given order.
    pub fn mono(holo: &[usize], anti: &[usize], c: Scalar) -> Self {
        let mut f = Form::scalar(c);
        for &k in holo {
            f = f.wedge(&Form::omega(k));
        }
        for &k in anti {
            f = f.wedge(&Form::omega_bar(k));
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &Key) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, k: Key, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                let v = &*c + &s;
                if v.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *c = v;
                }
            }
            None => {
                self.terms.insert(k, s);
            }
        }
    }

    pub fn add(&self, o: &Form) -> Form {
        let mut out = self.clone();
        for (k, s) in &o.terms {
            out.add_term(*k, s.clone());
        }
        out
    }

    pub fn sub(&self, o: &Form) -> Form {
        let mut out = self.clone();
        for (k, s) in &o.terms {
            out.add_term(*k, -s);
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            terms: self.terms.iter().map(|(k, s)| (*k, -s)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        Form {
            terms: self.terms.iter().map(|(k, s)| (*k, s * c)).collect(),
        }
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut out = Form::zero();
        for (k1, s1) in &self.terms {
            for (k2, s2) in &o.terms {
                if let Some((sign, k)) = k1.wedge(k2) {
                    let v = s1 * s2;
                    out.add_term(k, if sign < 0 { -v } else { v });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Form {
        let mut acc = Form::one();
        for _ in 0..e {
            acc = acc.wedge(self);
        }
        acc
    }

    /// Plain conjugation (no reality locus).
    pub fn conj(&self) -> Form {
        let mut out = Form::zero();
        for (k, s) in &self.terms {
            let (sign, ck) = k.conj();
            let c = s.conj();
            out.add_term(ck, if sign < 0 { -c } else { c });
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Form {
        let mut out = Form::zero();
        for (k, s) in &self.terms {
            out.add_term(*k, f(s));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Form> {
        let mut out = Form::zero();
        for (k, s) in &self.terms {
            out.add_term(*k, f(s)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Form> {
        if sub.is_empty() {
            return Ok(self.clone());
        }
        self.try_map_coeffs(|s| sub.apply(s))
    }

    /// The common bidegree of all terms, if there is one.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|k| k.bidegree());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.degree());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn component(&self, p: usize, q: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.bidegree() == (p, q))
                .map(|(k, s)| (*k, s.clone()))
                .collect(),
        }
    }

    pub fn degree_part(&self, d: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, s)| (*k, s.clone()))
                .collect(),
        }
    }

    pub fn weight_part(&self, w: i32) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.w == w)
                .map(|(k, s)| (*k, s.clone()))
                .collect(),
        }
    }

    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .map(|k| 64 - (k.i | k.j).leading_zeros() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Shifts all generator indices up by `s`.
    pub fn shift(&self, s: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (Key::new(k.i << s, k.j << s, k.w), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `ω^{1…n} ∧ ω^{1̄…n̄}` (untwisted).
    pub fn top_coeff(&self, n: usize) -> Scalar {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.coeff(&Key::new(all, all, 0))
    }
}

pub(crate) fn fmt_coeff(c: &Scalar) -> (bool, Option<String>) {
    let num = c.numer();
    let single = num.terms().len() == 1;
    let neg = single && num.terms()[0].1.is_negative_display();
    let a = if neg { -c } else { c.clone() };
    if a.is_one() {
        return (neg, None);
    }
    let body = if a.is_polynomial() {
        let p = a.numer();
        if p.terms().len() > 1 {
            format!("({p})")
        } else {
            p.to_string()
        }
    } else {
        a.to_string()
    };
    (neg, Some(body))
}

pub(crate) fn fmt_key(k: &Key) -> String {
    let mut parts: Vec<String> = Vec::new();
    if k.w != 0 {
        parts.push(format!("f^{}", k.w));
    }
    let gens: Vec<String> = bits(k.i)
        .map(|x| format!("w{x}"))
        .chain(bits(k.j).map(|x| format!("w{x}~")))
        .collect();
    if !gens.is_empty() {
        parts.push(gens.join("^"));
    }
    parts.join("*")
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let (neg, body) = fmt_coeff(c);
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let key = fmt_key(k);
            match (body, key.is_empty()) {
                (None, true) => write!(f, "1")?,
                (None, false) => write!(f, "{key}")?,
                (Some(b), true) => write!(f, "{b}")?,
                (Some(b), false) => write!(f, "{b}*{key}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let a = Form::omega(1).wedge(&Form::omega_bar(2));
        let b = Form::omega_bar(2).wedge(&Form::omega(1));
        assert_eq!(a, b.neg());
        assert!(Form::omega(1).wedge(&Form::omega(1)).is_zero());
        let x = Form::omega(2).wedge(&Form::omega(1));
        assert_eq!(x, Form::omega(1).wedge(&Form::omega(2)).neg());
    }

    #[test]
    fn conj_is_involution() {
        let f = Form::mono(&[1, 3], &[2], Scalar::i());
        assert_eq!(f.conj().conj(), f);
        let g = Form::omega(1)
            .wedge(&Form::omega_bar(1))
            .scale(&Scalar::i());
        assert_eq!(g.conj(), g);
    }

    #[test]
    fn printing() {
        let f = Form::mono(&[1], &[1], Scalar::i())
            .add(&Form::mono(&[2], &[3], Scalar::one()))
            .sub(&Form::mono(&[3], &[2], Scalar::one()));
        assert_eq!(f.to_string(), "I*w1^w1~ + w2^w3~ - w3^w2~");
    }
}
