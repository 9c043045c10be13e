use std::collections::BTreeMap;
use std::fmt;

use super::poly::Poly;
use super::scalar::Scalar;
use super::var::{ParamDecl, Var};
use crate::error::{Error, Result};

/// Simultaneous replacement of indeterminates by scalars.
///
/// Also used for reality loci, e.g. `tbar -> -t` encodes `Re t = 0`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Var, Scalar>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn insert(&mut self, v: Var, value: Scalar) {
        self.map.insert(v, value);
    }

    pub fn with(mut self, v: Var, value: Scalar) -> Self {
        self.insert(v, value);
        self
    }

    pub fn get(&self, v: &Var) -> Option<&Scalar> {
        self.map.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Scalar)> {
        self.map.iter()
    }

    pub fn apply_poly(&self, p: &Poly) -> Scalar {
        if self.map.is_empty() || p.vars().iter().all(|v| !self.map.contains_key(v)) {
            return Scalar::from_poly(p.clone());
        }
        let mut cache: BTreeMap<(Var, u32), Scalar> = BTreeMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in p.terms() {
            let mut t = Scalar::from_gauss(c.clone());
            for (v, e) in m.pairs() {
                let f = match self.map.get(v) {
                    Some(val) => cache
                        .entry((v.clone(), *e))
                        .or_insert_with(|| val.pow(*e as i32))
                        .clone(),
                    None => Scalar::var(v.clone()).pow(*e as i32),
                };
                t = &t * &f;
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Applies the substitution; fails if the denominator becomes zero.
    pub fn apply(&self, s: &Scalar) -> Result<Scalar> {
        if self.map.is_empty() {
            return Ok(s.clone());
        }
        let num = self.apply_poly(s.numer());
        if s.is_polynomial() {
            return Ok(num);
        }
        let den = self.apply_poly(s.denom());
        if den.is_zero() {
            return Err(Error::DenominatorVanishes(format!(
                "{} under {}",
                s.denom(),
                self
            )));
        }
        Ok(&num / &den)
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &Substitution) -> Result<Substitution> {
        let mut out = Substitution::new();
        for (v, s) in &self.map {
            out.insert(v.clone(), other.apply(s)?);
        }
        for (v, s) in &other.map {
            if !out.map.contains_key(v) {
                out.insert(v.clone(), s.clone());
            }
        }
        Ok(out)
    }

    /// Conjugation followed by this substitution; the involution of a locus.
    pub fn conj(&self, s: &Scalar) -> Scalar {
        self.apply(&s.conj())
            .expect("conjugate of a valid scalar stays valid")
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (v, s)) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}={s}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parameter values respecting conjugation: the partner of a complex
/// parameter always receives the conjugate value.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Assignment {
    sub: Substitution,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// Sets a parameter; its partner is set to the conjugate value.
    /// A real parameter must receive a value fixed by conjugation.
    pub fn set(&mut self, p: &ParamDecl, value: Scalar) -> Result<()> {
        let c = value.conj();
        match p.kind {
            super::var::ParamKind::Real => {
                if c != value {
                    return Err(Error::Invalid(format!(
                        "real parameter {} assigned non-real value {}",
                        p.name, value
                    )));
                }
                self.sub.insert(p.var(), value);
            }
            super::var::ParamKind::Complex => {
                self.sub.insert(p.var(), value);
                self.sub.insert(p.partner(), c);
            }
        }
        Ok(())
    }

    pub fn with(mut self, p: &ParamDecl, value: Scalar) -> Result<Self> {
        self.set(p, value)?;
        Ok(self)
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sub
    }

    pub fn is_empty(&self) -> bool {
        self.sub.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sub)
    }
}

pub fn specialize(s: &Scalar, a: &Assignment) -> Result<Scalar> {
    a.sub.apply(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_examples() {
        let t = ParamDecl::complex("t");
        let tt = &Scalar::var(t.var()) * &Scalar::var(t.partner());
        let a = Assignment::new()
            .with(&t, Scalar::from_ratio(1, 2))
            .unwrap();
        assert_eq!(specialize(&tt, &a).unwrap(), Scalar::from_ratio(1, 4));
        let pole = &Scalar::one() / &(&Scalar::one() - &tt);
        let b = Assignment::new().with(&t, Scalar::one()).unwrap();
        assert!(matches!(
            specialize(&pole, &b),
            Err(Error::DenominatorVanishes(_))
        ));
        let r = ParamDecl::real("r");
        let s = ParamDecl::real("s");
        let e = &Scalar::from_int(-24) * &(&Scalar::var(r.var()) * &Scalar::var(s.var()).pow(3));
        let a = Assignment::new()
            .with(&r, Scalar::one())
            .unwrap()
            .with(&s, Scalar::from_int(-1))
            .unwrap();
        assert_eq!(specialize(&e, &a).unwrap(), Scalar::from_int(24));
        assert!(Assignment::new().set(&r, Scalar::i()).is_err());
    }

    #[test]
    fn locus_makes_real_part_vanish() {
        let t = Var::holo("t");
        let sum = &Scalar::var(t.clone()) + &Scalar::var(t.conj());
        let locus = Substitution::new().with(t.conj(), -Scalar::var(t.clone()));
        assert!(locus.apply(&sum).unwrap().is_zero());
        assert_eq!(locus.conj(&Scalar::var(t.clone())), -Scalar::var(t.clone()));
    }
}
