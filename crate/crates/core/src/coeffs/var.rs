use std::fmt;
use std::sync::Arc;

/// How an indeterminate behaves under complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// Fixed by conjugation.
    Real,
    /// Holomorphic half of a conjugate pair (`t`).
    Holo,
    /// Anti-holomorphic half of a conjugate pair (`tbar`).
    Anti,
}

/// An indeterminate of the coefficient field.
///
/// A complex parameter `t` is the pair `Var::holo("t")`, `Var::anti("t")`;
/// the two halves are independent indeterminates and conjugation swaps them.
/// Variables are ordered by name, then kind, which fixes the monomial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    kind: VarKind,
}

impl Var {
    pub fn new(name: &str, kind: VarKind) -> Self {
        Var {
            name: Arc::from(name),
            kind,
        }
    }

    pub fn real(name: &str) -> Self {
        Var::new(name, VarKind::Real)
    }

    pub fn holo(name: &str) -> Self {
        Var::new(name, VarKind::Holo)
    }

    pub fn anti(name: &str) -> Self {
        Var::new(name, VarKind::Anti)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    /// The conjugate indeterminate; an involution.
    pub fn conj(&self) -> Var {
        let kind = match self.kind {
            VarKind::Real => VarKind::Real,
            VarKind::Holo => VarKind::Anti,
            VarKind::Anti => VarKind::Holo,
        };
        Var {
            name: self.name.clone(),
            kind,
        }
    }

    pub fn is_real(&self) -> bool {
        self.kind == VarKind::Real
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Anti => write!(f, "{}bar", self.name),
            _ => write!(f, "{}", self.name),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parameter kind as declared in a presentation header.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Real,
    Complex,
}

/// A declared parameter. A complex parameter contributes two indeterminates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ParamDecl {
    pub name: String,
    pub kind: ParamKind,
}

impl ParamDecl {
    pub fn real(name: &str) -> Self {
        ParamDecl {
            name: name.to_string(),
            kind: ParamKind::Real,
        }
    }

    pub fn complex(name: &str) -> Self {
        ParamDecl {
            name: name.to_string(),
            kind: ParamKind::Complex,
        }
    }

    /// The indeterminate standing for the parameter itself.
    pub fn var(&self) -> Var {
        match self.kind {
            ParamKind::Real => Var::real(&self.name),
            ParamKind::Complex => Var::holo(&self.name),
        }
    }

    /// The conjugate partner; equal to `var()` for real parameters.
    pub fn partner(&self) -> Var {
        self.var().conj()
    }

    pub fn vars(&self) -> Vec<Var> {
        match self.kind {
            ParamKind::Real => vec![self.var()],
            ParamKind::Complex => vec![self.var(), self.partner()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partner_is_an_involution() {
        for p in [ParamDecl::real("r"), ParamDecl::complex("t")] {
            assert_eq!(p.partner().conj(), p.var());
        }
        assert_eq!(ParamDecl::real("r").partner(), Var::real("r"));
        assert_eq!(Var::anti("t").to_string(), "tbar");
    }
}
