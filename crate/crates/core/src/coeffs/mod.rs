//! Exact coefficients: ℚ(i), polynomials and rational functions in the
//! declared parameters, with conjugation and substitution.

mod gauss;
mod gcd;
mod poly;
mod scalar;
mod subst;
mod var;

pub use gauss::GaussRat;
pub use gcd::{content, gcd};
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
pub use subst::{specialize, Assignment, Substitution};
pub use var::{ParamDecl, ParamKind, Var, VarKind};
