//! Real Lie algebras underlying a presentation, and their series.
//!
//! The real coframe is `e^{2k-1} + i e^{2k} = ω^k`, so on vectors
//! `J e_{2k-1} = e_{2k}` and `J e_{2k} = -e_{2k-1}`.

use serde::Serialize;

use crate::coeffs::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{Form, Key, Presentation};
use crate::linalg::{self, Matrix};

/// A real Lie algebra with bracket table `[e_a, e_b] = Σ c[a][b][k] e_k`
/// and a complex structure `J` (column `a` holds `J e_a`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealAlgebra {
    pub dim: usize,
    c: Vec<Vec<Vec<Scalar>>>,
    pub j: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesTag {
    Nilpotent,
    NonNilpotent,
    WeaklyNonNilpotent,
    StronglyNonNilpotent,
}

impl std::fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SeriesTag::Nilpotent => "nilpotent",
            SeriesTag::NonNilpotent => "non-nilpotent",
            SeriesTag::WeaklyNonNilpotent => "weakly-non-nilpotent",
            SeriesTag::StronglyNonNilpotent => "strongly-non-nilpotent",
        })
    }
}

/// Dimensions of an increasing chain of subspaces, starting at step 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub dims: Vec<usize>,
    /// First step after which the chain is constant.
    pub stabilization: usize,
    pub tag: SeriesTag,
    /// Every term was checked to be J-invariant and even-dimensional.
    pub j_invariant: bool,
}

/// Rewrites an untwisted form in the real coframe `e^1..e^{2n}`, stored as
/// a form in `2n` holomorphic generators.
pub fn realify(f: &Form) -> Result<Form> {
    let mut out = Form::zero();
    for (k, s) in f.terms() {
        if k.w != 0 {
            return Err(Error::Unsupported(
                "twisted forms have no real coframe expression".into(),
            ));
        }
        let mut t = Form::scalar(s.clone());
        for x in k.holo() {
            t = t.wedge(&real_one_form(x, true));
        }
        for x in k.anti() {
            t = t.wedge(&real_one_form(x, false));
        }
        out = out.add(&t);
    }
    Ok(out)
}

fn real_one_form(k: usize, holo: bool) -> Form {
    let im = if holo { Scalar::i() } else { -Scalar::i() };
    Form::omega(2 * k - 1).add(&Form::omega(2 * k).scale(&im))
}

/// Coefficient of `e^a ∧ e^b` (a < b, 1-based) in a realified 2-form.
fn real_coeff(f: &Form, a: usize, b: usize) -> Scalar {
    f.coeff(&Key::new(1 << (a - 1) | 1 << (b - 1), 0, 0))
}

pub fn realize(p: &Presentation) -> Result<RealAlgebra> {
    if p.is_parametric() {
        return Err(Error::ParametricInput(format!(
            "{} has unassigned parameters",
            p.label
        )));
    }
    realize_generic(p)
}

/// Like [`realize`], but keeps parameters symbolic: real and imaginary
/// parts are taken with `t̄` as the conjugate of `t`.
pub fn realize_generic(p: &Presentation) -> Result<RealAlgebra> {
    let m = 2 * p.n;
    // de^c as real 2-forms
    let mut de = Vec::with_capacity(m);
    for k in 1..=p.n {
        let r = realify(p.d_omega(k))?;
        de.push(r.map_coeffs(|s| s.re()));
        de.push(r.map_coeffs(|s| s.im()));
    }
    let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for a in 1..=m {
        for b in a + 1..=m {
            for (k, f) in de.iter().enumerate() {
                let v = real_coeff(f, a, b);
                if !v.is_zero() {
                    c[a - 1][b - 1][k] = -&v;
                    c[b - 1][a - 1][k] = v;
                }
            }
        }
    }
    let mut j = linalg::zeros(m, m);
    for k in 0..p.n {
        j[2 * k + 1][2 * k] = Scalar::one();
        j[2 * k][2 * k + 1] = -Scalar::one();
    }
    Ok(RealAlgebra { dim: m, c, j })
}

impl RealAlgebra {
    pub fn new(dim: usize, c: Vec<Vec<Vec<Scalar>>>, j: Matrix) -> Self {
        RealAlgebra { dim, c, j }
    }

    /// `[e_a, e_b]` (0-based).
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Scalar] {
        &self.c[a][b]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xa * yb;
                for (k, ck) in self.c[a][b].iter().enumerate() {
                    if !ck.is_zero() {
                        out[k] = &out[k] + &(&w * ck);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|s| s.is_zero())
    }

    /// Jacobi identity on all basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let e = |k: usize| unit(n, k);
                    let t1 = self.bracket(&e(a), &self.bracket(&e(b), &e(c)));
                    let t2 = self.bracket(&e(b), &self.bracket(&e(c), &e(a)));
                    let t3 = self.bracket(&e(c), &self.bracket(&e(a), &e(b)));
                    if (0..n).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn j_squared_is_minus_identity(&self) -> bool {
        let j2 = linalg::mat_mul(&self.j, &self.j);
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| {
                let want = if a == b {
                    -Scalar::one()
                } else {
                    Scalar::zero()
                };
                j2[a][b] == want
            })
        })
    }

    /// Matrix of `x ↦ [x, e_b]`.
    fn ad_right(&self, b: usize) -> Matrix {
        let mut m = linalg::zeros(self.dim, self.dim);
        for a in 0..self.dim {
            for k in 0..self.dim {
                m[k][a] = self.c[a][b][k].clone();
            }
        }
        m
    }

    /// Dimensions of the lower central series `g^1 = g, g^{k+1} = [g, g^k]`
    /// until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let mut cur: Matrix = (0..self.dim).map(|k| unit(self.dim, k)).collect();
        let mut dims = vec![cur.len()];
        loop {
            let mut gens = Vec::new();
            for x in &cur {
                for b in 0..self.dim {
                    gens.push(self.bracket(x, &unit(self.dim, b)));
                }
            }
            let next = span(&gens, self.dim);
            let d = next.len();
            if d == *dims.last().unwrap() {
                return dims;
            }
            dims.push(d);
            if d == 0 {
                return dims;
            }
            cur = next;
        }
    }

    /// `(is_nilpotent, step)`; the step is the first `s` with `g^{s+1} = 0`.
    pub fn nilpotency(&self) -> (bool, Option<usize>) {
        let dims = self.lower_central_series();
        if *dims.last().unwrap() == 0 {
            (true, Some((dims.len() - 1).max(1)))
        } else {
            (false, None)
        }
    }

    pub fn center(&self) -> Matrix {
        let mut rows = Vec::new();
        for b in 0..self.dim {
            rows.extend(self.ad_right(b));
        }
        linalg::rref(&rows, self.dim).nullspace()
    }

    /// Largest `x` with `[x, g] ⊆ V` (and `[Jx, g] ⊆ V` when `with_j`).
    fn preimage(&self, v: &Matrix, with_j: bool) -> Matrix {
        let ann = annihilator(v, self.dim);
        if ann.is_empty() {
            return (0..self.dim).map(|k| unit(self.dim, k)).collect();
        }
        let mut rows = Vec::new();
        for b in 0..self.dim {
            let ad = self.ad_right(b);
            let cond = linalg::mat_mul(&ann, &ad);
            if with_j {
                rows.extend(linalg::mat_mul(&cond, &self.j));
            }
            rows.extend(cond);
        }
        linalg::rref(&rows, self.dim).nullspace()
    }

    fn climb(&self, with_j: bool) -> (Vec<Matrix>, Vec<usize>) {
        let mut cur: Matrix = Vec::new();
        let mut terms = vec![cur.clone()];
        let mut dims = vec![0];
        loop {
            let next = self.preimage(&cur, with_j);
            if next.len() == cur.len() {
                return (terms, dims);
            }
            dims.push(next.len());
            terms.push(next.clone());
            cur = next;
        }
    }

    pub fn ascending_central_series(&self) -> SeriesReport {
        let (_, dims) = self.climb(false);
        let top = *dims.last().unwrap();
        SeriesReport {
            stabilization: dims.len() - 1,
            tag: if top == self.dim {
                SeriesTag::Nilpotent
            } else {
                SeriesTag::NonNilpotent
            },
            dims,
            j_invariant: false,
        }
    }

    /// The ascending J-compatible series `a_k(J)`.
    pub fn j_series(&self) -> SeriesReport {
        let (terms, dims) = self.climb(true);
        let j_invariant = terms
            .iter()
            .all(|t| t.len() % 2 == 0 && self.is_j_invariant(t));
        let top = *dims.last().unwrap();
        let a1 = dims.get(1).copied().unwrap_or(0);
        let tag = if top == self.dim {
            SeriesTag::Nilpotent
        } else if a1 == 0 {
            SeriesTag::StronglyNonNilpotent
        } else {
            SeriesTag::WeaklyNonNilpotent
        };
        SeriesReport {
            stabilization: dims.len() - 1,
            dims,
            tag,
            j_invariant,
        }
    }

    fn is_j_invariant(&self, basis: &Matrix) -> bool {
        let mut rows = basis.clone();
        for v in basis {
            rows.push(linalg::mat_vec(&self.j, v));
        }
        linalg::rank(&rows) == basis.len()
    }
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

/// Row-reduced basis of the span of `vs`.
pub fn span(vs: &[Vec<Scalar>], dim: usize) -> Matrix {
    linalg::rref(vs, dim).rows
}

/// Functionals vanishing exactly on the span of `basis`.
pub fn annihilator(basis: &Matrix, dim: usize) -> Matrix {
    if basis.is_empty() {
        return (0..dim).map(|k| unit(dim, k)).collect();
    }
    linalg::rref(basis, dim).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn torus_is_abelian() {
        let a = realize(&Presentation::torus(3).unwrap()).unwrap();
        assert!(a.is_abelian());
        assert_eq!(a.nilpotency(), (true, Some(1)));
        assert_eq!(a.center().len(), 6);
        assert_eq!(a.j_series().tag, SeriesTag::Nilpotent);
    }

    #[test]
    fn j_squares_to_minus_one() {
        let a = realize(&catalog::load("ecccus").unwrap()).unwrap();
        assert!(a.j_squared_is_minus_identity());
        assert!(a.check_jacobi());
    }

    #[test]
    fn parametric_input_is_rejected() {
        let p = catalog::load("ecccus-t").unwrap();
        assert!(matches!(realize(&p), Err(Error::ParametricInput(_))));
    }
}
