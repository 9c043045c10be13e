//! Levi-Civita connections of invariant metrics in the complexified basis
//! `Z_1..Z_n, Z̄_1..Z̄_n`, with curvature and parallelism checks.
//!
//! Basis position `a < n` is `Z_{a+1}`, position `n + a` is `Z̄_{a+1}`; the
//! dual coframe is `ω^k, ω̄^k`. Brackets are read off the structure
//! equations through `dθ(A, B) = −θ([A, B])`.

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::Scalar;
use crate::error::{Error, Result};
use crate::exterior::{Form, Key, Presentation};
use crate::linalg::{self, Matrix};
use crate::pksolver::Tag;

/// `∇_A B = Σ_D gamma[a][b][d] D`, together with the metric and brackets.
#[derive(Clone, Debug)]
pub struct ConnectionTable {
    pub n: usize,
    /// Complex-bilinear metric on the complexified basis.
    pub g: Matrix,
    pub gamma: Vec<Vec<Vec<Scalar>>>,
    pub bracket: Vec<Vec<Vec<Scalar>>>,
}

pub fn basis_label(n: usize, a: usize) -> String {
    if a < n {
        format!("Z{}", a + 1)
    } else {
        format!("Z{}~", a - n + 1)
    }
}

fn key_of(n: usize, positions: &[usize]) -> Option<(i32, Key)> {
    let mut sorted = positions.to_vec();
    let mut sign = 1;
    // bubble sort counting transpositions
    for i in 0..sorted.len() {
        for j in 0..sorted.len() - 1 - i {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                sign = -sign;
            } else if sorted[j] == sorted[j + 1] {
                return None;
            }
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let (mut i, mut j) = (0u64, 0u64);
    for &p in &sorted {
        if p < n {
            i |= 1 << p;
        } else {
            j |= 1 << (p - n);
        }
    }
    Some((sign, Key::new(i, j, 0)))
}

/// Value of an untwisted form on basis vectors given by position.
pub fn eval(f: &Form, n: usize, positions: &[usize]) -> Scalar {
    match key_of(n, positions) {
        Some((s, k)) => {
            let c = f.coeff(&k);
            if s < 0 {
                -c
            } else {
                c
            }
        }
        None => Scalar::zero(),
    }
}

fn theta(n: usize, a: usize) -> Form {
    if a < n {
        Form::omega(a + 1)
    } else {
        Form::omega_bar(a - n + 1)
    }
}

/// `J` on the basis: `i` on `Z_k`, `−i` on `Z̄_k`.
fn j_eigen(n: usize, a: usize) -> Scalar {
    if a < n {
        Scalar::i()
    } else {
        -Scalar::i()
    }
}

fn brackets(p: &Presentation) -> Vec<Vec<Vec<Scalar>>> {
    let m = 2 * p.n;
    let dtheta: Vec<Form> = (0..m)
        .map(|d| {
            if d < p.n {
                p.d_omega(d + 1).clone()
            } else {
                p.conj(p.d_omega(d - p.n + 1))
            }
        })
        .collect();
    let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            for d in 0..m {
                c[a][b][d] = -eval(&dtheta[d], p.n, &[a, b]);
            }
        }
    }
    c
}

/// `G(A, B) = F(A, J B)` for a real (1,1) form `F`.
pub fn metric_from_form(f: &Form, n: usize) -> Result<Matrix> {
    if f.terms().any(|(k, _)| k.w != 0) {
        return Err(Error::Unsupported(
            "twisted metrics have no invariant connection".into(),
        ));
    }
    let m = 2 * n;
    let mut g = linalg::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            g[a][b] = &eval(f, n, &[a, b]) * &j_eigen(n, b);
        }
    }
    Ok(g)
}

/// Complexifies a metric given on the real basis `e_1..e_{2n}`.
pub fn metric_from_real(g: &Matrix, n: usize) -> Matrix {
    let m = 2 * n;
    let half = Scalar::from_ratio(1, 2);
    let ihalf = &Scalar::i() * &half;
    let mut t = linalg::zeros(m, m);
    for k in 0..n {
        // Z = (e_{2k-1} - i e_{2k})/2, Z̄ = (e_{2k-1} + i e_{2k})/2
        t[2 * k][k] = half.clone();
        t[2 * k + 1][k] = -&ihalf;
        t[2 * k][n + k] = half.clone();
        t[2 * k + 1][n + k] = ihalf.clone();
    }
    linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&t), g), &t)
}

fn pair(g: &Matrix, x: &[Scalar], c: usize) -> Scalar {
    let mut s = Scalar::zero();
    for (e, xe) in x.iter().enumerate() {
        if !xe.is_zero() && !g[e][c].is_zero() {
            s = &s + &(xe * &g[e][c]);
        }
    }
    s
}

pub fn levi_civita(p: &Presentation, g: &Matrix) -> Result<ConnectionTable> {
    let m = 2 * p.n;
    let ginv = linalg::inverse(g).ok_or(Error::SingularMetric)?;
    let br = brackets(p);
    let half = Scalar::from_ratio(1, 2);
    let gamma: Vec<Vec<Vec<Scalar>>> = (0..m)
        .into_par_iter()
        .map(|a| {
            (0..m)
                .map(|b| {
                    // 2G(∇_A B, C) = G([A,B],C) − G([B,C],A) + G([C,A],B)
                    let rhs: Vec<Scalar> = (0..m)
                        .map(|c| {
                            &(&pair(g, &br[a][b], c) - &pair(g, &br[b][c], a))
                                + &pair(g, &br[c][a], b)
                        })
                        .collect();
                    (0..m)
                        .map(|d| {
                            let mut s = Scalar::zero();
                            for (c, r) in rhs.iter().enumerate() {
                                if !r.is_zero() && !ginv[d][c].is_zero() {
                                    s = &s + &(&ginv[d][c] * r);
                                }
                            }
                            &s * &half
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(ConnectionTable {
        n: p.n,
        g: g.clone(),
        gamma,
        bracket: br,
    })
}

pub fn levi_civita_of_form(p: &Presentation, f: &Form) -> Result<ConnectionTable> {
    levi_civita(p, &metric_from_form(f, p.n)?)
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

impl ConnectionTable {
    fn dim(&self) -> usize {
        2 * self.n
    }

    /// `∇_{A_a}` as a matrix: column `b` holds `∇_{A_a} A_b`.
    fn nabla(&self, a: usize) -> Matrix {
        let m = self.dim();
        let mut out = linalg::zeros(m, m);
        for b in 0..m {
            for d in 0..m {
                out[d][b] = self.gamma[a][b][d].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().all(|v| is_zero_vec(v))
    }

    pub fn torsion_free(&self) -> bool {
        let m = self.dim();
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|d| {
                    (&(&self.gamma[a][b][d] - &self.gamma[b][a][d]) - &self.bracket[a][b][d])
                        .is_zero()
                })
            })
        })
    }

    pub fn metric_compatible(&self) -> bool {
        let m = self.dim();
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    (&pair(&self.g, &self.gamma[a][b], c) + &pair(&self.g, &self.gamma[a][c], b))
                        .is_zero()
                })
            })
        })
    }

    /// `conj(∇_A B) = ∇_{Ā} B̄`.
    pub fn conjugation_symmetric(&self) -> bool {
        let (n, m) = (self.n, self.dim());
        let bar = |a: usize| if a < n { a + n } else { a - n };
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|d| self.gamma[a][b][d].conj() == self.gamma[bar(a)][bar(b)][bar(d)])
            })
        })
    }

    /// Whether `∇_A` maps (1,0) vectors to (1,0) vectors.
    pub fn preserves_type(&self) -> bool {
        let (n, m) = (self.n, self.dim());
        (0..m).all(|a| {
            (0..m).all(|b| (0..m).all(|d| (b < n) == (d < n) || self.gamma[a][b][d].is_zero()))
        })
    }

    /// `∇J = 0`.
    pub fn j_parallel(&self) -> bool {
        self.preserves_type()
    }

    /// `∇_A θ^D = −Σ_B Γ_{AB}^D θ^B`.
    fn nabla_theta(&self, a: usize, d: usize) -> Form {
        let mut f = Form::zero();
        for b in 0..self.dim() {
            let c = &self.gamma[a][b][d];
            if !c.is_zero() {
                f = f.add(&theta(self.n, b).scale(&-c));
            }
        }
        f
    }

    /// `∇_{A_a} φ` for an untwisted form.
    pub fn nabla_form(&self, a: usize, phi: &Form) -> Form {
        let n = self.n;
        let mut out = Form::zero();
        for (k, s) in phi.terms() {
            let pos: Vec<usize> = k
                .holo()
                .iter()
                .map(|x| x - 1)
                .chain(k.anti().iter().map(|x| n + x - 1))
                .collect();
            for i in 0..pos.len() {
                let mut t = Form::scalar(s.clone());
                for (j, &q) in pos.iter().enumerate() {
                    t = t.wedge(&if i == j {
                        self.nabla_theta(a, q)
                    } else {
                        theta(n, q)
                    });
                }
                out = out.add(&t);
            }
        }
        out
    }

    pub fn form_parallel(&self, phi: &Form) -> bool {
        (0..self.dim()).all(|a| self.nabla_form(a, phi).is_zero())
    }

    pub fn curvature(&self) -> CurvatureTable {
        let m = self.dim();
        let nab: Vec<Matrix> = (0..m).map(|a| self.nabla(a)).collect();
        let ops: Vec<Vec<Matrix>> = (0..m)
            .into_par_iter()
            .map(|a| {
                (0..m)
                    .map(|b| {
                        if a == b {
                            return linalg::zeros(m, m);
                        }
                        let ab = linalg::mat_mul(&nab[a], &nab[b]);
                        let ba = linalg::mat_mul(&nab[b], &nab[a]);
                        let mut r: Matrix = ab
                            .iter()
                            .zip(&ba)
                            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect())
                            .collect();
                        for (e, c) in self.bracket[a][b].iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (row, nrow) in r.iter_mut().zip(&nab[e]) {
                                for (x, y) in row.iter_mut().zip(nrow) {
                                    if !y.is_zero() {
                                        *x = &*x - &(c * y);
                                    }
                                }
                            }
                        }
                        r
                    })
                    .collect()
            })
            .collect();
        CurvatureTable {
            n: self.n,
            g: self.g.clone(),
            ops,
        }
    }
}

/// Curvature operators `R(A, B) = [∇_A, ∇_B] − ∇_{[A,B]}`.
#[derive(Clone, Debug)]
pub struct CurvatureTable {
    pub n: usize,
    pub g: Matrix,
    /// `ops[a][b]` has column `c` equal to `R(A_a, A_b) A_c`.
    ops: Vec<Vec<Matrix>>,
}

impl CurvatureTable {
    /// `R(A, B) C` as a vector.
    pub fn apply(&self, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        self.ops[a][b].iter().map(|row| row[c].clone()).collect()
    }

    /// `R(A, B, C, D) = G(R(A, B) D, C)`.
    pub fn component(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar {
        pair(&self.g, &self.apply(a, b, d), c)
    }

    pub fn is_flat(&self) -> bool {
        self.ops
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .all(|s| s.is_zero())
    }

    /// `Ric(B, C) = tr(A ↦ R(A, B) C)`.
    pub fn ricci(&self) -> Matrix {
        let m = 2 * self.n;
        let mut out = linalg::zeros(m, m);
        for b in 0..m {
            for c in 0..m {
                let mut s = Scalar::zero();
                for a in 0..m {
                    let x = &self.ops[a][b][a][c];
                    if !x.is_zero() {
                        s = &s + x;
                    }
                }
                out[b][c] = s;
            }
        }
        out
    }

    pub fn is_ricci_flat(&self) -> bool {
        self.ricci().iter().flatten().all(|s| s.is_zero())
    }

    /// Antisymmetries, pair symmetry and the first Bianchi identity.
    pub fn symmetries_hold(&self) -> bool {
        let m = 2 * self.n;
        let r: Vec<Vec<Vec<Vec<Scalar>>>> = (0..m)
            .into_par_iter()
            .map(|a| {
                (0..m)
                    .map(|b| {
                        (0..m)
                            .map(|c| (0..m).map(|d| self.component(a, b, c, d)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let x = &r[a][b][c][d];
                        if *x != -&r[b][a][c][d] || *x != -&r[a][b][d][c] || *x != r[c][d][a][b] {
                            return false;
                        }
                    }
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let s: Vec<Scalar> = (0..m)
                        .map(|k| {
                            &(&self.ops[a][b][k][c] + &self.ops[b][c][k][a]) + &self.ops[c][a][k][b]
                        })
                        .collect();
                    if !is_zero_vec(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyVerdict {
    pub closed: bool,
    pub nondegenerate: bool,
    pub signature: Option<(usize, usize)>,
    pub neutral: bool,
    pub j_parallel: bool,
    pub phi: String,
    pub phi_parallel: bool,
    pub ricci_flat: bool,
    pub tags: Vec<Tag>,
}

/// Closedness, neutral signature, `∇J = 0` and `∇Φ = 0` for `Φ = ω^{1…n}`.
pub fn neutral_cy_check(p: &Presentation, f: &Form) -> Result<CyVerdict> {
    let closed = p.d(f)?.is_zero();
    let nondegenerate = !f.pow(p.n).top_coeff(p.n).is_zero();
    let signature = if f.terms().all(|(_, s)| s.is_constant()) && !p.is_parametric() {
        Some(linalg::signature(&crate::pksolver::metric_matrix(f, p)?)?)
    } else {
        None
    };
    let neutral = p.n % 2 == 0 && signature == Some((p.n, p.n));
    let conn = levi_civita_of_form(p, f)?;
    let j_parallel = conn.j_parallel();
    let phi = Form::mono(&(1..=p.n).collect::<Vec<_>>(), &[], Scalar::one());
    let phi_parallel = conn.form_parallel(&phi);
    let ricci_flat = conn.curvature().is_ricci_flat();
    let mut tags = Vec::new();
    if closed && nondegenerate && j_parallel {
        tags.push(Tag::PseudoKahler);
        if matches!(signature, Some((a, b)) if a == 0 || b == 0) {
            tags.push(Tag::Kahler);
        }
        if neutral {
            tags.push(Tag::NeutralKahler);
            if phi_parallel {
                tags.push(Tag::NeutralCalabiYau);
            }
        }
    }
    Ok(CyVerdict {
        closed,
        nondegenerate,
        signature,
        neutral,
        j_parallel,
        phi: phi.to_string(),
        phi_parallel,
        ricci_flat,
        tags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_connection_is_flat() {
        let p = Presentation::torus(2).unwrap();
        let f = Form::mono(&[1], &[1], Scalar::i()).add(&Form::mono(
            &[2],
            &[2],
            Scalar::from_int(-3) * Scalar::i(),
        ));
        let c = levi_civita_of_form(&p, &f).unwrap();
        assert!(c.is_zero());
        assert!(c.curvature().is_flat());
        assert!(c.form_parallel(&Form::mono(&[1, 2], &[1], Scalar::one())));
    }

    #[test]
    fn eval_signs() {
        let f = Form::mono(&[1], &[2], Scalar::one());
        assert_eq!(eval(&f, 2, &[0, 3]), Scalar::one());
        assert_eq!(eval(&f, 2, &[3, 0]), -Scalar::one());
        assert!(eval(&f, 2, &[0, 0]).is_zero());
    }
}
