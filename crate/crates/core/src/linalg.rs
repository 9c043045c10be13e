//! Exact linear algebra over the scalar field.
//!
//! Two independent routes are provided: fraction-free (Bareiss) elimination
//! on polynomial rows, which certifies ranks and logs the pivot polynomials
//! that the generic answer assumes nonzero, and ordinary row reduction over
//! the fraction field, which yields kernels, solutions and inverses.

use num_traits::{Signed, Zero};

use crate::coeffs::{gcd, Poly, Scalar};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Scalar::one();
    }
    m
}

pub fn transpose(m: &[Vec<Scalar>]) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    (0..c)
        .map(|j| (0..r).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Matrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Non-constant monic factor recorded by an elimination step.
fn log_pivot(log: &mut Vec<Poly>, p: &Poly) {
    if p.is_constant() {
        return;
    }
    let m = p.monic();
    if !log.contains(&m) {
        log.push(m);
    }
}

/// Rank together with the polynomials assumed nonzero to reach it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub pivots: Vec<Poly>,
}

fn pivot_cost(p: &Poly) -> (bool, usize, u32) {
    (!p.is_constant(), p.terms().len(), p.total_degree())
}

/// Nonzero rows with their denominators cleared.
fn polynomial_rows(m: &[Vec<Scalar>]) -> Vec<Vec<Poly>> {
    m.iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut l = Poly::one();
            for x in r {
                if !x.denom().is_one() {
                    let g = gcd(&l, x.denom());
                    l = l.mul(&x.denom().exact_div(&g).unwrap());
                }
            }
            r.iter()
                .map(|x| {
                    if x.is_zero() {
                        Poly::zero()
                    } else {
                        x.numer().mul(&l.exact_div(x.denom()).unwrap())
                    }
                })
                .collect()
        })
        .collect()
}

/// Bareiss elimination; every division is exact.
pub fn rank_fraction_free(m: &[Vec<Scalar>]) -> RankCertificate {
    let mut rows = polynomial_rows(m);
    let mut log = Vec::new();
    if rows.is_empty() {
        return RankCertificate {
            rank: 0,
            pivots: log,
        };
    }
    let cols = rows[0].len();
    let mut prev = Poly::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows.len() {
            break;
        }
        let best = (k..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| pivot_cost(&rows[i][c]));
        let Some(p) = best else { continue };
        rows.swap(k, p);
        let piv = rows[k][c].clone();
        let step = Scalar::ratio(piv.clone(), prev.clone());
        log_pivot(&mut log, step.numer());
        let (top, rest) = rows.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            let a = row[c].clone();
            for j in c + 1..cols {
                let v = piv.mul(&row[j]).sub(&a.mul(&prow[j]));
                row[j] = if v.is_zero() {
                    v
                } else {
                    v.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            row[c] = Poly::zero();
        }
        prev = piv;
        k += 1;
    }
    RankCertificate {
        rank: k,
        pivots: log,
    }
}

/// Kernel by fraction-free Gauss-Jordan elimination. All pivots end up
/// equal to one minor `D`; the vector for a free column `f` has `D` in
/// position `f`, so every entry stays polynomial and no gcd is taken.
pub fn nullspace_fraction_free(
    m: &[Vec<Scalar>],
    cols: usize,
) -> (Vec<Vec<Scalar>>, Vec<usize>, Vec<Poly>) {
    let mut rows = polynomial_rows(m);
    let mut log = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut prev = Poly::one();
    let mut k = 0;
    for c in 0..cols {
        if k == rows.len() {
            break;
        }
        let best = (k..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| pivot_cost(&rows[i][c]));
        let Some(p) = best else { continue };
        rows.swap(k, p);
        let piv = rows[k][c].clone();
        log_pivot(&mut log, Scalar::ratio(piv.clone(), prev.clone()).numer());
        let prow = rows[k].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let a = row[c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let v = piv.mul(&row[j]).sub(&a.mul(&prow[j]));
                row[j] = if v.is_zero() {
                    v
                } else {
                    v.exact_div(&prev).expect("fraction-free division is exact")
                };
            }
            row[c] = Poly::zero();
        }
        pivot_cols.push(c);
        prev = piv;
        k += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::from_poly(prev.clone());
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = Scalar::from_poly(rows[r][f].neg());
            }
            v
        })
        .collect();
    (kernel, free, log)
}

/// Reduced row echelon form over the fraction field.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Matrix,
    pub pivot_cols: Vec<usize>,
    pub pivots: Vec<Poly>,
    pub cols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|c| !self.pivot_cols.contains(c))
            .collect()
    }

    /// Kernel basis: one vector per free column, with that coordinate 1.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.free_cols()
            .into_iter()
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in self.pivot_cols.iter().enumerate() {
                    v[pc] = -&self.rows[r][f];
                }
                v
            })
            .collect()
    }
}

pub fn rref(m: &[Vec<Scalar>], cols: usize) -> Rref {
    let order: Vec<usize> = (0..cols).collect();
    rref_ordered(m, cols, &order)
}

/// Row reduction visiting columns in the given order, so that the columns
/// listed last are the ones left free.
pub fn rref_ordered(m: &[Vec<Scalar>], cols: usize, order: &[usize]) -> Rref {
    let mut rows: Matrix = m
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivot_cols = Vec::new();
    let mut log = Vec::new();
    let mut k = 0;
    for &c in order {
        if k == rows.len() {
            break;
        }
        let best = (k..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| {
                let x = &rows[i][c];
                (
                    !x.is_constant(),
                    x.numer().terms().len() + x.denom().terms().len(),
                )
            });
        let Some(p) = best else { continue };
        rows.swap(k, p);
        let piv = rows[k][c].clone();
        log_pivot(&mut log, piv.numer());
        if !piv.is_one() {
            let inv = piv.inv();
            for x in rows[k].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let prow = rows[k].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == k || row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            for j in 0..cols {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&a * &prow[j]);
                }
            }
        }
        pivot_cols.push(c);
        k += 1;
    }
    rows.truncate(k);
    // present rows in increasing pivot column order
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by_key(|&i| pivot_cols[i]);
    let rows = idx.iter().map(|&i| rows[i].clone()).collect();
    let pivot_cols = idx.iter().map(|&i| pivot_cols[i]).collect();
    Rref {
        rows,
        pivot_cols,
        pivots: log,
        cols,
    }
}

pub fn rank(m: &[Vec<Scalar>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    rref(m, m[0].len()).rank()
}

/// Indices of `candidates` that, added greedily, extend the span of `base`.
pub fn extend_basis(base: &[Vec<Scalar>], candidates: &[Vec<Scalar>]) -> Vec<usize> {
    // echelon rows with their pivot column, each reduced against the earlier ones
    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let reduce = |rows: &[(usize, Vec<Scalar>)], v: &[Scalar]| -> Option<(usize, Vec<Scalar>)> {
        let mut v = v.to_vec();
        for (pc, r) in rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        let pc = v.iter().position(|x| !x.is_zero())?;
        let inv = v[pc].inv();
        Some((pc, v.iter().map(|x| x * &inv).collect()))
    };
    for v in base {
        if let Some(r) = reduce(&rows, v) {
            rows.push(r);
        }
    }
    let mut out = Vec::new();
    for (k, v) in candidates.iter().enumerate() {
        if let Some(r) = reduce(&rows, v) {
            rows.push(r);
            out.push(k);
        }
    }
    out
}

pub fn inverse(m: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    let order: Vec<usize> = (0..2 * n).collect();
    let red = rref_ordered(&aug, 2 * n, &order);
    if red.rank() < n || red.pivot_cols[n - 1] != n - 1 {
        return None;
    }
    Some(red.rows.iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d = &d * &piv;
        let inv = piv.inv();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                if !a[c][j].is_zero() {
                    a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                }
            }
        }
    }
    d
}

/// Solves `m x = b`; `None` when inconsistent.
pub fn solve(m: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let red = rref(&aug, cols + 1);
    if red.pivot_cols.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &pc) in red.pivot_cols.iter().enumerate() {
        x[pc] = red.rows[r][cols].clone();
    }
    Some(x)
}

/// Inertia `(p_plus, p_minus)` of a constant real symmetric matrix by
/// symmetric congruence.
pub fn signature(m: &[Vec<Scalar>]) -> Result<(usize, usize)> {
    let n = m.len();
    let mut a = m.to_vec();
    for row in &a {
        for x in row {
            match x.constant_value() {
                Some(c) if c.is_real() => {}
                Some(_) => return Err(Error::NotReal),
                None => return Err(Error::ParametricInput(x.to_string())),
            }
        }
    }
    let (mut plus, mut minus) = (0, 0);
    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(k) = (i + 1..n).find(|&k| !a[k][k].is_zero()) {
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] = &a[i][c] + &v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] = &a[r][i] + &v;
                }
            } else {
                return Err(Error::SingularMetric);
            }
        }
        let piv = a[i][i].clone();
        let val = piv.constant_value().unwrap();
        if val.re().is_positive() {
            plus += 1;
        } else {
            debug_assert!(!val.re().is_zero());
            minus += 1;
        }
        let inv = piv.inv();
        for r in i + 1..n {
            if a[r][i].is_zero() {
                continue;
            }
            let f = &a[r][i] * &inv;
            for c in i..n {
                if !a[i][c].is_zero() {
                    a[r][c] = &a[r][c] - &(&f * &a[i][c]);
                }
            }
        }
        for r in i + 1..n {
            a[i][r] = Scalar::zero();
            a[r][i] = Scalar::zero();
        }
    }
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Var;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn fraction_free_kernel_is_annihilated() {
        let t = Scalar::var(Var::holo("t"));
        let u = Scalar::var(Var::real("u"));
        let m = vec![
            vec![t.clone(), s(1), u.clone(), s(0)],
            vec![s(2), &t + &u, s(0), s(1)],
            vec![
                &t * &s(4),
                &(&t * &(&t + &u)) + &s(2),
                &u * &s(2),
                t.clone(),
            ],
        ];
        let (kernel, free, _) = nullspace_fraction_free(&m, 4);
        assert_eq!(kernel.len(), 2);
        assert_eq!(free, vec![2, 3]);
        for v in &kernel {
            assert!(v.iter().all(|x| x.is_polynomial()));
            assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
        }
        let q = vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(7)],
            vec![s(0), s(0), s(5)],
        ];
        let (kernel, _, _) = nullspace_fraction_free(&q, 3);
        assert_eq!(kernel.len(), rref(&q, 3).nullspace().len());
        assert!(mat_vec(&q, &kernel[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn parametric_rank_logs_pivot() {
        let t = Scalar::var(Var::holo("t"));
        let tb = Scalar::var(Var::anti("t"));
        let m = vec![vec![s(1), s(1)], vec![s(1), &s(1) + &(&t + &tb)]];
        let cert = rank_fraction_free(&m);
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.pivots, vec![(&t + &tb).numer().clone()]);
        let red = rref(&m, 2);
        assert_eq!(red.rank(), 2);
        assert_eq!(red.pivots, cert.pivots);
    }

    #[test]
    fn inverse_and_det() {
        let m = vec![vec![s(2), s(1)], vec![s(7), s(4)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(det(&m), s(1));
        assert!(inverse(&[vec![s(1), s(2)], vec![s(2), s(4)]]).is_none());
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let m = vec![vec![s(0), s(1)], vec![s(1), s(0)]];
        assert_eq!(signature(&m).unwrap(), (1, 1));
        assert_eq!(signature(&identity(3)).unwrap(), (3, 0));
        assert!(signature(&zeros(2, 2)).is_err());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]];
        let red = rref(&m, 3);
        for v in red.nullspace() {
            assert!(mat_vec(&m, &v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(red.nullspace().len(), 2);
    }
}
