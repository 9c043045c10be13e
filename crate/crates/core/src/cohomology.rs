//! Cohomology of the invariant complex: de Rham, Dolbeault, Bott-Chern and
//! Aeppli, with the pivot polynomials that generic ranks rely on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{Poly, Scalar, Substitution, Var};
use crate::error::{Error, Result};
use crate::exterior::{Form, Key, Presentation};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    DeRham,
    Dolbeault,
    BottChern,
    Aeppli,
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "derham" | "de-rham" | "dr" => Ok(Theory::DeRham),
            "dolbeault" | "dol" => Ok(Theory::Dolbeault),
            "bc" | "bott-chern" | "bottchern" => Ok(Theory::BottChern),
            "a" | "aeppli" => Ok(Theory::Aeppli),
            _ => Err(Error::Invalid(format!("unknown cohomology theory `{s}`"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::DeRham => "de-rham",
            Theory::Dolbeault => "dolbeault",
            Theory::BottChern => "bott-chern",
            Theory::Aeppli => "aeppli",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Degree {
    Total(usize),
    Bi(usize, usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Total(k) => write!(f, "{k}"),
            Degree::Bi(p, q) => write!(f, "({p},{q})"),
        }
    }
}

/// Twist weights to include; the default is the untwisted sector only.
#[derive(Clone, Debug)]
pub struct Options {
    pub weights: Vec<i32>,
}

impl Default for Options {
    fn default() -> Self {
        Options { weights: vec![0] }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub theory: Theory,
    pub degree: Degree,
    pub dimension: usize,
    pub context: String,
    /// Nonconstant pivot polynomials assumed nonzero by the ranks.
    pub pivots: Vec<String>,
    pub representatives: Vec<String>,
    #[serde(skip)]
    pub forms: Vec<Form>,
    pub notes: Vec<String>,
}

/// Describes where a presentation sits: generic parameters, a locus, or constants.
pub fn context_of(p: &Presentation) -> String {
    if !p.locus.is_empty() {
        format!("locus {}", p.locus)
    } else if p.is_parametric() {
        "generic".into()
    } else {
        "constant".into()
    }
}

/// Basis keys of bidegree `(p, q)` in the given weights.
pub fn basis(n: usize, p: usize, q: usize, weights: &[i32]) -> Vec<Key> {
    let mut out = Vec::new();
    let holo = subsets(n, p);
    let anti = subsets(n, q);
    for &w in weights {
        for &i in &holo {
            for &j in &anti {
                out.push(Key::new(i, j, w));
            }
        }
    }
    out.sort();
    out
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![(0u64, 0usize, 0usize)];
    while let Some((mask, next, taken)) = stack.pop() {
        if taken == k {
            out.push(mask);
            continue;
        }
        for b in (next..n).rev() {
            if n - b >= k - taken {
                stack.push((mask | 1 << b, b + 1, taken + 1));
            }
        }
    }
    out
}

fn to_vec(f: &Form, index: &BTreeMap<Key, usize>) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); index.len()];
    for (k, s) in f.terms() {
        let i = *index.get(k).expect("image lies in the target basis");
        v[i] = s.clone();
    }
    v
}

fn to_form(v: &[Scalar], keys: &[Key]) -> Form {
    let mut f = Form::zero();
    for (k, s) in keys.iter().zip(v) {
        f = f.add(&Form::term(*k, s.clone()));
    }
    f
}

fn index_of(keys: &[Key]) -> BTreeMap<Key, usize> {
    keys.iter().enumerate().map(|(i, k)| (*k, i)).collect()
}

/// Images of the source basis, as coordinate vectors in the target basis.
fn images(src: &[Key], tgt: &[Key], op: &(dyn Fn(&Form) -> Result<Form> + Sync)) -> Result<Matrix> {
    let idx = index_of(tgt);
    src.par_iter()
        .map(|k| Ok(to_vec(&op(&Form::term(*k, Scalar::one()))?, &idx)))
        .collect()
}

fn bidegree_keys(n: usize, deg: Degree, weights: &[i32]) -> Vec<Key> {
    match deg {
        Degree::Bi(p, q) => basis(n, p, q, weights),
        Degree::Total(k) => {
            let mut v: Vec<Key> = (0..=k).flat_map(|p| basis(n, p, k - p, weights)).collect();
            v.sort();
            v
        }
    }
}

fn shifted(n: usize, deg: Degree, dp: isize, dq: isize, weights: &[i32]) -> Vec<Key> {
    match deg {
        Degree::Bi(p, q) => {
            let (p, q) = (p as isize + dp, q as isize + dq);
            if p < 0 || q < 0 {
                Vec::new()
            } else {
                basis(n, p as usize, q as usize, weights)
            }
        }
        Degree::Total(k) => {
            let k = k as isize + dp + dq;
            if k < 0 {
                Vec::new()
            } else {
                bidegree_keys(n, Degree::Total(k as usize), weights)
            }
        }
    }
}

struct Pivots(BTreeSet<String>);

impl Pivots {
    fn add(&mut self, ps: &[Poly]) {
        for p in ps.iter().filter(|p| !p.is_constant()) {
            self.0.insert(p.to_string());
        }
    }
}

/// Kernel of the stacked maps, as vectors in the source basis.
fn kernel(maps: &[Matrix], dim: usize, piv: &mut Pivots) -> Matrix {
    // maps are lists of image columns; transpose to get equations
    let mut rows: Matrix = Vec::new();
    for m in maps {
        if m.is_empty() || m[0].is_empty() {
            continue;
        }
        rows.extend(linalg::transpose(m));
    }
    if rows.is_empty() {
        return (0..dim).map(|k| unit(dim, k)).collect();
    }
    let r = linalg::rref(&rows, dim);
    piv.add(&r.pivots);
    r.nullspace()
}

fn image_span(maps: &[Matrix], piv: &mut Pivots) -> Matrix {
    let vs: Matrix = maps.iter().flatten().cloned().collect();
    if vs.is_empty() || vs[0].is_empty() {
        return Vec::new();
    }
    piv.add(&linalg::rank_fraction_free(&vs).pivots);
    let r = linalg::rref(&vs, vs[0].len());
    piv.add(&r.pivots);
    r.rows
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[k] = Scalar::one();
    v
}

pub fn cohomology(
    p: &Presentation,
    theory: Theory,
    degree: Degree,
    opts: &Options,
) -> Result<CohomologyTable> {
    let w = &opts.weights;
    if w.iter().any(|&x| x != 0) && p.twist.is_none() {
        return Err(Error::TwistWithoutLambda);
    }
    match (theory, degree) {
        (Theory::DeRham, Degree::Bi(..)) => {
            return Err(Error::Invalid(
                "de Rham cohomology takes a total degree".into(),
            ))
        }
        (Theory::DeRham, _) => {}
        (_, Degree::Total(_)) => {
            return Err(Error::Invalid(format!(
                "{theory} cohomology takes a bidegree"
            )))
        }
        _ => {}
    }
    let n = p.n;
    let src = bidegree_keys(n, degree, w);
    let d = |f: &Form| p.d(f);
    let del = |f: &Form| p.del(f);
    let delbar = |f: &Form| p.delbar(f);
    let ddbar = |f: &Form| p.del(&p.delbar(f)?);
    let mut piv = Pivots(BTreeSet::new());

    // (kernel maps on src) and (image maps into src)
    let (ker, img) = match theory {
        Theory::DeRham => {
            let up = shifted(n, degree, 1, 0, w);
            let down = shifted(n, degree, -1, 0, w);
            (vec![images(&src, &up, &d)?], vec![images(&down, &src, &d)?])
        }
        Theory::Dolbeault => {
            let up = shifted(n, degree, 0, 1, w);
            let down = shifted(n, degree, 0, -1, w);
            (
                vec![images(&src, &up, &delbar)?],
                vec![images(&down, &src, &delbar)?],
            )
        }
        Theory::BottChern => {
            let a = shifted(n, degree, 1, 0, w);
            let b = shifted(n, degree, 0, 1, w);
            let down = shifted(n, degree, -1, -1, w);
            (
                vec![images(&src, &a, &del)?, images(&src, &b, &delbar)?],
                vec![images(&down, &src, &ddbar)?],
            )
        }
        Theory::Aeppli => {
            let up = shifted(n, degree, 1, 1, w);
            let a = shifted(n, degree, -1, 0, w);
            let b = shifted(n, degree, 0, -1, w);
            (
                vec![images(&src, &up, &ddbar)?],
                vec![images(&a, &src, &del)?, images(&b, &src, &delbar)?],
            )
        }
    };
    let kernel_basis = kernel(&ker, src.len(), &mut piv);
    let image_basis = image_span(&img, &mut piv);
    if image_basis.len() > kernel_basis.len() {
        return Err(Error::Invalid(format!(
            "{theory} {degree}: image exceeds kernel"
        )));
    }
    let dimension = kernel_basis.len() - image_basis.len();

    let self_conjugate = match degree {
        Degree::Total(_) => true,
        Degree::Bi(a, b) => a == b && theory != Theory::Dolbeault,
    };
    let candidates: Vec<Form> = if self_conjugate {
        kernel_basis
            .iter()
            .flat_map(|v| {
                let f = to_form(v, &src);
                let c = p.conj(&f);
                let re = f.add(&c).scale(&Scalar::from_ratio(1, 2));
                let im = f.sub(&c).scale(&(-Scalar::i() * Scalar::from_ratio(1, 2)));
                [normalize_real(&re), normalize_real(&im)]
            })
            .filter(|f| !f.is_zero())
            .collect()
    } else {
        kernel_basis
            .iter()
            .map(|v| normalize(&to_form(v, &src)))
            .collect()
    };
    let idx = index_of(&src);
    let cand_vecs: Matrix = candidates.iter().map(|f| to_vec(f, &idx)).collect();
    let chosen = choose(&image_basis, &cand_vecs, dimension);
    let forms: Vec<Form> = chosen.iter().map(|&i| candidates[i].clone()).collect();
    if forms.len() != dimension {
        return Err(Error::Invalid(format!(
            "{theory} {degree}: found {} representatives for dimension {dimension}",
            forms.len()
        )));
    }

    let mut notes = vec!["invariant complex".to_string()];
    if p.twist.is_some() {
        notes.push(format!(
            "twist weights {:?}; manifold cohomology of the solvmanifold is not computed",
            w
        ));
    }
    Ok(CohomologyTable {
        theory,
        degree,
        dimension,
        context: context_of(p),
        pivots: piv.0.into_iter().collect(),
        representatives: forms.iter().map(|f| f.to_string()).collect(),
        forms,
        notes,
    })
}

/// Candidates extending the image to a basis of the kernel. Independence at a
/// point where the image keeps its rank implies generic independence, so the
/// selection is done at exact integer points when that succeeds.
fn choose(image: &[Vec<Scalar>], cands: &[Vec<Scalar>], dimension: usize) -> Vec<usize> {
    let vars: BTreeSet<Var> = image
        .iter()
        .chain(cands)
        .flatten()
        .flat_map(|x| x.vars())
        .collect();
    if vars.is_empty() {
        return linalg::extend_basis(image, cands);
    }
    const PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    for shift in 0..4 {
        let mut sub = Substitution::new();
        for (k, v) in vars.iter().enumerate() {
            sub.insert(
                v.clone(),
                Scalar::from_int(PRIMES[(k + 3 * shift) % PRIMES.len()] + (shift * k) as i64),
            );
        }
        let at = |m: &[Vec<Scalar>]| -> Option<Matrix> {
            m.iter()
                .map(|r| r.iter().map(|x| sub.apply(x).ok()).collect())
                .collect()
        };
        let (Some(im), Some(cv)) = (at(image), at(cands)) else {
            continue;
        };
        if linalg::rank(&im) != image.len() {
            continue;
        }
        let chosen = linalg::extend_basis(&im, &cv);
        if chosen.len() == dimension {
            return chosen;
        }
    }
    linalg::extend_basis(image, cands)
}

/// Scales so the leading coefficient is 1.
fn normalize(f: &Form) -> Form {
    match f.terms().next() {
        Some((_, c)) => f.scale(&c.inv()),
        None => f.clone(),
    }
}

/// Scales a real form by a real factor so the leading coefficient is 1 or `i`.
fn normalize_real(f: &Form) -> Form {
    let Some((_, c)) = f.terms().next() else {
        return f.clone();
    };
    let c = c.clone();
    let cc = c.conj();
    if cc == c {
        f.scale(&c.inv())
    } else if cc == -&c {
        f.scale(&(&Scalar::i() * &c.inv()))
    } else {
        f.clone()
    }
}

pub fn dimension(
    p: &Presentation,
    theory: Theory,
    degree: Degree,
    opts: &Options,
) -> Result<usize> {
    Ok(cohomology(p, theory, degree, opts)?.dimension)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaReport {
    pub k: usize,
    pub delta: i64,
    pub bott_chern: Vec<usize>,
    pub aeppli: Vec<usize>,
    pub betti: usize,
    pub negative: bool,
}

/// `Σ_{p+q=k} (h^{p,q}_BC + h^{p,q}_A) − 2 b_k` on the invariant complex.
pub fn delta_k(p: &Presentation, k: usize, opts: &Options) -> Result<DeltaReport> {
    let degs: Vec<(usize, usize)> = (0..=k)
        .filter(|&a| a <= p.n && k - a <= p.n)
        .map(|a| (a, k - a))
        .collect();
    let bc = degs
        .par_iter()
        .map(|&(a, b)| dimension(p, Theory::BottChern, Degree::Bi(a, b), opts))
        .collect::<Result<Vec<_>>>()?;
    let ae = degs
        .par_iter()
        .map(|&(a, b)| dimension(p, Theory::Aeppli, Degree::Bi(a, b), opts))
        .collect::<Result<Vec<_>>>()?;
    let betti = dimension(p, Theory::DeRham, Degree::Total(k), opts)?;
    let delta = bc.iter().chain(&ae).sum::<usize>() as i64 - 2 * betti as i64;
    Ok(DeltaReport {
        k,
        delta,
        bott_chern: bc,
        aeppli: ae,
        betti,
        negative: delta < 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    pub label: String,
    pub dimension: usize,
    pub at_least_generic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub theory: Theory,
    pub degree: Degree,
    pub generic: usize,
    pub pivots: Vec<String>,
    pub samples: Vec<ProbeSample>,
    pub ok: bool,
}

/// Checks that specializing never lowers the dimension below the generic one.
pub fn upper_semicontinuity_probe(
    family: &Presentation,
    theory: Theory,
    degree: Degree,
    samples: &[(String, Substitution)],
    opts: &Options,
) -> Result<ProbeReport> {
    let generic = cohomology(family, theory, degree, opts)?;
    let samples = samples
        .par_iter()
        .map(|(label, s)| {
            let d = dimension(&family.specialize(s)?, theory, degree, opts)?;
            Ok(ProbeSample {
                label: label.clone(),
                dimension: d,
                at_least_generic: d >= generic.dimension,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = samples.iter().all(|s| s.at_least_generic);
    Ok(ProbeReport {
        theory,
        degree,
        generic: generic.dimension,
        pivots: generic.pivots,
        samples,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_complete() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(basis(3, 1, 1, &[0]).len(), 9);
    }

    #[test]
    fn theory_names() {
        assert_eq!("bc".parse::<Theory>().unwrap(), Theory::BottChern);
        assert!("xyz".parse::<Theory>().is_err());
    }
}
