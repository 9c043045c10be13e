//! Multivariate polynomial gcd over ℚ(i) by recursive primitive remainder
//! sequences. Results are monic (leading coefficient 1 in grlex order).

use std::collections::BTreeSet;

use super::gauss::GaussRat;
use super::poly::{Monomial, Poly};
use super::var::Var;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let av = a.vars();
    let bv = b.vars();
    // A variable present in only one argument can only enter through content.
    if let Some(x) = av.symmetric_difference(&bv).next().cloned() {
        return if av.contains(&x) {
            gcd(&content(a, &x), b)
        } else {
            gcd(a, &content(b, &x))
        };
    }
    let m = monomial_content(a).gcd(&monomial_content(b));
    if !m.is_one() {
        let g = gcd(&a.div_monomial(&m), &b.div_monomial(&m));
        return g.mul_monomial(&m, &GaussRat::one()).monic();
    }
    if coprime_by_specialization(a, b, &av) {
        return Poly::one();
    }
    let x = av
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .cloned()
        .unwrap();
    let ca = content(a, &x);
    let cb = content(b, &x);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = prs_gcd(pa, pb, &x);
    c.mul(&g).monic()
}

fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms().iter();
    let first = it
        .next()
        .map(|(m, _)| m.clone())
        .unwrap_or_else(Monomial::one);
    it.fold(first, |acc, (m, _)| acc.gcd(m))
}

/// Replaces every variable except `x` by a constant.
fn specialize(p: &Poly, x: &Var, value: impl Fn(&Var) -> GaussRat) -> Poly {
    Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut c = c.clone();
        let mut keep = Vec::new();
        for (v, e) in m.pairs() {
            if v == x {
                keep.push((v.clone(), *e));
            } else {
                c = &c * &value(v).pow(*e);
            }
        }
        (Monomial::from_pairs(keep), c)
    }))
}

/// Sound test for `gcd(a, b) = 1`: for each variable `x`, a specialization of
/// the others that keeps both leading coefficients in `x` nonzero and makes
/// the univariate images coprime shows the gcd has degree 0 in `x`.
/// Returns false when inconclusive.
fn coprime_by_specialization(a: &Poly, b: &Poly, vars: &BTreeSet<Var>) -> bool {
    const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let index: Vec<&Var> = vars.iter().collect();
    'var: for x in vars {
        for shift in 0..3 {
            let value = |v: &Var| {
                let k = index.iter().position(|w| *w == v).unwrap_or(0);
                GaussRat::from_int(
                    PRIMES[(k + 5 * shift) % PRIMES.len()] + shift as i64 * (k as i64 + 1),
                )
            };
            let (sa, sb) = (specialize(a, x, value), specialize(b, x, value));
            if sa.degree_in(x) != a.degree_in(x) || sb.degree_in(x) != b.degree_in(x) {
                continue;
            }
            if prs_gcd(sa, sb, x).degree_in(x) == 0 {
                continue 'var;
            }
            return false;
        }
        return false;
    }
    true
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content(p: &Poly, x: &Var) -> Poly {
    let mut g = Poly::zero();
    for c in p.univariate(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Poly, x: &Var) -> Poly {
    let c = content(p, x);
    p.exact_div(&c).expect("content divides")
}

/// Gcd of two polynomials primitive in `x`.
fn prs_gcd(mut a: Poly, mut b: Poly, x: &Var) -> Poly {
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return a.monic();
        }
        if b.degree_in(x) == 0 {
            return Poly::one();
        }
        let r = pseudo_rem(&a, &b, x);
        if r.is_zero() {
            return b.monic();
        }
        if r.degree_in(x) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part(&r, x);
        if b.vars().len() == 1 {
            b = b.monic();
        }
    }
}

/// A nonzero multiple of the remainder of `a` by `b` in `x`.
fn pseudo_rem(a: &Poly, b: &Poly, x: &Var) -> Poly {
    let bc = b.univariate(x);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.clone();
    loop {
        let rc = r.univariate(x);
        let dr = rc.len() - 1;
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = rc[dr].clone();
        let shift = Poly::var(x.clone()).pow((dr - db) as u32);
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::gauss::GaussRat;

    fn v(n: &str) -> Poly {
        Poly::var(Var::real(n))
    }

    #[test]
    fn recovers_common_factor() {
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let f = x.add(&y).mul(&x.sub(&z));
        let g = x.add(&y).mul(&y.add(&z).add(&Poly::one()));
        assert_eq!(gcd(&f, &g), x.add(&y));
        let h = x.mul(&y).sub(&Poly::one()).pow(2).mul(&z);
        let k = x.mul(&y).sub(&Poly::one()).mul(&z.add(&x));
        assert_eq!(gcd(&h, &k), x.mul(&y).sub(&Poly::one()));
    }

    #[test]
    fn gaussian_coefficients() {
        let i = Poly::constant(GaussRat::i());
        let (x, y) = (v("x"), v("y"));
        let f = x.add(&i.mul(&y)).mul(&x.sub(&y));
        let g = x.add(&i.mul(&y)).mul(&x.add(&y));
        assert_eq!(gcd(&f, &g), x.add(&i.mul(&y)));
    }

    #[test]
    fn coprime() {
        let (x, y) = (v("x"), v("y"));
        assert!(gcd(&x.add(&Poly::one()), &y).is_one());
        assert!(gcd(&x.pow(2).add(&y), &x.add(&y)).is_one());
    }
}
