use pklab::catalog;
use pklab::coeffs::{Assignment, Scalar, Var};
use pklab::cohomology::{dimension, Degree, Options, Theory};
use pklab::exterior::{parse_form, Form, Presentation, Symbols};
use proptest::prelude::*;

fn vars() -> [Var; 3] {
    [Var::holo("t"), Var::anti("t"), Var::real("s")]
}

/// Small polynomials in `t, tbar, s` with Gaussian integer coefficients.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, -2i64..=2, 0u32..=2, 0u32..=2, 0u32..=1), 1..4).prop_map(
        |terms| {
            let v = vars();
            terms
                .iter()
                .fold(Scalar::zero(), |acc, &(re, im, a, b, c)| {
                    let coeff = &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im));
                    let m = &(&Scalar::var(v[0].clone()).pow(a as i32)
                        * &Scalar::var(v[1].clone()).pow(b as i32))
                        * &Scalar::var(v[2].clone()).pow(c as i32);
                    &acc + &(&coeff * &m)
                })
        },
    )
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| if d.is_zero() { n } else { &n / &d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }
}

fn entries() -> Vec<Presentation> {
    catalog::ids()
        .iter()
        .map(|id| catalog::load(id).unwrap())
        .collect()
}

#[derive(Clone, Debug)]
struct Term {
    holo: Vec<usize>,
    anti: Vec<usize>,
    re: i64,
    im: i64,
    param: Option<usize>,
    weight: i32,
}

fn term(n: usize, p: usize, q: usize) -> impl Strategy<Value = Term> {
    let idx = prop::sample::subsequence((1..=n).collect::<Vec<_>>(), p);
    let jdx = prop::sample::subsequence((1..=n).collect::<Vec<_>>(), q);
    (
        idx,
        jdx,
        -3i64..=3,
        -2i64..=2,
        prop::option::of(0usize..16),
        -1i32..=1,
    )
        .prop_map(|(holo, anti, re, im, param, weight)| Term {
            holo,
            anti,
            re,
            im,
            param,
            weight,
        })
}

fn build(p: &Presentation, terms: &[Term]) -> Form {
    let vars = p.param_vars();
    terms.iter().fold(Form::zero(), |acc, t| {
        let mut c = &Scalar::from_int(t.re) + &(&Scalar::i() * &Scalar::from_int(t.im));
        if let (Some(k), false) = (t.param, vars.is_empty()) {
            c = &c * &Scalar::var(vars[k % vars.len()].clone());
        }
        let mut f = Form::mono(&t.holo, &t.anti, c);
        if p.twist.is_some() && t.weight != 0 {
            f = f.wedge(&Form::twist(t.weight));
        }
        acc.add(&f)
    })
}

/// An entry together with a random form of pure bidegree `(p, q)`.
fn entry_and_form() -> impl Strategy<Value = (usize, usize, Vec<Term>)> {
    let all = entries();
    let dims: Vec<usize> = all.iter().map(|p| p.n).collect();
    (0..all.len()).prop_flat_map(move |e| {
        let n = dims[e];
        (0..=n.min(2), 0..=n.min(2)).prop_flat_map(move |(p, q)| {
            (
                Just(e),
                Just(p + q),
                prop::collection::vec(term(n, p, q), 1..4),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn differential_identities((e, _, ta) in entry_and_form()) {
        let all = entries();
        let p = &all[e];
        let a = build(p, &ta);
        prop_assert!(p.d(&p.d(&a).unwrap()).unwrap().is_zero());
        let del = p.del(&a).unwrap();
        let delbar = p.delbar(&a).unwrap();
        prop_assert!(p.del(&del).unwrap().is_zero());
        prop_assert!(p.delbar(&delbar).unwrap().is_zero());
        prop_assert!(p.del(&delbar).unwrap().add(&p.delbar(&del).unwrap()).is_zero());
        prop_assert_eq!(p.d(&a).unwrap(), del.add(&delbar));
        prop_assert_eq!(p.d(&p.conj(&a)).unwrap(), p.conj(&p.d(&a).unwrap()));
    }

    #[test]
    fn leibniz_on_one_entry((e, deg, ta) in entry_and_form(), seed in any::<u64>()) {
        let all = entries();
        let p = &all[e];
        let a = build(p, &ta);
        // a second form built from the first one's terms, shuffled by the seed
        let mut tb = ta.clone();
        let k = seed as usize % tb.len();
        tb.rotate_left(k);
        for t in &mut tb {
            t.re = (t.re + seed as i64 % 3).rem_euclid(5) - 2;
        }
        let b = build(p, &tb);
        let sign = if deg % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let rhs = p.d(&a).unwrap().wedge(&b).add(&a.wedge(&p.d(&b).unwrap()).scale(&sign));
        prop_assert_eq!(p.d(&a.wedge(&b)).unwrap(), rhs);
    }

    #[test]
    fn printed_forms_parse_back((e, _, ta) in entry_and_form()) {
        let all = entries();
        let p = &all[e];
        let a = build(p, &ta);
        let back = parse_form(&a.to_string(), &Symbols::for_presentation(p)).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn families() -> Vec<Presentation> {
    ["ecccus-t", "ejemplo2", "eleccion-t", "nakamura-t"]
        .iter()
        .map(|id| catalog::load(id).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn specializing_never_lowers_dimensions(e in 0usize..4, re in -4i64..=4, im in -4i64..=4, den in 2i64..=6) {
        let p = &families()[e];
        let decl = &p.params[0];
        let v = if decl.var().is_real() {
            Scalar::from_ratio(re, den)
        } else {
            &Scalar::from_ratio(re, den) + &(&Scalar::i() * &Scalar::from_ratio(im, den))
        };
        let Ok(q) = p.assign(&Assignment::new().with(decl, v).unwrap()) else {
            // a pole of the family
            return Ok(());
        };
        let opts = Options::default();
        for (theory, degree) in [
            (Theory::BottChern, Degree::Bi(1, 1)),
            (Theory::Aeppli, Degree::Bi(1, 1)),
            (Theory::Dolbeault, Degree::Bi(0, 1)),
            (Theory::DeRham, Degree::Total(2)),
        ] {
            let generic = dimension(p, theory, degree, &opts).unwrap();
            prop_assert!(dimension(&q, theory, degree, &opts).unwrap() >= generic);
        }
    }
}
