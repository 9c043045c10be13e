use pklab::catalog;
use pklab::coeffs::{ParamDecl, Scalar, Substitution, Var};
use pklab::deform::{deform_with_coframe, CoframeSubstitution};
use pklab::exterior::{parse_form, parse_scalar, Form, Presentation, Symbols};
use pklab::pksolver::*;
use pklab::Error;

fn syms(p: &Presentation, extra: &[ParamDecl]) -> Symbols {
    let mut s = Symbols::for_presentation(p);
    for d in extra {
        s.declare(d);
    }
    s
}

fn form(p: &Presentation, src: &str, extra: &[ParamDecl]) -> Form {
    parse_form(src, &syms(p, extra)).unwrap()
}

fn scalar(p: &Presentation, src: &str, extra: &[ParamDecl]) -> Scalar {
    parse_scalar(src, &syms(p, extra)).unwrap()
}

fn real(names: &[&str]) -> Vec<ParamDecl> {
    names.iter().map(|n| ParamDecl::real(n)).collect()
}

#[test]
fn ecccus_is_pseudo_kahler_with_small_witness() {
    let p = catalog::load("ecccus").unwrap();
    let v = pk_exists(&p).unwrap();
    assert!(v.exists);
    assert_eq!(v.family.dimension, 6);
    let w = v.witness.unwrap();
    assert!(w.closed);
    let expected = form(&p, "I*w1^w1~ + w2^w3~ - w3^w2~", &[]);
    assert_eq!(w.form_value, expected);
    assert!(p.d(&w.form_value).unwrap().is_zero());
    assert!(!w.form_value.pow(3).is_zero());
}

#[test]
fn ecccus_t_generic_has_degenerate_cubes() {
    let p = catalog::load("ecccus-t").unwrap();
    let v = pk_exists(&p).unwrap();
    assert!(!v.exists);
    assert!(v.witness.is_none());
    assert_eq!(v.nondegeneracy, "0");
    assert_eq!(v.family.dimension, 4);
    assert!(!v.family.case_split.is_empty());
}

#[test]
fn eleccion_family_matches_displayed_parametrization() {
    let p = catalog::load("eleccion").unwrap();
    let fam = closed_compatible_family(&p, true).unwrap();
    assert_eq!(fam.dimension, 4);
    assert_eq!(fam.unknowns.len(), 4);
    assert!(fam.unknowns.iter().all(|u| u.var().is_real()));
    let r = ParamDecl::real("r");
    let s = ParamDecl::real("s");
    let u = ParamDecl::real("u");
    let w = ParamDecl::real("w");
    let names: Vec<String> = fam.unknowns.iter().map(|d| d.name.clone()).collect();
    // rename the engine's unknowns to (r, s, u, v) by their diagonal or off-diagonal slot
    let mut sub = Substitution::new();
    for n in &names {
        let target = match n.as_str() {
            "x11" => &r,
            "x44" => &s,
            "x12" => &u,
            "x13" => &w,
            other => panic!("unexpected unknown {other}"),
        };
        sub.insert(Var::real(n), Scalar::var(target.var()));
    }
    let f = fam.form.substitute(&sub).unwrap();
    let all = [r.clone(), s.clone(), u.clone(), w.clone()];
    let expected = form(
        &p,
        "I*(r*w1^w1~ + s*w4^w4~) + u*(w1^w2~ - w2^w1~) + w*(w1^w3~ - w3^w1~) - s*(w2^w3~ - w3^w2~)",
        &all,
    );
    assert_eq!(f, expected);
    let top = f.pow(4).top_coeff(4);
    let sign = Scalar::from_int(interleaved_volume_sign(4));
    assert_eq!(&top * &sign, scalar(&p, "-24*r*s^3", &all));
}

#[test]
fn eleccion_is_neutral_calabi_yau() {
    let p = catalog::load("eleccion").unwrap();
    let v = pk_exists(&p).unwrap();
    assert!(v.exists);
    for t in [Tag::PseudoKahler, Tag::NeutralKahler, Tag::NeutralCalabiYau] {
        assert!(v.tags.contains(&t), "{t:?}");
    }
    assert!(!v.tags.contains(&Tag::Kahler));
    let f = form(&p, "I*(w1^w1~ - w4^w4~) + (w2^w3~ - w3^w2~)", &[]);
    let g = metric_matrix(&f, &p).unwrap();
    assert_eq!(signature(&g).unwrap(), (4, 4));
}

#[test]
fn neutral_metric_matrix_entries() {
    let p = catalog::load("eleccion").unwrap();
    let all = real(&["r", "s", "u", "v"]);
    let f = form(
        &p,
        "I*(r*w1^w1~ + s*w4^w4~) + u*(w1^w2~ - w2^w1~) + v*(w1^w3~ - w3^w1~) - s*(w2^w3~ - w3^w2~)",
        &all,
    );
    let g = metric_matrix(&f, &p).unwrap();
    let c = |s: &str| scalar(&p, s, &all);
    let z = Scalar::zero();
    let rows: [[&str; 8]; 8] = [
        ["2*r", "0", "0", "-2*u", "0", "-2*v", "0", "0"],
        ["0", "2*r", "2*u", "0", "2*v", "0", "0", "0"],
        ["0", "2*u", "0", "0", "0", "2*s", "0", "0"],
        ["-2*u", "0", "0", "0", "-2*s", "0", "0", "0"],
        ["0", "2*v", "0", "-2*s", "0", "0", "0", "0"],
        ["-2*v", "0", "2*s", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0", "2*s", "0"],
        ["0", "0", "0", "0", "0", "0", "0", "2*s"],
    ];
    for (a, row) in rows.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            let want = if *e == "0" { z.clone() } else { c(e) };
            assert_eq!(g[a][b], want, "entry ({a},{b})");
        }
    }
}

#[test]
fn torus_metric_is_twice_identity() {
    let p = Presentation::torus(3).unwrap();
    let f = form(&p, "I*(w1^w1~ + w2^w2~ + w3^w3~)", &[]);
    let g = metric_matrix(&f, &p).unwrap();
    for (a, row) in g.iter().enumerate() {
        for (b, x) in row.iter().enumerate() {
            assert_eq!(*x, Scalar::from_int(if a == b { 2 } else { 0 }));
        }
    }
    assert_eq!(signature(&g).unwrap(), (6, 0));
}

#[test]
fn metric_rejects_bad_input() {
    let p = catalog::load("KT").unwrap();
    assert!(matches!(
        metric_matrix(&form(&p, "w1^w2", &[]), &p),
        Err(Error::NotType11)
    ));
    assert!(matches!(
        metric_matrix(&form(&p, "w1^w1~", &[]), &p),
        Err(Error::NotReal)
    ));
}

#[test]
fn eleccion_t_generic_branch_and_imaginary_locus() {
    let p = catalog::load("eleccion-t").unwrap();
    let fam = closed_compatible_family(&p, true).unwrap();
    assert_eq!(fam.dimension, 3);
    assert_eq!(fam.case_split, vec!["t + tbar".to_string()]);
    let v = pk_exists(&p).unwrap();
    assert!(!v.exists);
    assert_eq!(v.nondegeneracy, "0");

    let locus = parse_substitution_str(&p, "tbar = -t");
    assert!(matches!(
        fam.check_branch(&locus),
        Err(Error::UnresolvedCaseSplit(_))
    ));
    let q = p.with_locus(&locus).unwrap();
    let v = pk_exists(&q).unwrap();
    assert!(v.exists);
    let shown = form(
        &q,
        "I*w1^w1~ - I*w4^w4~ - t/2*w1^w3~ + w2^w3~ + tbar/2*w3^w1~ - w3^w2~",
        &[],
    );
    assert!(q.is_real(&shown));
    assert!(q.d(&shown).unwrap().is_zero());
    assert!(!shown.pow(4).is_zero());
}

fn parse_substitution_str(p: &Presentation, s: &str) -> Substitution {
    pklab::exterior::parse_substitution(s, &Symbols::for_presentation(p)).unwrap()
}

#[test]
fn kodaira_thurston_family() {
    let p = catalog::load("KT").unwrap();
    let fam = closed_compatible_family(&p, true).unwrap();
    assert_eq!(fam.dimension, 3);
    let kinds: Vec<bool> = fam.unknowns.iter().map(|u| u.var().is_real()).collect();
    assert_eq!(kinds.iter().filter(|r| **r).count(), 1);
    assert_eq!(kinds.iter().filter(|r| !**r).count(), 1);
    let r = ParamDecl::real("r");
    let u = ParamDecl::complex("u");
    let mut sub = Substitution::new();
    for d in &fam.unknowns {
        if d.var().is_real() {
            sub.insert(d.var(), Scalar::var(r.var()));
        } else {
            sub.insert(d.var(), Scalar::var(u.var()));
            sub.insert(d.partner(), Scalar::var(u.partner()));
        }
    }
    let f = fam.form.substitute(&sub).unwrap();
    let extra = [r, u];
    assert_eq!(f, form(&p, "I*r*w1^w1~ + u*w1^w2~ - ubar*w2^w1~", &extra));
    let expected = form(&p, "-2*u*ubar*w1^w2^w1~^w2~", &extra);
    assert_eq!(f.pow(2), expected);

    let v = pk_exists(&p).unwrap();
    assert!(v.tags.contains(&Tag::NeutralCalabiYau));
    let w = form(&p, "w1^w2~ - w2^w1~", &[]);
    assert_eq!(signature(&metric_matrix(&w, &p).unwrap()).unwrap(), (2, 2));
}

#[test]
fn iwasawa_symplectic_but_not_pseudo_kahler() {
    for id in ["iwasawa", "iwasawa-def"] {
        let p = catalog::load(id).unwrap();
        let v = pk_exists(&p).unwrap();
        assert!(!v.exists, "{id}");
        assert_eq!(v.family.dimension, 4, "{id}");
        assert_eq!(v.nondegeneracy, "0", "{id}");
    }
    let p = catalog::load("iwasawa").unwrap();
    let s = symplectic_exists(&p).unwrap();
    assert!(s.exists);
    assert!(s.witness.is_some());
}

#[test]
fn iwasawa_family_is_the_displayed_span() {
    let p = catalog::load("iwasawa").unwrap();
    let fam = closed_compatible_family(&p, true).unwrap();
    let basis = [
        "I*w1^w1~",
        "I*w2^w2~",
        "w1^w2~ - w2^w1~",
        "I*(w1^w2~ + w2^w1~)",
    ];
    for b in basis {
        assert!(p.d(&form(&p, b, &[])).unwrap().is_zero());
    }
    // four independent closed forms in a 4-dimensional family span it
    assert_eq!(fam.dimension, 4);
    for (key, _) in fam.form.terms() {
        assert!(key.holo().iter().chain(key.anti().iter()).all(|&i| i <= 2));
    }
}

#[test]
fn h3_example_is_not_symplectic() {
    let p = catalog::load("h3-example").unwrap();
    let q = p
        .specialize(&subst(&p, "rho = 0; D = 1; Dbar = 1"))
        .unwrap();
    assert!(!symplectic_exists(&q).unwrap().exists);
    let q = p
        .specialize(&subst(&p, "rho = 1; D = I; Dbar = -I"))
        .unwrap();
    assert!(symplectic_exists(&q).unwrap().exists);
}

fn subst(p: &Presentation, s: &str) -> Substitution {
    let mut out = Substitution::new();
    for part in s.split(';') {
        out = out.then(&parse_substitution_str(p, part.trim())).unwrap();
    }
    out
}

#[test]
fn torus_is_symplectic_and_kahler() {
    let p = Presentation::torus(2).unwrap();
    assert!(symplectic_exists(&p).unwrap().exists);
    let v = pk_exists(&p).unwrap();
    assert!(v.tags.contains(&Tag::Kahler));
    assert!(v.tags.contains(&Tag::NeutralCalabiYau));
}

#[test]
fn efv_identities() {
    let p = catalog::load("h3-example").unwrap();
    for (s, r, f3) in [
        ("rho = 0; D = 1; Dbar = 1", 1, "3*I"),
        ("rho = 1; D = I; Dbar = -I", 2, "6*I"),
    ] {
        let q = p.specialize(&subst(&p, s)).unwrap();
        let rep = efv_counterexample_check(&q, &Scalar::from_int(r)).unwrap();
        assert!(rep.ok(), "{s}");
        assert!(rep.f_nondegenerate);
        assert_eq!(rep.f_cube, f3);
    }
    let q = p
        .specialize(&subst(&p, "rho = 0; D = 1; Dbar = 1"))
        .unwrap();
    let rep = efv_counterexample_check(&q, &Scalar::zero()).unwrap();
    assert!(!rep.f_nondegenerate);
}

#[test]
fn phs_decomposition_in_dimension_three() {
    let p = catalog::load("ecccus").unwrap();
    let t = ParamDecl::complex("t");
    let sub = CoframeSubstitution::parse(&p, &["h3 = w3 + t*w3~"], vec![t.clone()]).unwrap();
    let (q, cf) = deform_with_coframe(&p, &sub).unwrap();
    let extra = [
        ParamDecl::real("r"),
        ParamDecl::real("s"),
        ParamDecl::complex("u"),
        ParamDecl::complex("v"),
    ];
    let f0 = form(
        &p,
        "I*(r*w1^w1~ + s*w2^w2~) + u*w1^w2~ - ubar*w2^w1~ + v*w2^w3~ - vbar*w3^w2~",
        &extra,
    );
    assert!(p.d(&f0).unwrap().is_zero());
    let omega = cf.to_new(&f0);
    let dec = phs_decompose(&omega, &q).unwrap();
    let all = [extra.to_vec(), vec![t]].concat();
    assert_eq!(dec.alpha, form(&q, "-v*tbar/(1 - t*tbar)*w2^w3", &all));
    assert_eq!(
        dec.f,
        form(
            &q,
            "I*(r*w1^w1~ + s*w2^w2~) + u*w1^w2~ - ubar*w2^w1~ + 1/(1 - t*tbar)*(v*w2^w3~ - vbar*w3^w2~)",
            &all
        )
    );
    assert!(dec.beta_is_conj_alpha);
    assert!(dec.nondegenerate_11);
    assert_eq!(
        dec.d_f,
        form(
            &q,
            "1/(1 - t*tbar)*(v*tbar*w1^w2^w2~ + vbar*t*w2^w1~^w2~)",
            &all
        )
    );
}

#[test]
fn phs_decomposition_in_dimension_four() {
    let p = catalog::load("eleccion").unwrap();
    let t = ParamDecl::complex("t");
    let sub = CoframeSubstitution::parse(&p, &["h2 = w2 - t*w1~"], vec![t.clone()]).unwrap();
    let (q, cf) = deform_with_coframe(&p, &sub).unwrap();
    let extra = real(&["r", "s", "u", "v"]);
    let f0 = form(
        &p,
        "I*(r*w1^w1~ + s*w4^w4~) + u*(w1^w2~ - w2^w1~) + v*(w1^w3~ - w3^w1~) - s*(w2^w3~ - w3^w2~)",
        &extra,
    );
    let omega = cf.to_new(&f0);
    let dec = phs_decompose(&omega, &q).unwrap();
    let all = [extra.clone(), vec![t]].concat();
    assert_eq!(dec.alpha, form(&q, "-s*tbar*w1^w3", &all));
    assert_eq!(dec.f, f0);
    assert!(dec.nondegenerate_11);
    assert_eq!(dec.d_f, form(&q, "s*(tbar*w1^w2^w1~ + t*w1^w1~^w2~)", &all));
}

#[test]
fn phs_decomposition_requires_closed_input() {
    let p = catalog::load("KT").unwrap();
    assert!(matches!(
        phs_decompose(&form(&p, "w2^w2~", &[]), &p),
        Err(Error::NotClosed)
    ));
    let d = phs_decompose(&form(&p, "w1^w2 + w1~^w2~", &[]), &p).unwrap();
    assert!(d.f.is_zero());
    assert!(!d.nondegenerate_11);
    assert!(d.beta_is_conj_alpha);
}

/// Closed real (1,1) forms computed from scratch: evaluate d on each real
/// basis element and eliminate over the coefficient field.
fn brute_force_dimension(p: &Presentation) -> usize {
    let n = p.n;
    let mut basis = Vec::new();
    for k in 1..=n {
        basis.push(Form::mono(&[k], &[k], Scalar::i()));
        for l in k + 1..=n {
            basis.push(Form::mono(&[k], &[l], Scalar::one()).sub(&Form::mono(
                &[l],
                &[k],
                Scalar::one(),
            )));
            basis.push(Form::mono(&[k], &[l], Scalar::i()).add(&Form::mono(
                &[l],
                &[k],
                Scalar::i(),
            )));
        }
    }
    let images: Vec<Form> = basis.iter().map(|b| p.d(b).unwrap()).collect();
    let mut keys: Vec<_> = images
        .iter()
        .flat_map(|f| f.terms().map(|(k, _)| *k))
        .collect();
    keys.sort();
    keys.dedup();
    // rows: one per basis element (real and imaginary parts of every coefficient)
    let mut rows: Vec<Vec<Scalar>> = images
        .iter()
        .map(|f| {
            keys.iter()
                .flat_map(|k| [f.coeff(k).re(), f.coeff(k).im()])
                .collect()
        })
        .collect();
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let piv = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let m = &rows[r][c] / &piv;
                let base = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&base) {
                    *x = &*x - &(&m * y);
                }
            }
        }
        rank += 1;
    }
    basis.len() - rank
}

#[test]
fn family_dimension_agrees_with_brute_force_in_low_dimension() {
    for id in catalog::ids() {
        let p = catalog::load(&id).unwrap();
        if p.n > 2 || p.is_parametric() {
            continue;
        }
        let fam = closed_compatible_family(&p, true).unwrap();
        assert_eq!(fam.dimension, brute_force_dimension(&p), "{id}");
    }
}

#[test]
fn random_family_members_are_closed() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for id in [
        "ecccus",
        "eleccion",
        "KT",
        "X-gen-ecus",
        "iwasawa",
        "torus-3",
    ] {
        let p = catalog::load(id).unwrap();
        let fam = closed_compatible_family(&p, true).unwrap();
        for _ in 0..5 {
            let mut sub = Substitution::new();
            for u in &fam.unknowns {
                let a = Scalar::from_int(rng.gen_range(-5..=5));
                if u.var().is_real() {
                    sub.insert(u.var(), a);
                } else {
                    let b = Scalar::from_int(rng.gen_range(-5..=5));
                    sub.insert(u.var(), &a + &(&Scalar::i() * &b));
                    sub.insert(u.partner(), &a - &(&Scalar::i() * &b));
                }
            }
            let f = fam.at(&sub).unwrap();
            assert!(p.d(&f).unwrap().is_zero(), "{id}");
            assert!(p.is_real(&f), "{id}");
            assert_eq!(f.bidegree().unwrap_or((1, 1)), (1, 1));
        }
    }
}
