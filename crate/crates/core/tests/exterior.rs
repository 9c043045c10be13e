use pklab::catalog;
use pklab::coeffs::{Scalar, Var};
use pklab::exterior::{parse_form, parse_presentation, Form, Symbols};

#[test]
fn every_catalog_entry_validates() {
    for id in catalog::ids() {
        let p = catalog::load(&id).unwrap();
        let r = p.validate();
        assert!(r.ok(), "{id}: {:?}", r.failures());
    }
}

#[test]
fn print_parse_round_trip() {
    for id in catalog::ids() {
        let p = catalog::load(&id).unwrap();
        let q = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, q, "{id}");
        assert_eq!(p.to_string(), q.to_string());
    }
}

#[test]
fn ecccus_differential() {
    let p = catalog::load("ecccus").unwrap();
    assert_eq!(
        p.d(&Form::omega(3)).unwrap(),
        Form::omega(1).wedge(&Form::omega_bar(2))
    );
    assert!(p.delbar(&Form::omega_bar(3)).unwrap().is_zero());
    assert!(p.del(&Form::one()).unwrap().is_zero());
    let f = parse_form("I*w1^w1~ + w2^w3~ - w3^w2~", &Symbols::for_presentation(&p)).unwrap();
    let top = f.pow(3).top_coeff(3);
    assert!(!top.is_zero());
}

#[test]
fn nakamura_twisted_form_is_closed() {
    let p = catalog::load("nakamura").unwrap();
    let f = parse_form(
        "I*w1^w1~ + f*w2^w3~ + f^-1*w2~^w3",
        &Symbols::for_presentation(&p),
    )
    .unwrap();
    assert!(p.is_real(&f));
    assert!(p.d(&f).unwrap().is_zero());
    assert!(!f.pow(3).top_coeff(3).is_zero());
}

#[test]
fn jacobi_failure_names_generator() {
    let p = parse_presentation("dim 3\nd w2 = w1^w1~\nd w3 = w2^w2~\n").unwrap();
    let r = p.validate();
    assert!(!r.ok());
    assert!(r.jacobi[2].generator == "w3" && !r.jacobi[2].ok);
    assert!(r.jacobi[0].ok && r.jacobi[1].ok);
}

#[test]
fn locus_conjugation() {
    let p = catalog::load("ecccus-t").unwrap();
    let t = Var::holo("t");
    let locus = pklab::coeffs::Substitution::new().with(t.conj(), -Scalar::var(t.clone()));
    let q = p.with_locus(&locus).unwrap();
    let x = Form::scalar(&Scalar::var(t.clone()) + &Scalar::var(t.conj()));
    assert!(q
        .conj(&Form::scalar(Scalar::var(t)))
        .add(&Form::scalar(Scalar::var(Var::holo("t"))))
        .is_zero());
    assert!(x.substitute(&q.locus).unwrap().is_zero());
}
