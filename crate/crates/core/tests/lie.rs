use pklab::catalog;
use pklab::coeffs::Scalar;
use pklab::exterior::{Form, Presentation};
use pklab::lie::{realify, realize, SeriesTag};
use pklab::linalg;

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    (0..n)
        .map(|i| {
            if i == k {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

#[test]
fn eleccion_is_four_step_with_small_center() {
    let a = realize(&catalog::load("eleccion").unwrap()).unwrap();
    assert_eq!(a.dim, 8);
    assert!(a.check_jacobi());
    assert_eq!(a.nilpotency(), (true, Some(4)));
    assert_eq!(a.center().len(), 1);
    let s = a.j_series();
    assert_eq!(s.dims, vec![0]);
    assert_eq!(s.tag, SeriesTag::StronglyNonNilpotent);
    assert_eq!(a.ascending_central_series().tag, SeriesTag::Nilpotent);
}

#[test]
fn product_with_torus_is_weakly_non_nilpotent() {
    let e = catalog::load("eleccion").unwrap();
    for k in 1..=2 {
        let p = e.product(&Presentation::torus(k).unwrap()).unwrap();
        assert!(p.validate().ok());
        let a = realize(&p).unwrap();
        assert_eq!(a.nilpotency(), (true, Some(4)));
        let s = a.j_series();
        assert_eq!(s.tag, SeriesTag::WeaklyNonNilpotent);
        assert_eq!(*s.dims.last().unwrap(), 2 * k);
        assert!(s.j_invariant);
    }
}

#[test]
fn ecccus_derived_algebra_is_central() {
    let a = realize(&catalog::load("ecccus").unwrap()).unwrap();
    let n = a.dim;
    let mut brackets = Vec::new();
    for x in 0..n {
        for y in 0..n {
            brackets.push(a.bracket(&unit(n, x), &unit(n, y)));
        }
    }
    assert_eq!(linalg::rank(&brackets), 2);
    for v in &brackets {
        for z in 0..n {
            assert!(a.bracket(v, &unit(n, z)).iter().all(|s| s.is_zero()));
        }
    }
    assert_eq!(a.nilpotency(), (true, Some(2)));
}

#[test]
fn kodaira_thurston_center() {
    let a = realize(&catalog::load("KT").unwrap()).unwrap();
    assert_eq!(a.center().len(), 2);
    assert_eq!(a.j_series().tag, SeriesTag::Nilpotent);
}

#[test]
fn nakamura_is_not_nilpotent() {
    let a = realize(&catalog::load("nakamura").unwrap()).unwrap();
    assert!(a.check_jacobi());
    assert_eq!(a.nilpotency(), (false, None));
}

// de^c(e_a, e_b) = -e^c([e_a, e_b]), with de^c read off independently as the
// real and imaginary parts of dω^k in the real coframe.
#[test]
fn bracket_is_dual_to_d() {
    for id in [
        "ecccus",
        "eleccion",
        "X-gen-ecus",
        "iwasawa",
        "KT",
        "nakamura",
    ] {
        let p = catalog::load(id).unwrap();
        let a = realize(&p).unwrap();
        for k in 1..=p.n {
            let r = realify(p.d_omega(k)).unwrap();
            let w = realify(&Form::omega(k)).unwrap();
            for x in 0..a.dim {
                for y in 0..a.dim {
                    let br = a.bracket(&unit(a.dim, x), &unit(a.dim, y));
                    // ω^k evaluated on [e_x, e_y]
                    let mut lhs = Scalar::zero();
                    for (c, v) in br.iter().enumerate() {
                        lhs = &lhs + &(v * &w.coeff(&pklab::exterior::Key::new(1 << c, 0, 0)));
                    }
                    let (lo, hi, sign) = if x < y { (x, y, 1) } else { (y, x, -1) };
                    let dv = if x == y {
                        Scalar::zero()
                    } else {
                        r.coeff(&pklab::exterior::Key::new(1 << lo | 1 << hi, 0, 0))
                    };
                    let dv = if sign < 0 { -dv } else { dv };
                    assert_eq!(lhs, -dv, "{id}: k={k} x={x} y={y}");
                }
            }
        }
    }
}
