use std::process::{Command, Output};

use serde_json::Value;

fn pklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pklab"))
        .args(args)
        .env_remove("PKLAB_CATALOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = pklab(&a);
    (
        serde_json::from_slice(&o.stdout).unwrap(),
        o.status.code().unwrap(),
    )
}

#[test]
fn eleccion_has_a_pseudo_kahler_witness() {
    let o = pklab(&["pseudokahler", "eleccion", "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("witness: "), "{s}");
    assert!(s.contains("signature (4,4)"), "{s}");
}

#[test]
fn ecccus_t_has_none_with_zero_certificate() {
    let (r, code) = json(&["pseudokahler", "ecccus-t"]);
    assert_eq!(code, 1);
    assert_eq!(r["report"]["exists"], false);
    assert_eq!(r["report"]["nondegeneracy"], "0");
}

#[test]
fn delta_two_of_the_torus_vanishes() {
    let (r, code) = json(&["delta", "torus-2", "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["delta"], 0);
}

#[test]
fn cohomology_report_schema() {
    let (r, code) = json(&[
        "cohomology",
        "ecccus-t",
        "--theory",
        "bc",
        "--bidegree",
        "1,1",
    ]);
    assert_eq!(code, 0);
    let t = &r["report"];
    assert_eq!(t["theory"], "bott-chern");
    assert_eq!(t["bidegree"], serde_json::json!([1, 1]));
    assert_eq!(t["dimension"], 4);
    assert_eq!(t["representatives"].as_array().unwrap().len(), 4);
    assert!(t["pivots"].is_array());
    let (r, _) = json(&[
        "cohomology",
        "ecccus-t",
        "--bidegree",
        "1,1",
        "--assign",
        "t=0",
    ]);
    assert_eq!(r["report"]["dimension"], 6);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        &["pseudokahler", "eleccion"][..],
        &["cohomology", "iwasawa-def", "--bidegree", "1,1"],
        &["symplectic", "KT"],
    ] {
        let (a, _) = json(args);
        let (b, _) = json(args);
        assert_eq!(strip(a), strip(b), "{args:?}");
    }
}

#[test]
fn emitted_deformation_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nak.pk");
    let o = pklab(&[
        "deform",
        "nakamura",
        "--sub",
        "h1 = w1 - t*w1~",
        "--param",
        "t",
        "--emit",
        out.to_str().unwrap(),
        "--compare",
        "nakamura-t",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let p = pklab::exterior::parse_presentation(&text).unwrap();
    assert_eq!(p.to_string(), text);
    assert!(pklab::deform::compare(&p, &pklab::catalog::load("nakamura-t").unwrap()).0);
    let o = pklab(&["validate", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn catalog_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("KT.pk"), "label KT\ndim 2\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_pklab"))
        .args(["symplectic", "KT", "--json"])
        .env("PKLAB_CATALOG", dir.path())
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    // the override is the abelian torus, with 6 closed real 2-forms
    assert_eq!(r["report"]["closed_dimension"], 6);
    let (r, _) = json(&["symplectic", "KT"]);
    assert_eq!(r["report"]["closed_dimension"], 5);
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pk");
    std::fs::write(&bad, "dim 2\nd w2 = q*w1^w1~\n").unwrap();
    let o = pklab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unknown parameter `q`"), "{err}");
    assert_eq!(pklab(&["validate", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(
        pklab(&["cohomology", "KT", "--theory", "bogus", "--bidegree", "1,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn zero_term_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z.pk");
    std::fs::write(&f, "dim 3\nd w3 = w1^w1\n").unwrap();
    let o = pklab(&["catalog", "--show", "x"]);
    assert_eq!(o.status.code(), Some(2));
    let (r, code) = json(&["validate", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["n"], 3);
}

#[test]
fn sweep_emits_rows_in_grid_order() {
    let o = pklab(&[
        "sweep",
        "ecccus-t",
        "--param",
        "t",
        "--grid",
        "re=-0.5:0.5:0.5,im=0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(
        lines[0],
        "re,im,family_dimension,pseudo_kahler,bott_chern_11,error"
    );
    assert_eq!(
        &lines[1..],
        ["-0.5,0,4,false,4,", "0.0,0,6,true,6,", "0.5,0,4,false,4,"]
    );
}

#[test]
fn curvature_of_the_eight_dimensional_family() {
    let (r, code) = json(&[
        "curvature",
        "eleccion",
        "--metric",
        "family",
        "--at",
        "x11=1,x44=-1,x12=0,x13=0",
    ]);
    assert_eq!(code, 0);
    let v = &r["report"]["verdicts"];
    assert_eq!(v["ricci_flat"], true);
    assert_eq!(v["flat"], false);
    assert_eq!(v["j_parallel"], true);
    assert!(r["report"]["curvature"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c == "R(Z2, Z2~, Z2, Z2~) = -1"));
}

#[test]
fn symplectic_and_decompose() {
    let o = pklab(&["symplectic", "iwasawa"]);
    assert_eq!(o.status.code(), Some(0));
    let (r, code) = json(&["decompose", "KT", "--form", "w1^w2 + w1~^w2~"]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["beta_is_conj_alpha"], true);
    assert_eq!(r["report"]["alpha"], "w1^w2");
}

#[test]
fn catalog_lists_and_verifies() {
    let o = pklab(&["catalog"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("eleccion-t")));
    let (r, code) = json(&["catalog", "--verify-catalog"]);
    assert_eq!(code, 0);
    assert_eq!(r["report"]["ok"], true);
}

#[test]
fn classify_reports_the_series() {
    let (r, _) = json(&["classify", "eleccion"]);
    let t = &r["report"];
    assert_eq!(t["step"], 4);
    assert_eq!(t["center_dimension"], 1);
    assert_eq!(t["j_series"]["tag"], "strongly-non-nilpotent");
}
