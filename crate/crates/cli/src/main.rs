//! `pklab` command-line front end.

mod grid;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pklab::catalog;
use pklab::coeffs::{Assignment, ParamDecl, Scalar};
use pklab::cohomology::{self, Degree, Options, Theory};
use pklab::connection::{basis_label, levi_civita_of_form};
use pklab::deform::{self, CoframeSubstitution};
use pklab::exterior::{
    parse_form, parse_presentation, parse_scalar, parse_substitution, Presentation, Symbols,
};
use pklab::lie;
use pklab::pksolver;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "pklab",
    version,
    about = "Exact checks on complex structure equations of Lie algebras"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Input {
    /// Presentation file, or a catalog id such as `eleccion` or `torus-3`.
    input: String,
    /// Specialize parameters, e.g. `t=1/2,s=I`.
    #[arg(long)]
    assign: Vec<String>,
    /// Restrict to a locus, e.g. `tbar=-t`.
    #[arg(long)]
    locus: Option<String>,
    /// Take the direct sum with a second presentation.
    #[arg(long)]
    product: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check d² = 0, absence of (0,2) parts and the twist data.
    Validate(Input),
    /// Nilpotency, centre, central series and J-series.
    Classify(Input),
    /// Dimension of one cohomology space of the invariant complex.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// derham, dolbeault, bc or aeppli.
        #[arg(long, default_value = "bc")]
        theory: String,
        /// Bidegree `p,q`.
        #[arg(long, conflicts_with = "degree")]
        bidegree: Option<String>,
        /// Total degree (de Rham).
        #[arg(long)]
        degree: Option<usize>,
        /// Twist weights, e.g. `-1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Δ^k = Σ (h_BC + h_A) − 2 b_k.
    Delta {
        #[command(flatten)]
        input: Input,
        #[arg(short, long, default_value_t = 2)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
    },
    /// Decide whether an invariant pseudo-Kähler metric exists.
    Pseudokahler {
        #[command(flatten)]
        input: Input,
        /// Also print the metric matrix of the witness.
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether an invariant symplectic form exists.
    Symplectic(Input),
    /// Levi-Civita connection and curvature of a pseudo-Kähler metric.
    Curvature {
        #[command(flatten)]
        input: Input,
        /// A real closed (1,1)-form, or `family` for the general one.
        #[arg(long)]
        metric: String,
        /// Values for unknowns of the metric, e.g. `r=1,s=-1`.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Declare an unknown used in `--metric`, as `name` or `name:real`.
        #[arg(long)]
        param: Vec<String>,
    },
    /// Rewrite the structure equations in a new coframe.
    Deform {
        #[command(flatten)]
        input: Input,
        /// Coframe line such as `h2 = w2 - t*w1~`.
        #[arg(long, required = true)]
        sub: Vec<String>,
        /// Declare a new parameter, as `name` (complex) or `name:real`.
        #[arg(long)]
        param: Vec<String>,
        /// Write the deformed presentation to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Compare the result with another presentation.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Split a closed 2-form into (2,0), (1,1) and (0,2) parts.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        form: String,
        #[arg(long)]
        param: Vec<String>,
    },
    /// Evaluate verdicts on an exact grid of parameter values (CSV).
    Sweep {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        param: String,
        /// `re=a:b:step,im=a:b:step`; omitted axes are 0.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// List the catalog, show an entry, or re-derive the golden values.
    Catalog {
        #[arg(long, alias = "verify-catalog")]
        verify: bool,
        #[arg(long)]
        show: Option<String>,
    },
}

struct Outcome {
    report: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(report: Value, text: String, ok: bool) -> Self {
        Outcome { report, text, ok }
    }
}

fn catalog_dir() -> Option<PathBuf> {
    std::env::var_os("PKLAB_CATALOG").map(PathBuf::from)
}

fn load_one(src: &str) -> Result<Presentation> {
    let path = Path::new(src);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return parse_presentation(&text).with_context(|| format!("{}", path.display()));
    }
    Ok(catalog::load_from(catalog_dir().as_deref(), src)?)
}

fn assignment(p: &Presentation, srcs: &[String]) -> Result<Assignment> {
    let consts = Symbols::new();
    let mut a = Assignment::new();
    for part in srcs
        .iter()
        .flat_map(|s| s.split(','))
        .map(str::trim)
        .filter(|s| !s.is_empty())
    {
        let (name, value) = part
            .split_once('=')
            .with_context(|| format!("expected `name=value` in `{part}`"))?;
        let decl = p
            .param(name.trim())
            .ok_or_else(|| pklab::Error::UnknownParameter(name.trim().to_string()))?;
        a.set(decl, parse_scalar(value.trim(), &consts)?)?;
    }
    Ok(a)
}

fn load(input: &Input) -> Result<Presentation> {
    let mut p = load_one(&input.input)?;
    if let Some(q) = &input.product {
        p = p.product(&load_one(q)?)?;
    }
    if !input.assign.is_empty() {
        p = p.assign(&assignment(&p, &input.assign)?)?;
    }
    if let Some(l) = &input.locus {
        p = p.with_locus(&parse_substitution(l, &Symbols::for_presentation(&p))?)?;
    }
    Ok(p)
}

fn param_decls(srcs: &[String]) -> Result<Vec<ParamDecl>> {
    srcs.iter()
        .map(|s| {
            let (name, kind) = s.split_once(':').unwrap_or((s, "complex"));
            match kind.trim() {
                "real" => Ok(ParamDecl::real(name.trim())),
                "complex" => Ok(ParamDecl::complex(name.trim())),
                k => bail!("unknown parameter kind `{k}`"),
            }
        })
        .collect()
}

fn weights(src: &Option<String>) -> Result<Options> {
    let mut o = Options::default();
    if let Some(w) = src {
        o.weights = w
            .split(',')
            .map(|x| x.trim().parse::<i32>())
            .collect::<std::result::Result<_, _>>()?;
    }
    Ok(o)
}

fn bullet(items: &[String]) -> String {
    items.iter().map(|s| format!("  {s}\n")).collect()
}

fn validate(p: &Presentation) -> Result<Outcome> {
    let r = p.validate();
    let mut text = format!(
        "{} (n = {}): {}\n",
        r.label,
        r.n,
        if r.ok() { "valid" } else { "invalid" }
    );
    text += &bullet(&r.failures());
    text += &format!("rationality: {:?}\n", r.rationality);
    Ok(Outcome::new(serde_json::to_value(&r)?, text, r.ok()))
}

fn classify(p: &Presentation) -> Result<Outcome> {
    let a = lie::realize(p)?;
    let (nilpotent, step) = a.nilpotency();
    let centre = a.center().len();
    let lcs = a.lower_central_series();
    let acs = a.ascending_central_series();
    let js = a.j_series();
    let text = format!(
        "nilpotent: {nilpotent}{}\ncenter dimension: {centre}\nlower central series: {lcs:?}\nascending central series: {:?}\nJ-series: {:?} ({})\n",
        step.map(|s| format!(" (step {s})")).unwrap_or_default(),
        acs.dims,
        js.dims,
        js.tag,
    );
    let report = json!({
        "nilpotent": nilpotent,
        "step": step,
        "center_dimension": centre,
        "lower_central_series": lcs,
        "ascending_central_series": acs,
        "j_series": js,
    });
    Ok(Outcome::new(report, text, true))
}

fn parse_degree(
    theory: Theory,
    bidegree: &Option<String>,
    degree: Option<usize>,
) -> Result<Degree> {
    match (bidegree, degree) {
        (Some(b), _) => {
            let (x, y) = b.split_once(',').context("bidegree must be `p,q`")?;
            Ok(Degree::Bi(x.trim().parse()?, y.trim().parse()?))
        }
        (None, Some(k)) => Ok(Degree::Total(k)),
        (None, None) if theory == Theory::DeRham => bail!("--degree is required"),
        (None, None) => bail!("--bidegree is required"),
    }
}

fn cohomology_cmd(
    p: &Presentation,
    theory: Theory,
    degree: Degree,
    opts: &Options,
) -> Result<Outcome> {
    let t = cohomology::cohomology(p, theory, degree, opts)?;
    let mut text = format!(
        "{theory} {degree}: dimension {} [{}]\n",
        t.dimension, t.context
    );
    if !t.pivots.is_empty() {
        text += "assumed nonzero:\n";
        text += &bullet(&t.pivots);
    }
    text += "representatives:\n";
    text += &bullet(&t.representatives);
    for n in &t.notes {
        text += &format!("note: {n}\n");
    }
    let mut report = serde_json::to_value(&t)?;
    if let Degree::Bi(a, b) = degree {
        report["bidegree"] = json!([a, b]);
    }
    Ok(Outcome::new(report, text, true))
}

fn delta_cmd(p: &Presentation, k: usize, opts: &Options) -> Result<Outcome> {
    let d = cohomology::delta_k(p, k, opts)?;
    let text = format!(
        "Delta^{k} = {}\nbott-chern: {:?}\naeppli: {:?}\nb{k} = {}\n",
        d.delta, d.bott_chern, d.aeppli, d.betti
    );
    Ok(Outcome::new(serde_json::to_value(&d)?, text, true))
}

fn matrix_text(m: &[Vec<Scalar>]) -> String {
    m.iter()
        .map(|r| {
            format!(
                "  [{}]\n",
                r.iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect()
}

fn pseudokahler(p: &Presentation, show_metric: bool) -> Result<Outcome> {
    let v = pksolver::pk_exists(p)?;
    let f = &v.family;
    let mut text = format!(
        "pseudo-Kahler: {}\nclosed real (1,1) family: dimension {} [{}]\n  F = {}\n",
        if v.exists { "exists" } else { "none" },
        f.dimension,
        f.context,
        f.form
    );
    if !f.case_split.is_empty() {
        text += "assumed nonzero:\n";
        text += &bullet(&f.case_split);
    }
    text += &format!("F^{} top coefficient: {}\n", p.n, v.nondegeneracy);
    if !v.exists {
        text += "certificate: the top coefficient is the zero polynomial\n";
    }
    let mut report = serde_json::to_value(&v)?;
    for (name, w) in [
        ("witness", &v.witness),
        ("neutral witness", &v.neutral_witness),
    ] {
        if let Some(w) = w {
            text += &format!(
                "{name}: {}\n  top coefficient {}",
                w.form, w.top_coefficient
            );
            if let Some((a, b)) = w.signature {
                text += &format!(", signature ({a},{b})");
            }
            text += "\n";
        }
    }
    if !v.tags.is_empty() {
        text += &format!(
            "tags: {}\n",
            v.tags
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    for n in &v.notes {
        text += &format!("note: {n}\n");
    }
    if show_metric {
        if let Some(w) = &v.witness {
            let g = pksolver::metric_matrix(&w.form_value, p)?;
            text += "metric of the witness on e1..e2n:\n";
            text += &matrix_text(&g);
            report["witness_metric"] = json!(g
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
    }
    Ok(Outcome::new(report, text, v.exists))
}

fn symplectic(p: &Presentation) -> Result<Outcome> {
    let v = pksolver::symplectic_exists(p)?;
    let mut text = format!(
        "symplectic: {}\nclosed real 2-forms: dimension {}\nnondegeneracy: {}\n",
        if v.exists { "exists" } else { "none" },
        v.closed_dimension,
        v.nondegeneracy
    );
    if let Some(w) = &v.witness {
        text += &format!("witness (real coframe): {w}\n");
    }
    Ok(Outcome::new(serde_json::to_value(&v)?, text, v.exists))
}

fn curvature(
    p: &Presentation,
    metric: &str,
    at: &Option<String>,
    params: &[String],
) -> Result<Outcome> {
    let mut syms = Symbols::for_presentation(p);
    let mut decls = param_decls(params)?;
    let mut f = if metric.trim() == "family" {
        let fam = pksolver::closed_compatible_family(p, true)?;
        decls.extend(fam.unknowns.iter().cloned());
        fam.form
    } else {
        for d in &decls {
            syms.declare(d);
        }
        parse_form(metric, &syms)?
    };
    if let Some(at) = at {
        let consts = Symbols::new();
        let mut a = Assignment::new();
        for part in at.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .with_context(|| format!("expected `name=value` in `{part}`"))?;
            let d = decls
                .iter()
                .find(|d| d.name == name.trim())
                .ok_or_else(|| pklab::Error::UnknownParameter(name.trim().to_string()))?;
            a.set(d, parse_scalar(value.trim(), &consts)?)?;
        }
        f = f.substitute(a.substitution())?;
    }
    if !p.is_real(&f) {
        return Err(pklab::Error::NotReal.into());
    }
    let c = levi_civita_of_form(p, &f)?;
    let r = c.curvature();
    let m = 2 * p.n;
    let lbl = |a: usize| basis_label(p.n, a);
    let mut gamma = Vec::new();
    for a in 0..m {
        for b in 0..m {
            for (d, s) in c.gamma[a][b].iter().enumerate() {
                if !s.is_zero() {
                    gamma.push(format!("G({}, {}; {}) = {}", lbl(a), lbl(b), lbl(d), s));
                }
            }
        }
    }
    let mut comps = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for x in 0..m {
                for y in x + 1..m {
                    let s = r.component(a, b, x, y);
                    if !s.is_zero() {
                        comps.push(format!(
                            "R({}, {}, {}, {}) = {}",
                            lbl(a),
                            lbl(b),
                            lbl(x),
                            lbl(y),
                            s
                        ));
                    }
                }
            }
        }
    }
    let ric = r.ricci();
    let mut ricci = Vec::new();
    for a in 0..m {
        for b in a..m {
            if !ric[a][b].is_zero() {
                ricci.push(format!("Ric({}, {}) = {}", lbl(a), lbl(b), ric[a][b]));
            }
        }
    }
    let verdicts = json!({
        "torsion_free": c.torsion_free(),
        "metric_compatible": c.metric_compatible(),
        "j_parallel": c.j_parallel(),
        "flat": r.is_flat(),
        "ricci_flat": r.is_ricci_flat(),
        "symmetries": r.symmetries_hold(),
    });
    let mut text = format!("metric form: {f}\nconnection (nabla_A B = sum G(A, B; D) D):\n");
    text += &bullet(&gamma);
    text += "curvature components R(A,B,C,D) = g(R(A,B)D, C), A<B, C<D:\n";
    text += &bullet(&comps);
    text += "Ricci:\n";
    text += &bullet(&ricci);
    for (k, v) in verdicts.as_object().unwrap() {
        text += &format!("{k}: {v}\n");
    }
    let report = json!({
        "metric": f.to_string(),
        "gamma": gamma,
        "curvature": comps,
        "ricci": ricci,
        "verdicts": verdicts,
    });
    Ok(Outcome::new(report, text, true))
}

fn deform_cmd(
    p: &Presentation,
    subs: &[String],
    params: &[String],
    emit: &Option<PathBuf>,
    compare: &Option<String>,
) -> Result<Outcome> {
    let lines: Vec<&str> = subs.iter().map(String::as_str).collect();
    let s = CoframeSubstitution::parse(p, &lines, param_decls(params)?)?;
    let q = deform::deform(p, &s)?;
    let printed = q.to_string();
    if let Some(path) = emit {
        std::fs::write(path, &printed).with_context(|| format!("writing {}", path.display()))?;
    }
    let mut text = printed.clone();
    let mut report = json!({
        "presentation": printed,
        "delbar_closed_pieces": deform::inserted_pieces_delbar_closed(p, &s)?,
    });
    let mut ok = true;
    if let Some(c) = compare {
        let (same, diff) = deform::compare(&q, &load_one(c)?);
        ok = same;
        text += &format!("matches {c}: {same}\n");
        text += &bullet(&diff);
        report["matches"] = json!(same);
        report["differences"] = json!(diff);
    }
    Ok(Outcome::new(report, text, ok))
}

fn decompose(p: &Presentation, form: &str, params: &[String]) -> Result<Outcome> {
    let mut syms = Symbols::for_presentation(p);
    for d in param_decls(params)? {
        syms.declare(&d);
    }
    let om = parse_form(form, &syms)?;
    let d = pksolver::phs_decompose(&om, p)?;
    let text = format!(
        "alpha (2,0): {}\nF (1,1): {}\nbeta (0,2): {}\nbeta = conj(alpha): {}\nF^{} top coefficient: {}\ndF: {}\n",
        d.alpha, d.f, d.beta, d.beta_is_conj_alpha, p.n, d.top_coefficient, d.d_f
    );
    Ok(Outcome::new(serde_json::to_value(&d)?, text, true))
}

fn sweep(p: &Presentation, param: &str, spec: &str) -> Result<Outcome> {
    let decl = p
        .param(param)
        .ok_or_else(|| pklab::Error::UnknownParameter(param.to_string()))?
        .clone();
    let (re, im) = grid::parse(spec)?;
    if decl.var().is_real() && im.iter().any(|d| d.num != 0) {
        bail!("parameter {param} is real; the grid must not have an imaginary axis");
    }
    let points: Vec<(grid::Decimal, grid::Decimal)> = re
        .iter()
        .flat_map(|&a| im.iter().map(move |&b| (a, b)))
        .collect();
    let rows: Vec<Value> = points
        .par_iter()
        .map(|&(a, b)| {
            let val = &Scalar::from_ratio(a.num, a.denominator())
                + &(&Scalar::i() * &Scalar::from_ratio(b.num, b.denominator()));
            let eval = || -> pklab::Result<(usize, bool, usize)> {
                let q = p.assign(&Assignment::new().with(&decl, val.clone())?)?;
                let v = pksolver::pk_exists(&q)?;
                let bc = cohomology::dimension(
                    &q,
                    Theory::BottChern,
                    Degree::Bi(1, 1),
                    &Options::default(),
                )?;
                Ok((v.family.dimension, v.exists, bc))
            };
            let mut row = json!({"re": a.to_string(), "im": b.to_string()});
            match eval() {
                Ok((fam, pk, bc)) => {
                    row["family_dimension"] = json!(fam);
                    row["pseudo_kahler"] = json!(pk);
                    row["bott_chern_11"] = json!(bc);
                }
                Err(e) => row["error"] = json!(e.to_string()),
            }
            row
        })
        .collect();
    let mut text = String::from("re,im,family_dimension,pseudo_kahler,bott_chern_11,error\n");
    for r in &rows {
        let cell = |k: &str| {
            r.get(k)
                .map(|v| v.to_string().trim_matches('"').to_string())
                .unwrap_or_default()
        };
        let err = cell("error");
        let err = if err.is_empty() {
            err
        } else {
            format!("\"{}\"", err.replace('"', "'"))
        };
        text += &format!(
            "{},{},{},{},{},{}\n",
            cell("re"),
            cell("im"),
            cell("family_dimension"),
            cell("pseudo_kahler"),
            cell("bott_chern_11"),
            err
        );
    }
    Ok(Outcome::new(
        json!({"param": param, "rows": rows}),
        text,
        true,
    ))
}

fn catalog_cmd(verify: bool, show: &Option<String>) -> Result<Outcome> {
    let dir = catalog_dir();
    if let Some(id) = show {
        let p = catalog::load_from(dir.as_deref(), id)?;
        let text = p.to_string();
        return Ok(Outcome::new(
            json!({"id": id, "presentation": text}),
            text,
            true,
        ));
    }
    if verify {
        let checks = catalog::verify(dir.as_deref())?;
        let ok = checks.iter().all(|c| c.ok);
        let mut text = String::new();
        for c in &checks {
            text += &format!("{}: {}\n", c.id, if c.ok { "ok" } else { "MISMATCH" });
            text += &bullet(&c.mismatches);
        }
        return Ok(Outcome::new(json!({"entries": checks, "ok": ok}), text, ok));
    }
    let mut entries = Vec::new();
    let mut text = String::new();
    for id in catalog::ids() {
        let p = catalog::load_from(dir.as_deref(), &id)?;
        let params: Vec<&str> = p.params.iter().map(|d| d.name.as_str()).collect();
        text += &format!("{id:<12} n = {}  params [{}]\n", p.n, params.join(", "));
        entries.push(json!({"id": id, "n": p.n, "params": params, "twisted": p.twist.is_some()}));
    }
    Ok(Outcome::new(json!({"entries": entries}), text, true))
}

fn run(cmd: &Cmd) -> Result<(&'static str, Option<String>, Outcome)> {
    let name = |i: &Input| Some(i.input.clone());
    Ok(match cmd {
        Cmd::Validate(i) => ("validate", name(i), validate(&load(i)?)?),
        Cmd::Classify(i) => ("classify", name(i), classify(&load(i)?)?),
        Cmd::Cohomology {
            input,
            theory,
            bidegree,
            degree,
            weights: w,
        } => {
            let theory: Theory = theory.parse()?;
            let degree = parse_degree(theory, bidegree, *degree)?;
            (
                "cohomology",
                name(input),
                cohomology_cmd(&load(input)?, theory, degree, &weights(w)?)?,
            )
        }
        Cmd::Delta {
            input,
            k,
            weights: w,
        } => (
            "delta",
            name(input),
            delta_cmd(&load(input)?, *k, &weights(w)?)?,
        ),
        Cmd::Pseudokahler { input, witness } => (
            "pseudokahler",
            name(input),
            pseudokahler(&load(input)?, *witness)?,
        ),
        Cmd::Symplectic(i) => ("symplectic", name(i), symplectic(&load(i)?)?),
        Cmd::Curvature {
            input,
            metric,
            at,
            param,
        } => (
            "curvature",
            name(input),
            curvature(&load(input)?, metric, at, param)?,
        ),
        Cmd::Deform {
            input,
            sub,
            param,
            emit,
            compare,
        } => (
            "deform",
            name(input),
            deform_cmd(&load(input)?, sub, param, emit, compare)?,
        ),
        Cmd::Decompose { input, form, param } => (
            "decompose",
            name(input),
            decompose(&load(input)?, form, param)?,
        ),
        Cmd::Sweep { input, param, grid } => {
            ("sweep", name(input), sweep(&load(input)?, param, grid)?)
        }
        Cmd::Catalog { verify, show } => ("catalog", None, catalog_cmd(*verify, show)?),
    })
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.cmd) {
        Ok((command, input, out)) => {
            if cli.json {
                let report = json!({
                    "command": command,
                    "input": input,
                    "ok": out.ok,
                    "report": out.report,
                    "timing_ms": start.elapsed().as_millis() as u64,
                });
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
