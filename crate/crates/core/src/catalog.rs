//! Presentations shipped with the library.

use std::path::Path;

use crate::error::{Error, Result};
use crate::exterior::{parse_presentation, Presentation};

const FILES: &[(&str, &str)] = &[
    ("ecccus", include_str!("../catalog/ecccus.pk")),
    ("ecccus-t", include_str!("../catalog/ecccus-t.pk")),
    ("X-gen-ecus", include_str!("../catalog/X-gen-ecus.pk")),
    ("ejemplo2", include_str!("../catalog/ejemplo2.pk")),
    ("KT", include_str!("../catalog/KT.pk")),
    ("iwasawa", include_str!("../catalog/iwasawa.pk")),
    ("iwasawa-def", include_str!("../catalog/iwasawa-def.pk")),
    ("nakamura", include_str!("../catalog/nakamura.pk")),
    ("nakamura-t", include_str!("../catalog/nakamura-t.pk")),
    ("eleccion", include_str!("../catalog/eleccion.pk")),
    ("eleccion-t", include_str!("../catalog/eleccion-t.pk")),
    ("h3-example", include_str!("../catalog/h3-example.pk")),
];

/// Golden values re-derived by `pklab catalog --verify`.
pub const GOLDENS: &str = include_str!("../catalog/goldens.json");

/// Fixed entries plus the representative tori `torus-1` … `torus-4`.
pub fn ids() -> Vec<String> {
    let mut v: Vec<String> = FILES.iter().map(|(id, _)| id.to_string()).collect();
    v.extend((1..=4).map(|n| format!("torus-{n}")));
    v
}

fn torus_dim(id: &str) -> Option<usize> {
    id.strip_prefix("torus-")?.parse().ok().filter(|&n| n > 0)
}

/// Source text of an entry; tori of any dimension are generated.
pub fn source(id: &str) -> Result<String> {
    if let Some(n) = torus_dim(id) {
        return Ok(format!("label {id}\ndim {n}\n"));
    }
    FILES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::UnknownCatalog(id.to_string()))
}

pub fn load(id: &str) -> Result<Presentation> {
    parse_presentation(&source(id)?)
}

/// Looks up `<dir>/<id>.pk` first, falling back to the embedded copy.
pub fn load_from(dir: Option<&Path>, id: &str) -> Result<Presentation> {
    if let Some(d) = dir {
        let p = d.join(format!("{id}.pk"));
        if p.is_file() {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            return parse_presentation(&text);
        }
    }
    load(id)
}

/// Values re-derived for every entry by [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Golden {
    pub valid: bool,
    pub n: usize,
    pub family_dimension: usize,
    pub pseudo_kahler: bool,
    pub tags: Vec<String>,
    pub bott_chern_11: usize,
    pub betti: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_2: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<bool>,
}

pub fn derive(p: &Presentation) -> Result<Golden> {
    use crate::cohomology::{cohomology, delta_k, Degree, Options, Theory};
    let opts = Options::default();
    let verdict = crate::pksolver::pk_exists(p)?;
    let plain = !p.is_parametric() && p.twist.is_none();
    let betti = (0..=2)
        .map(|k| Ok(cohomology(p, Theory::DeRham, Degree::Total(k), &opts)?.dimension))
        .collect::<Result<_>>()?;
    Ok(Golden {
        valid: p.validate().ok(),
        n: p.n,
        family_dimension: verdict.family.dimension,
        pseudo_kahler: verdict.exists,
        tags: verdict.tags.iter().map(|t| t.to_string()).collect(),
        bott_chern_11: cohomology(p, Theory::BottChern, Degree::Bi(1, 1), &opts)?.dimension,
        betti,
        delta_2: if p.n <= 3 {
            Some(delta_k(p, 2, &opts)?.delta)
        } else {
            None
        },
        symplectic: if plain {
            Some(crate::pksolver::symplectic_exists(p)?.exists)
        } else {
            None
        },
        nilpotent: if plain {
            Some(crate::lie::realize(p)?.nilpotency().0)
        } else {
            None
        },
    })
}

/// Shipped golden values, keyed by entry id.
pub fn goldens() -> Result<std::collections::BTreeMap<String, Golden>> {
    serde_json::from_str(GOLDENS).map_err(|e| Error::Invalid(format!("goldens.json: {e}")))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct EntryCheck {
    pub id: String,
    pub ok: bool,
    pub derived: Golden,
    pub mismatches: Vec<String>,
}

/// Re-derives every golden value and compares it with the shipped file.
pub fn verify(dir: Option<&Path>) -> Result<Vec<EntryCheck>> {
    use rayon::prelude::*;
    let shipped = goldens()?;
    ids()
        .par_iter()
        .map(|id| {
            let derived = derive(&load_from(dir, id)?)?;
            let mut mismatches = Vec::new();
            match shipped.get(id) {
                None => mismatches.push("no golden entry".to_string()),
                Some(g) => {
                    let (a, b) = (
                        serde_json::to_value(g).unwrap(),
                        serde_json::to_value(&derived).unwrap(),
                    );
                    for (k, v) in b.as_object().unwrap() {
                        if a.get(k) != Some(v) {
                            mismatches.push(format!(
                                "{k}: expected {}, derived {v}",
                                a.get(k).unwrap_or(&serde_json::Value::Null)
                            ));
                        }
                    }
                }
            }
            Ok(EntryCheck {
                id: id.clone(),
                ok: mismatches.is_empty(),
                derived,
                mismatches,
            })
        })
        .collect()
}
