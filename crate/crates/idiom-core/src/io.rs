//! JSON interchange formats: lattices (with an optional interval-set
//! payload), element maps, interval-valued maps, and the corpus manifest.
//!
//! Emission is deterministic: ids are written in canonical order and all
//! tables as sorted maps. Closure-level flags are never serialized —
//! levels are recomputed on load.

use crate::error::{Error, Result};
use crate::fixtures::{CorpusEntry, Provenance};
use crate::interval::IntervalSet;
use crate::lattice::{El, FiniteLattice};
use crate::nuclei::ElementMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<(String, String)>>,
}

pub fn parse_lattice(json: &str) -> Result<(FiniteLattice, Option<IntervalSet>)> {
    let file: LatticeFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    let l = FiniteLattice::from_relation(&file.elements, &file.covers)?;
    let set = match file.intervals {
        None => None,
        Some(pairs) => {
            let mut s = IntervalSet::empty(&l);
            for (lo, hi) in pairs {
                let iv = l.iv(l.el(&lo)?, l.el(&hi)?)?;
                s.insert(&l, iv);
            }
            Some(s)
        }
    };
    Ok((l, set))
}

pub fn emit_lattice(l: &FiniteLattice, set: Option<&IntervalSet>) -> String {
    let file = LatticeFile {
        elements: l.els().map(|x| l.id(x).to_string()).collect(),
        covers: l
            .covers()
            .iter()
            .map(|&(a, b)| (l.id(a).to_string(), l.id(b).to_string()))
            .collect(),
        intervals: set.map(|s| {
            s.iter(l)
                .map(|iv| (l.id(iv.lo).to_string(), l.id(iv.hi).to_string()))
                .collect()
        }),
    };
    serde_json::to_string_pretty(&file).expect("lattice files always serialize")
}

#[derive(Serialize, Deserialize)]
pub struct ElementMapFile {
    pub map: BTreeMap<String, String>,
}

pub fn parse_element_map(l: &FiniteLattice, json: &str) -> Result<ElementMap> {
    let file: ElementMapFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    let mut table: Vec<Option<El>> = vec![None; l.n()];
    for (from, to) in &file.map {
        table[l.el(from)?.0 as usize] = Some(l.el(to)?);
    }
    let table: Vec<El> = table
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::NotTotal(format!("map is missing element {:?}", l.id(El(i as u16))))
            })
        })
        .collect::<Result<_>>()?;
    Ok(ElementMap::from_table(table))
}

pub fn emit_element_map(l: &FiniteLattice, m: &ElementMap) -> String {
    let file = ElementMapFile {
        map: l
            .els()
            .map(|x| (l.id(x).to_string(), l.id(m.apply(x)).to_string()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("element maps always serialize")
}

#[derive(Serialize, Deserialize)]
pub struct IntervalMapFile {
    pub lattice: String,
    #[serde(rename = "valueLattice")]
    pub value_lattice: String,
    pub table: BTreeMap<String, String>,
}

/// Parses an interval-valued map. The `lattice`/`valueLattice` name fields
/// are compared with the caller's expectations when given; a mismatch is a
/// mixed-lattice error.
pub fn parse_interval_map(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    expect_names: Option<(&str, &str)>,
    json: &str,
) -> Result<crate::allocation::IntervalValuedMap> {
    let file: IntervalMapFile =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    if let Some((base, value)) = expect_names {
        if file.lattice != base || file.value_lattice != value {
            return Err(Error::MixedLattices(format!(
                "map is declared over ({}, {}), expected ({}, {})",
                file.lattice, file.value_lattice, base, value
            )));
        }
    }
    let mut values: Vec<Option<El>> = vec![None; l.interval_count()];
    for (key, v) in &file.table {
        let (lo, hi) = key.split_once(',').ok_or_else(|| {
            Error::InvalidInput(format!("interval key {key:?} is not of the form lo,hi"))
        })?;
        let iv = l.iv(l.el(lo)?, l.el(hi)?)?;
        values[l.iv_idx(iv)] = Some(lambda.el(v)?);
    }
    let values: Vec<El> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let iv = l.iv_at(i);
                Error::NotTotal(format!(
                    "map is missing interval [{}, {}]",
                    l.id(iv.lo),
                    l.id(iv.hi)
                ))
            })
        })
        .collect::<Result<_>>()?;
    Ok(crate::allocation::IntervalValuedMap::from_values(values))
}

pub fn emit_interval_map(
    l: &FiniteLattice,
    lambda: &FiniteLattice,
    names: (&str, &str),
    f: &crate::allocation::IntervalValuedMap,
) -> String {
    let file = IntervalMapFile {
        lattice: names.0.to_string(),
        value_lattice: names.1.to_string(),
        table: l
            .intervals()
            .iter()
            .enumerate()
            .map(|(i, &iv)| {
                (
                    format!("{},{}", l.id(iv.lo), l.id(iv.hi)),
                    lambda.id(f.get_idx(i)).to_string(),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("interval maps always serialize")
}

#[derive(Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub provenance: Provenance,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
pub struct CorpusManifest {
    pub schema: u32,
    pub entries: Vec<ManifestEntry>,
}

pub fn emit_manifest(entries: &[CorpusEntry]) -> String {
    let manifest = CorpusManifest {
        schema: 1,
        entries: entries
            .iter()
            .map(|e| ManifestEntry {
                name: e.name.clone(),
                provenance: e.provenance.clone(),
                elements: e.lattice.els().map(|x| e.lattice.id(x).to_string()).collect(),
                covers: e
                    .lattice
                    .covers()
                    .iter()
                    .map(|&(a, b)| {
                        (e.lattice.id(a).to_string(), e.lattice.id(b).to_string())
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&manifest).expect("manifests always serialize")
}

pub fn parse_manifest(json: &str) -> Result<Vec<CorpusEntry>> {
    let manifest: CorpusManifest =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
    if manifest.schema != 1 {
        return Err(Error::InvalidInput(format!(
            "unsupported manifest schema {}",
            manifest.schema
        )));
    }
    manifest
        .entries
        .into_iter()
        .map(|e| {
            Ok(CorpusEntry {
                lattice: FiniteLattice::from_relation(&e.elements, &e.covers)?,
                name: e.name,
                provenance: e.provenance,
            })
        })
        .collect()
}

/// Serializes an interval set as the envelope of its lattice.
pub fn emit_interval_set(l: &FiniteLattice, s: &IntervalSet) -> String {
    emit_lattice(l, Some(s))
}
