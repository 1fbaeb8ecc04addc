//! JSON input formats and DOT output.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_rational::Rational64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::constructions::{ConstructionError, FiniteGroup, GroupAction, Semimatroid};
use crate::poset::{Poset, PosetError, RankedPoset};
use crate::scheme::{MatroidScheme, SchemeError};
use crate::toric::{Character, ToricArrangement, ToricError};

/// Problems with the input itself, as opposed to a well-formed input that
/// fails an axiom.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{path}: {msg}")]
    Json { path: String, msg: String },
    #[error("{0}")]
    Format(String),
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| InputError::Json {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
}

/// `{"elements": [{"id", "rho"}], "covers": [[lower, upper]]}`. The same
/// shape serves posets, where `rho` may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub elements: Vec<ElementEntry>,
    pub covers: Vec<(String, String)>,
}

impl SchemeFile {
    /// Elements in scheme order, covers sorted by the positions of their ends.
    pub fn from_scheme(m: &MatroidScheme) -> Self {
        Self::from_poset(m.poset(), Some(m.rhos()))
    }

    pub fn from_poset(p: &Poset, rho: Option<&[usize]>) -> Self {
        let elements = (0..p.len())
            .map(|i| ElementEntry {
                id: p.id(i).to_string(),
                rho: rho.map(|r| r[i]),
            })
            .collect();
        let mut covers: Vec<(usize, usize)> = p.covers().collect();
        covers.sort_unstable();
        Self {
            comment: None,
            elements,
            covers: covers
                .into_iter()
                .map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string()))
                .collect(),
        }
    }

    /// Unknown or duplicate identifiers are input errors; other structural
    /// defects are reported as [`PosetError`].
    pub fn poset(&self) -> Result<Result<Poset, PosetError>, InputError> {
        let ids: Vec<&str> = self.elements.iter().map(|e| e.id.as_str()).collect();
        match Poset::new(&ids, &self.covers) {
            Err(e @ (PosetError::DuplicateIdentifier(_) | PosetError::UnknownIdentifier(_))) => {
                Err(InputError::Format(e.to_string()))
            }
            other => Ok(other),
        }
    }

    pub fn rhos(&self) -> Result<Vec<usize>, InputError> {
        self.elements
            .iter()
            .map(|e| e.rho.ok_or_else(|| InputError::Format(format!("element `{}` has no rho", e.id))))
            .collect()
    }

    pub fn scheme(&self) -> Result<Result<MatroidScheme, SchemeError>, InputError> {
        let rho = self.rhos()?;
        Ok(match self.poset()? {
            Ok(p) => MatroidScheme::new(p, rho),
            Err(e) => Err(e.into()),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub face: Vec<String>,
    pub rank: usize,
}

/// `{"vertices": [..], "faces": [{"face": [..], "rank": r}]}`, listing every
/// face including the empty one.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemimatroidFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub vertices: Vec<String>,
    pub faces: Vec<FaceEntry>,
}

impl SemimatroidFile {
    pub fn semimatroid(&self, cap: usize) -> Result<Result<Semimatroid, ConstructionError>, InputError> {
        let mut faces = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            let idx = f
                .face
                .iter()
                .map(|v| {
                    self.vertices
                        .iter()
                        .position(|w| w == v)
                        .ok_or_else(|| InputError::Format(format!("unknown vertex `{v}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            faces.push((idx, f.rank));
        }
        Ok(Semimatroid::with_cap(self.vertices.clone(), &faces, cap))
    }
}

/// `{"elements": [names], "table": [[names]]}` with `table[a][b] = a·b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

fn lookup(names: &[String], s: &str, what: &str) -> Result<usize, InputError> {
    names
        .iter()
        .position(|n| n == s)
        .ok_or_else(|| InputError::Format(format!("unknown {what} `{s}`")))
}

impl GroupFile {
    pub fn group(&self) -> Result<Result<FiniteGroup, ConstructionError>, InputError> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|s| lookup(&self.elements, s, "group element")).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        Ok(FiniteGroup::new(self.elements.clone(), table))
    }
}

/// `{"points": [..], "table": {"g": [images of the points]}}`. An optional
/// `cofinite` flag is read but has no effect: finite actions always are.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofinite: Option<bool>,
    pub points: Vec<String>,
    pub table: BTreeMap<String, Vec<String>>,
}

impl ActionFile {
    pub fn action(&self, group: FiniteGroup) -> Result<Result<GroupAction, ConstructionError>, InputError> {
        let mut table = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let row = self
                .table
                .get(group.name(g))
                .ok_or_else(|| InputError::Format(format!("no row for group element `{}`", group.name(g))))?;
            table.push(
                row.iter()
                    .map(|p| lookup(&self.points, p, "point"))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        if let Some(extra) = self.table.keys().find(|k| group.index_of(k).is_none()) {
            return Err(InputError::Format(format!("unknown group element `{extra}`")));
        }
        Ok(GroupAction::new(group, self.points.clone(), table))
    }
}

/// `{"names": [..], "columns": [[ints]]}`; names default to `1..n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    pub columns: Vec<Vec<i64>>,
}

impl LinearFile {
    pub fn names(&self) -> Vec<String> {
        self.names
            .clone()
            .unwrap_or_else(|| (1..=self.columns.len()).map(|i| i.to_string()).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub alpha: Vec<i64>,
    /// `"p/q"` or an integer.
    pub phase: String,
}

/// `{"n": int, "characters": [{"alpha": [..], "phase": "p/q"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub n: usize,
    pub characters: Vec<CharacterEntry>,
}

impl ArrangementFile {
    pub fn arrangement(&self) -> Result<Result<ToricArrangement, ToricError>, InputError> {
        let mut chars = Vec::with_capacity(self.characters.len());
        for (i, c) in self.characters.iter().enumerate() {
            let phase = Rational64::from_str(c.phase.trim())
                .map_err(|_| InputError::Format(format!("bad phase `{}`", c.phase)))?;
            let name = c.name.clone().unwrap_or_else(|| format!("H{}", i + 1));
            match Character::new(name, c.alpha.clone(), phase) {
                Ok(ch) => chars.push(ch),
                Err(e) => return Ok(Err(e)),
            }
        }
        Ok(ToricArrangement::new(self.n, chars))
    }

    pub fn from_arrangement(arr: &ToricArrangement) -> Self {
        Self {
            comment: None,
            n: arr.n(),
            characters: arr
                .characters()
                .iter()
                .map(|c| CharacterEntry {
                    name: Some(c.name.clone()),
                    alpha: c.alpha.clone(),
                    phase: c.phase.to_string(),
                })
                .collect(),
        }
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Hasse diagram as a DOT digraph, bottom to top, one `rank=same`
/// group per rank. Nodes are labeled `id : ρ`.
pub fn to_dot(rp: &RankedPoset, rho: &[usize]) -> String {
    let p = rp.poset();
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..p.len() {
        out.push_str(&format!(
            "  n{i} [label={}];\n",
            dot_quote(&format!("{} : {}", p.id(i), rho[i]))
        ));
    }
    let top = rp.ranks().iter().copied().max().unwrap_or(0);
    for r in 0..=top {
        let nodes: Vec<String> = (0..p.len()).filter(|&i| rp.rank(i) == r).map(|i| format!("n{i}")).collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", nodes.join("; ")));
    }
    let mut covers: Vec<(usize, usize)> = p.covers().collect();
    covers.sort_unstable();
    for (a, b) in covers {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
