use serde::{Deserialize, Serialize};

use super::qubo::{Qubo, QuboJson};
use crate::error::{Error, Result};
use crate::instances::{Graph, TspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodingKind {
    Udmis,
    Maxcut,
    TspQap,
    TspMtz,
    TspDfj,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 5] = [
        EncodingKind::Udmis,
        EncodingKind::Maxcut,
        EncodingKind::TspQap,
        EncodingKind::TspMtz,
        EncodingKind::TspDfj,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EncodingKind::Udmis => "udmis",
            EncodingKind::Maxcut => "maxcut",
            EncodingKind::TspQap => "tsp_qap",
            EncodingKind::TspMtz => "tsp_mtz",
            EncodingKind::TspDfj => "tsp_dfj",
        }
    }

    pub fn is_tsp(self) -> bool {
        matches!(
            self,
            EncodingKind::TspQap | EncodingKind::TspMtz | EncodingKind::TspDfj
        )
    }
}

impl std::fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EncodingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "udmis" | "mis" => EncodingKind::Udmis,
            "maxcut" => EncodingKind::Maxcut,
            "tsp_qap" | "qap" => EncodingKind::TspQap,
            "tsp_mtz" | "mtz" => EncodingKind::TspMtz,
            "tsp_dfj" | "dfj" => EncodingKind::TspDfj,
            other => return Err(Error::UnknownTag(other.to_string())),
        })
    }
}

/// Meaning of one QUBO variable. Node indices are 0-based; node 0 plays the
/// role of the fixed start city in the TSP encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VarRole {
    /// MIS membership or MaxCut side of a node.
    Node { node: usize },
    /// DFJ undirected edge `x_ij`, `i < j`.
    Edge { i: usize, j: usize },
    /// MTZ directed arc `x_ij`.
    Arc { from: usize, to: usize },
    /// QAP `y_ik`: `node` is visited at `step`.
    Assignment { node: usize, step: usize },
    /// Bit `bit` of the MTZ position `u_node - 2`.
    OrderBit { node: usize, bit: u32 },
    /// Slack bit of the MTZ ordering constraint for the pair `(from, to)`.
    OrderSlack { from: usize, to: usize, bit: u32 },
    /// Slack bit of the DFJ subtour constraint on `subset`.
    SubtourSlack { subset: Vec<usize>, bit: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Graph(Graph),
    Tsp(TspInstance),
}

/// A QUBO together with everything needed to interpret its bitstrings.
///
/// `x^T Q x + offset` equals the minimization form of the source objective
/// plus all penalty terms; `offset` collects the constants of the expanded
/// squares.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingRecord {
    pub kind: EncodingKind,
    pub qubo: Qubo,
    pub offset: f64,
    /// Main penalty coefficient (degree / one-hot / edge penalty).
    pub penalty: f64,
    /// MTZ ordering-constraint penalty.
    pub penalty2: Option<f64>,
    pub roles: Vec<VarRole>,
    pub source: Source,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Meta {
    kind: EncodingKind,
    offset: f64,
    penalty: f64,
    penalty2: Option<f64>,
    roles: Vec<VarRole>,
    source: Source,
    #[serde(default)]
    warnings: Vec<String>,
}

impl EncodingRecord {
    pub fn n(&self) -> usize {
        self.qubo.n()
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.source {
            Source::Graph(g) => Some(g),
            Source::Tsp(_) => None,
        }
    }

    pub fn tsp(&self) -> Option<&TspInstance> {
        match &self.source {
            Source::Tsp(t) => Some(t),
            Source::Graph(_) => None,
        }
    }

    /// Index of the first variable with the given role.
    pub fn index_of(&self, role: &VarRole) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// QUBO JSON with the record as `meta`.
    pub fn to_json(&self) -> Result<String> {
        let meta = Meta {
            kind: self.kind,
            offset: self.offset,
            penalty: self.penalty,
            penalty2: self.penalty2,
            roles: self.roles.clone(),
            source: self.source.clone(),
            warnings: self.warnings.clone(),
        };
        Ok(serde_json::to_string(&self.qubo.to_raw(Some(meta)))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuboJson<Meta> = serde_json::from_str(text)?;
        let (qubo, meta) = Qubo::from_raw(raw)?;
        let meta = meta.ok_or_else(|| Error::Format("QUBO file has no encoding meta".into()))?;
        if meta.roles.len() != qubo.n() {
            return Err(Error::Format(format!(
                "{} roles for {} variables",
                meta.roles.len(),
                qubo.n()
            )));
        }
        Ok(EncodingRecord {
            kind: meta.kind,
            qubo,
            offset: meta.offset,
            penalty: meta.penalty,
            penalty2: meta.penalty2,
            roles: meta.roles,
            source: meta.source,
            warnings: meta.warnings,
        })
    }
}

pub(crate) fn check_penalty(name: &str, value: f64) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "penalty {name} must be positive and finite, got {value}"
        )));
    }
    Ok(value)
}

/// Resolves an optional override against the default, recording a warning
/// when the override is smaller than the default.
pub(crate) fn resolve_penalty(
    name: &str,
    given: Option<f64>,
    default: f64,
    warnings: &mut Vec<String>,
) -> Result<f64> {
    match given {
        None => Ok(default),
        Some(m) => {
            let m = check_penalty(name, m)?;
            if m < default {
                warnings.push(format!(
                    "{name} = {m} is below the default {default}; optima may be infeasible"
                ));
            }
            Ok(m)
        }
    }
}
