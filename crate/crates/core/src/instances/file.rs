//! JSON instance files.
//!
//! ```json
//! {"class": "udmis", "seed": 7, "params": {"radius": 1.42, "width": 4, "height": 4}, "points": [[0, 1], ...]}
//! {"class": "maxcut", "seed": 7, "params": {"n": 12, "p": 0.5}, "edges": [[0, 3, 2.5], ...]}
//! {"class": "tsp", "seed": null, "params": {}, "matrix": [[0, 3], [3, 0]]}
//! ```
//!
//! `params` carries the generator arguments. The fields needed to rebuild
//! the instance (`radius`, `width`, `height` for UD-MIS, `n` for MaxCut) are
//! required; anything else is kept verbatim.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{Graph, TspInstance, UnitDiskInstance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemClass {
    Udmis,
    Maxcut,
    Tsp,
}

impl ProblemClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemClass::Udmis => "udmis",
            ProblemClass::Maxcut => "maxcut",
            ProblemClass::Tsp => "tsp",
        }
    }

    /// UD-MIS and MaxCut maximize; TSP minimizes.
    pub fn maximizes(self) -> bool {
        !matches!(self, ProblemClass::Tsp)
    }
}

impl std::str::FromStr for ProblemClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "udmis" => Ok(ProblemClass::Udmis),
            "maxcut" => Ok(ProblemClass::Maxcut),
            "tsp" => Ok(ProblemClass::Tsp),
            other => Err(Error::UnknownTag(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Udmis(UnitDiskInstance),
    MaxCut(Graph),
    Tsp(TspInstance),
}

impl Instance {
    pub fn class(&self) -> ProblemClass {
        match self {
            Instance::Udmis(_) => ProblemClass::Udmis,
            Instance::MaxCut(_) => ProblemClass::Maxcut,
            Instance::Tsp(_) => ProblemClass::Tsp,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Instance::Udmis(u) => u.node_count(),
            Instance::MaxCut(g) => g.node_count(),
            Instance::Tsp(t) => t.node_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub seed: Option<u64>,
    pub params: Map<String, Value>,
    pub instance: Instance,
}

#[derive(Serialize, Deserialize)]
struct RawFile {
    class: ProblemClass,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<(i64, i64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<f64>>>,
}

fn param<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    params
        .get(key)
        .ok_or_else(|| Error::Format(format!("params.{key} is required")))
}

fn param_f64(params: &Map<String, Value>, key: &str) -> Result<f64> {
    param(params, key)?
        .as_f64()
        .ok_or_else(|| Error::Format(format!("params.{key} must be a number")))
}

fn param_i64(params: &Map<String, Value>, key: &str) -> Result<i64> {
    param(params, key)?
        .as_i64()
        .ok_or_else(|| Error::Format(format!("params.{key} must be an integer")))
}

fn missing(class: ProblemClass, field: &str) -> Error {
    Error::Format(format!("{} file without `{field}`", class.as_str()))
}

impl InstanceFile {
    pub fn new(instance: Instance, seed: Option<u64>, mut params: Map<String, Value>) -> Self {
        match &instance {
            Instance::Udmis(u) => {
                params.insert("radius".into(), u.radius.into());
                params.insert("width".into(), u.width.into());
                params.insert("height".into(), u.height.into());
            }
            Instance::MaxCut(g) => {
                params.insert("n".into(), g.node_count().into());
            }
            Instance::Tsp(_) => {}
        }
        InstanceFile {
            seed,
            params,
            instance,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut raw = RawFile {
            class: self.instance.class(),
            seed: self.seed,
            params: self.params.clone(),
            points: None,
            edges: None,
            matrix: None,
        };
        match &self.instance {
            Instance::Udmis(u) => raw.points = Some(u.points.clone()),
            Instance::MaxCut(g) => {
                raw.edges = Some(g.edges().iter().map(|e| (e.i, e.j, e.weight)).collect())
            }
            Instance::Tsp(t) => raw.matrix = Some(t.rows()),
        }
        Ok(serde_json::to_string_pretty(&raw)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFile = serde_json::from_str(text)?;
        let instance = match raw.class {
            ProblemClass::Udmis => {
                let points = raw.points.ok_or_else(|| missing(raw.class, "points"))?;
                Instance::Udmis(UnitDiskInstance::new(
                    points,
                    param_f64(&raw.params, "radius")?,
                    param_i64(&raw.params, "width")?,
                    param_i64(&raw.params, "height")?,
                )?)
            }
            ProblemClass::Maxcut => {
                let edges = raw.edges.ok_or_else(|| missing(raw.class, "edges"))?;
                let n = param_i64(&raw.params, "n")?;
                let n = usize::try_from(n)
                    .map_err(|_| Error::Format(format!("params.n = {n} is negative")))?;
                Instance::MaxCut(Graph::from_edges(n, edges)?)
            }
            ProblemClass::Tsp => {
                let matrix = raw.matrix.ok_or_else(|| missing(raw.class, "matrix"))?;
                Instance::Tsp(TspInstance::from_rows(matrix)?)
            }
        };
        Ok(InstanceFile {
            seed: raw.seed,
            params: raw.params,
            instance,
        })
    }
}
