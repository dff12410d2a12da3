//! Read-only TSPLIB ingestion for `EUC_2D` and `EXPLICIT`/`FULL_MATRIX`
//! symmetric instances.

use super::TspInstance;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WeightType {
    Euc2d,
    Explicit,
}

/// TSPLIB `nint` of the Euclidean distance.
pub fn euc_2d(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    (dx.hypot(dy) + 0.5).floor()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_tsplib(text: &str) -> Result<TspInstance> {
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<WeightType> = None;
    let mut full_matrix = false;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut saw_coords = false;
    let mut saw_weights = false;

    while let Some((ln, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (line, None),
        };
        match (key, value) {
            ("TYPE", Some(v)) => {
                if v != "TSP" {
                    return Err(Error::Format(format!("TYPE {v}")));
                }
            }
            ("DIMENSION", Some(v)) => {
                let d = v
                    .parse::<usize>()
                    .map_err(|_| parse_err(ln, format!("bad DIMENSION `{v}`")))?;
                dimension = Some(d);
            }
            ("EDGE_WEIGHT_TYPE", Some(v)) => {
                weight_type = Some(match v {
                    "EUC_2D" => WeightType::Euc2d,
                    "EXPLICIT" => WeightType::Explicit,
                    other => return Err(Error::Format(format!("EDGE_WEIGHT_TYPE {other}"))),
                });
            }
            ("EDGE_WEIGHT_FORMAT", Some(v)) => {
                if v != "FULL_MATRIX" {
                    return Err(Error::Format(format!("EDGE_WEIGHT_FORMAT {v}")));
                }
                full_matrix = true;
            }
            ("NODE_COORD_SECTION", None) => {
                let n = dimension.ok_or_else(|| parse_err(ln, "section before DIMENSION"))?;
                for _ in 0..n {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| parse_err(ln, "truncated NODE_COORD_SECTION"))?;
                    let fields: Vec<&str> = row.split_whitespace().collect();
                    if fields.len() != 3 {
                        return Err(parse_err(ln, format!("expected `id x y`, got `{row}`")));
                    }
                    let num = |s: &str| {
                        s.parse::<f64>()
                            .map_err(|_| parse_err(ln, format!("bad number `{s}`")))
                    };
                    coords.push((num(fields[1])?, num(fields[2])?));
                }
                saw_coords = true;
            }
            ("EDGE_WEIGHT_SECTION", None) => {
                let n = dimension.ok_or_else(|| parse_err(ln, "section before DIMENSION"))?;
                let mut last = ln;
                while weights.len() < n * n {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| parse_err(last, "truncated EDGE_WEIGHT_SECTION"))?;
                    last = ln;
                    for tok in row.split_whitespace() {
                        let w = tok
                            .parse::<f64>()
                            .map_err(|_| parse_err(ln, format!("bad weight `{tok}`")))?;
                        weights.push(w);
                    }
                }
                if weights.len() != n * n {
                    return Err(parse_err(last, "EDGE_WEIGHT_SECTION overruns the matrix"));
                }
                saw_weights = true;
            }
            ("DISPLAY_DATA_SECTION", None) => {
                let n = dimension.ok_or_else(|| parse_err(ln, "section before DIMENSION"))?;
                for _ in 0..n {
                    lines
                        .next()
                        .ok_or_else(|| parse_err(ln, "truncated DISPLAY_DATA_SECTION"))?;
                }
            }
            (k, None) if k.ends_with("_SECTION") => {
                return Err(Error::Format(k.to_string()));
            }
            (_, Some(_)) => {}
            (k, None) => return Err(parse_err(ln, format!("unexpected line `{k}`"))),
        }
    }

    let n = dimension.ok_or_else(|| parse_err(0, "missing DIMENSION"))?;
    match weight_type {
        Some(WeightType::Euc2d) => {
            if !saw_coords {
                return Err(parse_err(0, "missing NODE_COORD_SECTION"));
            }
            let mut dist = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        dist[i * n + j] = euc_2d(coords[i], coords[j]);
                    }
                }
            }
            TspInstance::from_flat(n, dist)
        }
        Some(WeightType::Explicit) => {
            if !full_matrix {
                return Err(Error::Format("EXPLICIT without EDGE_WEIGHT_FORMAT".into()));
            }
            if !saw_weights {
                return Err(parse_err(0, "missing EDGE_WEIGHT_SECTION"));
            }
            for i in 0..n {
                for j in 0..n {
                    if weights[i * n + j] != weights[j * n + i] {
                        return Err(Error::Format(format!(
                            "FULL_MATRIX is asymmetric at ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            TspInstance::from_flat(n, weights)
        }
        None => Err(parse_err(0, "missing EDGE_WEIGHT_TYPE")),
    }
}
