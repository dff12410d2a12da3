//! Browser bindings: unit disk instances, clique embeddings and annealing
//! histograms, each returned as a JSON string for `www/index.html`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use qbench_core::encodings::{decode, encode_maxcut, encode_mis, Payload};
use qbench_core::hardware::{
    embed_clique_chimera, embed_clique_pegasus, n_qa, validate_embedding, Coord, TopologyGraph,
    PEGASUS_S0, PEGASUS_S1,
};
use qbench_core::instances::{gen_maxcut, gen_udmis, Graph};
use qbench_core::solvers::{brute_force, histogram, simulated_anneal, AnnealParams};

/// Largest graph for which the demo computes an exact optimum.
const EXACT_LIMIT: usize = 22;

fn js_err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Points, unit disk edges and (for small `n`) one maximum independent set.
#[wasm_bindgen]
pub fn udmis_geometry(n: usize, radius: f64, seed: u64) -> Result<String, JsValue> {
    let inst = gen_udmis(n, radius, seed).map_err(js_err)?;
    let g = inst.graph();
    let mis = if n <= EXACT_LIMIT {
        let rec = encode_mis(g, None).map_err(js_err)?;
        let bf = brute_force(&rec.qubo).map_err(js_err)?;
        match decode(&rec, &bf.bitstrings()[0]).map_err(js_err)?.payload {
            Payload::NodeSet { nodes } => Value::from(nodes),
            _ => Value::Null,
        }
    } else {
        Value::Null
    };
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.i, e.j)).collect();
    Ok(json!({
        "width": inst.width,
        "height": inst.height,
        "radius": radius,
        "points": inst.points,
        "edges": edges,
        "max_degree": g.max_degree(),
        "mis": mis,
    })
    .to_string())
}

/// Qubit `q` drawn as a segment in lattice units.
fn segment(topo: &TopologyGraph, q: usize) -> [f64; 4] {
    match topo.coord(q) {
        Coord::Chimera { row, col, u, k } => {
            let (r, c, k) = (row as f64 * 10.0, col as f64 * 10.0, k as f64);
            if u == 0 {
                [c + 1.0 + k, r + 0.5, c + 1.0 + k, r + 9.5]
            } else {
                [c + 0.5, r + 5.0 + k, c + 9.5, r + 5.0 + k]
            }
        }
        Coord::Pegasus { u, w, k, z } => {
            let across = (12 * w + k) as f64 + 0.5;
            if u == 0 {
                let start = (12 * z + PEGASUS_S0[k]) as f64 + 0.1;
                [across, start, across, start + 11.8]
            } else {
                let start = (12 * z + PEGASUS_S1[k]) as f64 + 0.1;
                [start, across, start + 11.8, across]
            }
        }
    }
}

/// Clique embedding of `K_k` with qubit segments for drawing.
#[wasm_bindgen]
pub fn clique_embedding(family: &str, k: usize) -> Result<String, JsValue> {
    let (topo, emb) = match family {
        "chimera" => embed_clique_chimera(k),
        "pegasus" => embed_clique_pegasus(k),
        other => return Err(js_err(format!("unknown topology `{other}`"))),
    }
    .map_err(js_err)?;
    let report = validate_embedding(&Graph::complete(k), &topo, &emb);
    let qubits: Vec<Value> = topo
        .nodes()
        .map(|q| json!({"id": q, "seg": segment(&topo, q), "label": topo.coord(q).to_string()}))
        .collect();
    let chains: Vec<&Vec<usize>> = emb.chains.values().collect();
    Ok(json!({
        "topology": topo.kind(),
        "qubits": qubits,
        "chains": chains,
        "valid": report.valid,
        "violations": report.violations.len(),
        "physical_qubits": report.physical_qubits,
        "max_chain": report.max_chain,
        "n_qa": n_qa(k),
    })
    .to_string())
}

/// Annealed samples of a random MaxCut QUBO as a histogram.
#[wasm_bindgen]
pub fn anneal_histogram(
    n: usize,
    p: f64,
    seed: u64,
    shots: usize,
    sweeps: usize,
) -> Result<String, JsValue> {
    let g = gen_maxcut(n, p, seed).map_err(js_err)?;
    let rec = encode_maxcut(&g);
    let mut s = simulated_anneal(
        &rec.qubo,
        &AnnealParams {
            shots,
            sweeps,
            schedule: None,
            seed,
        },
    )
    .map_err(js_err)?;
    s.classify(&rec).map_err(js_err)?;
    let optimum = if n <= EXACT_LIMIT {
        Value::from(brute_force(&rec.qubo).map_err(js_err)?.value)
    } else {
        Value::Null
    };
    let h = histogram(&s);
    Ok(json!({
        "edges": g.edge_count(),
        "shots": h.shots,
        "optimum": optimum,
        "rows": h.rows,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_json_has_points() {
        let v: Value = serde_json::from_str(&udmis_geometry(9, 1.5, 2).unwrap()).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 9);
        assert!(v["mis"].is_array());
    }

    #[test]
    fn embedding_json_validates() {
        for family in ["chimera", "pegasus"] {
            let v: Value = serde_json::from_str(&clique_embedding(family, 6).unwrap()).unwrap();
            assert_eq!(v["valid"], true);
            assert_eq!(v["chains"].as_array().unwrap().len(), 6);
        }
    }

    #[test]
    fn histogram_counts_sum_to_shots() {
        let v: Value =
            serde_json::from_str(&anneal_histogram(8, 0.5, 1, 50, 100).unwrap()).unwrap();
        let total: u64 = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["count"].as_u64().unwrap())
            .sum();
        assert_eq!(total, 50);
    }
}
