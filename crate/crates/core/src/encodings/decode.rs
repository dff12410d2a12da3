use serde::Serialize;

use super::record::{EncodingKind, EncodingRecord, VarRole};
use super::tsp_dfj::dfj_edge_index;
use super::tsp_mtz::MtzLayout;
use super::tsp_qap::qap_index;
use crate::error::{invalid, Result};
use crate::instances::cut_weight;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    /// Selected MIS nodes (reported even when not independent).
    NodeSet { nodes: Vec<usize> },
    /// MaxCut side of every node.
    Partition { side: Vec<bool> },
    /// Closed tour starting at node 0.
    Tour { tour: Vec<usize> },
    /// The TSP bits do not describe a tour.
    NoTour,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodedSolution {
    pub feasible: bool,
    /// Objective of the source problem in its own sense: independent-set
    /// size, cut weight or tour length. `None` iff infeasible.
    pub original_objective: Option<f64>,
    /// `x^T Q x`.
    pub qubo_objective: f64,
    pub payload: Payload,
}

/// Interprets `bits` against the constraints of the source problem.
pub fn decode(rec: &EncodingRecord, bits: &[bool]) -> Result<DecodedSolution> {
    if bits.len() != rec.n() {
        return Err(invalid(format!(
            "bitstring has {} bits, the QUBO has {} variables",
            bits.len(),
            rec.n()
        )));
    }
    let qubo_objective = rec.qubo.energy(bits);
    let (feasible, original_objective, payload) = match rec.kind {
        EncodingKind::Udmis => {
            let g = rec.graph().expect("MIS source is a graph");
            let nodes: Vec<usize> = (0..g.node_count()).filter(|&i| bits[i]).collect();
            let independent = g.edges().iter().all(|e| !(bits[e.i] && bits[e.j]));
            let obj = independent.then_some(nodes.len() as f64);
            (independent, obj, Payload::NodeSet { nodes })
        }
        EncodingKind::Maxcut => {
            let g = rec.graph().expect("MaxCut source is a graph");
            let side = bits.to_vec();
            (
                true,
                Some(cut_weight(g, &side)),
                Payload::Partition { side },
            )
        }
        EncodingKind::TspQap | EncodingKind::TspMtz | EncodingKind::TspDfj => {
            let t = rec.tsp().expect("TSP source is a distance matrix");
            let n = t.node_count();
            let tour = match rec.kind {
                EncodingKind::TspQap => qap_tour(n, bits),
                EncodingKind::TspMtz => mtz_tour(n, bits),
                _ => dfj_tour(n, bits),
            };
            match tour {
                Some(tour) => (true, Some(t.tour_length(&tour)), Payload::Tour { tour }),
                None => (false, None, Payload::NoTour),
            }
        }
    };
    Ok(DecodedSolution {
        feasible,
        original_objective,
        qubo_objective,
        payload,
    })
}

fn qap_tour(n: usize, bits: &[bool]) -> Option<Vec<usize>> {
    let mut tour = vec![0; n];
    let mut used = vec![false; n];
    for step in 1..n {
        let mut found = None;
        for node in 1..n {
            if bits[qap_index(n, node, step)] {
                if found.is_some() {
                    return None;
                }
                found = Some(node);
            }
        }
        let node = found?;
        if used[node] {
            return None;
        }
        used[node] = true;
        tour[step] = node;
    }
    Some(tour)
}

/// Follows successors from node 0; the arcs must form one Hamiltonian cycle.
fn mtz_tour(n: usize, bits: &[bool]) -> Option<Vec<usize>> {
    let lay = MtzLayout { n };
    let mut succ = vec![usize::MAX; n];
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && bits[lay.arc(i, j)] {
                if succ[i] != usize::MAX {
                    return None;
                }
                succ[i] = j;
                indeg[j] += 1;
            }
        }
    }
    if succ.contains(&usize::MAX) || indeg.iter().any(|&d| d != 1) {
        return None;
    }
    let mut tour = Vec::with_capacity(n);
    let mut cur = 0;
    loop {
        tour.push(cur);
        cur = succ[cur];
        if cur == 0 {
            break;
        }
    }
    (tour.len() == n).then_some(tour)
}

/// Every node has degree two and the edges form a single cycle. The tour
/// leaves node 0 towards its smaller neighbour.
fn dfj_tour(n: usize, bits: &[bool]) -> Option<Vec<usize>> {
    let mut nbrs = vec![Vec::with_capacity(2); n];
    for i in 0..n {
        for j in i + 1..n {
            if bits[dfj_edge_index(n, i, j)] {
                if nbrs[i].len() == 2 || nbrs[j].len() == 2 {
                    return None;
                }
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        }
    }
    if nbrs.iter().any(|v| v.len() != 2) {
        return None;
    }
    let mut tour = vec![0];
    let (mut prev, mut cur) = (0, nbrs[0][0].min(nbrs[0][1]));
    while cur != 0 {
        tour.push(cur);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        prev = cur;
        cur = next;
    }
    (tour.len() == n).then_some(tour)
}

impl EncodingRecord {
    /// Bits selecting exactly the given MIS/MaxCut nodes.
    pub fn bits_from_nodes(&self, nodes: &[usize]) -> Vec<bool> {
        let mut bits = vec![false; self.n()];
        for (k, role) in self.roles.iter().enumerate() {
            if let VarRole::Node { node } = role {
                bits[k] = nodes.contains(node);
            }
        }
        bits
    }

    /// Complete zero-penalty assignment for a tour (any rotation or, for
    /// DFJ, direction).
    pub fn bits_from_tour(&self, tour: &[usize]) -> Result<Vec<bool>> {
        let t = self.tsp().ok_or_else(|| invalid("not a TSP encoding"))?;
        let n = t.node_count();
        let mut seen = vec![false; n];
        if tour.len() != n
            || tour
                .iter()
                .any(|&c| c >= n || std::mem::replace(&mut seen[c], true))
        {
            return Err(invalid(format!("{tour:?} is not a permutation of 0..{n}")));
        }
        Ok(match self.kind {
            EncodingKind::TspQap => super::tsp_qap::qap_bits_from_tour(n, tour),
            EncodingKind::TspMtz => super::tsp_mtz::mtz_bits_from_tour(n, tour),
            EncodingKind::TspDfj => super::tsp_dfj::dfj_bits_from_tour(n, tour),
            _ => unreachable!(),
        })
    }
}
