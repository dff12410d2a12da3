use std::collections::BTreeMap;

use super::embedding::{resolve_chain_breaks, ChainResolution, MinorEmbedding};
use super::topology::TopologyGraph;
use crate::encodings::Qubo;
use crate::error::{invalid, Result};

/// A logical QUBO spread over the qubits of an embedding. Physical
/// variables are the used qubits in ascending id order.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalQubo {
    pub qubo: Qubo,
    pub qubits: Vec<usize>,
    pub chain_strength: f64,
}

/// Default chain coupling: twice the largest logical coefficient.
pub fn default_chain_strength(q: &Qubo) -> f64 {
    (2.0 * q.max_abs()).max(1.0)
}

/// Splits each linear term evenly over its chain, puts each quadratic term
/// on one coupler between the two chains, and adds
/// `s (x_a + x_b - 2 x_a x_b)` on every chain-internal coupler so that
/// disagreeing neighbours cost `s`.
pub fn embed_qubo(
    q: &Qubo,
    topo: &TopologyGraph,
    emb: &MinorEmbedding,
    chain_strength: f64,
) -> Result<PhysicalQubo> {
    if !(chain_strength > 0.0) || !chain_strength.is_finite() {
        return Err(invalid(format!(
            "chain strength must be positive, got {chain_strength}"
        )));
    }
    let chain = |l: usize| {
        emb.chains
            .get(&l)
            .filter(|c| !c.is_empty())
            .ok_or_else(|| invalid(format!("no chain for variable {l}")))
    };
    let qubits: Vec<usize> = {
        let mut all: Vec<usize> = emb.chains.values().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    let local: BTreeMap<usize, usize> = qubits.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut out = Qubo::new(qubits.len());
    for (i, j, v) in q.entries() {
        if i == j {
            let c = chain(i)?;
            for p in c {
                out.add_linear(local[p], v / c.len() as f64);
            }
        } else {
            let (ci, cj) = (chain(i)?, chain(j)?);
            let (a, b) = ci
                .iter()
                .find_map(|&a| cj.iter().find(|&&b| topo.has_edge(a, b)).map(|&b| (a, b)))
                .ok_or_else(|| invalid(format!("no coupler between chains {i} and {j}")))?;
            // `entries` holds Q_ij for i < j, which contributes 2 Q_ij x_i x_j
            out.add_quadratic(local[&a], local[&b], 2.0 * v);
        }
    }
    for c in emb.chains.values() {
        for (x, &a) in c.iter().enumerate() {
            for &b in &c[x + 1..] {
                if topo.has_edge(a, b) {
                    out.add_linear(local[&a], chain_strength);
                    out.add_linear(local[&b], chain_strength);
                    out.add_quadratic(local[&a], local[&b], -2.0 * chain_strength);
                }
            }
        }
    }
    Ok(PhysicalQubo {
        qubo: out,
        qubits,
        chain_strength,
    })
}

impl PhysicalQubo {
    /// Majority-vote logical bits for a sample over `qubits`.
    pub fn resolve(&self, emb: &MinorEmbedding, sample: &[bool]) -> Result<ChainResolution> {
        if sample.len() != self.qubits.len() {
            return Err(invalid(format!(
                "sample has {} bits, the embedding uses {} qubits",
                sample.len(),
                self.qubits.len()
            )));
        }
        let bound = self.qubits.last().map_or(0, |&q| q + 1);
        let mut physical = vec![false; bound];
        for (&q, &b) in self.qubits.iter().zip(sample) {
            physical[q] = b;
        }
        resolve_chain_breaks(emb, &physical)
    }
}
