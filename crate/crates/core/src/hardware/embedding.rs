use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::topology::{Coord, TopologyGraph, TopologySpec};
use crate::error::{invalid, Result};
use crate::instances::Graph;

/// Logical variable -> chain of physical qubits (sorted, deduplicated).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MinorEmbedding {
    pub chains: BTreeMap<usize, Vec<usize>>,
}

impl MinorEmbedding {
    pub fn new<I, C>(chains: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: IntoIterator<Item = usize>,
    {
        MinorEmbedding {
            chains: chains
                .into_iter()
                .map(|(l, c)| {
                    let mut v: Vec<usize> = c.into_iter().collect();
                    v.sort_unstable();
                    v.dedup();
                    (l, v)
                })
                .collect(),
        }
    }

    /// Every logical node on its own physical qubit of the same index.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| (i, [i])))
    }

    pub fn physical_qubits(&self) -> usize {
        self.chains.values().map(Vec::len).sum()
    }

    pub fn max_chain(&self) -> usize {
        self.chains.values().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Violation {
    MissingChain {
        logical: usize,
    },
    EmptyChain {
        logical: usize,
    },
    /// Qubit id outside the topology or removed.
    UnavailableQubit {
        logical: usize,
        qubit: usize,
        coord: Option<Coord>,
    },
    Overlap {
        qubit: usize,
        coord: Coord,
        logicals: Vec<usize>,
    },
    /// The chain splits into several components (listed by coordinate).
    Disconnected {
        logical: usize,
        components: Vec<Vec<Coord>>,
    },
    MissingCoupler {
        i: usize,
        j: usize,
        chain_i: Vec<Coord>,
        chain_j: Vec<Coord>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub physical_qubits: usize,
    pub max_chain: usize,
}

/// Checks chain disjointness, chain connectivity and that every problem
/// edge is carried by at least one coupler. All violations are collected.
pub fn validate_embedding(
    problem: &Graph,
    topo: &TopologyGraph,
    emb: &MinorEmbedding,
) -> ValidationReport {
    let mut violations = Vec::new();
    let coords = |c: &[usize]| -> Vec<Coord> { c.iter().map(|&q| topo.coord(q)).collect() };

    for l in 0..problem.node_count() {
        match emb.chains.get(&l) {
            None => violations.push(Violation::MissingChain { logical: l }),
            Some(c) if c.is_empty() => violations.push(Violation::EmptyChain { logical: l }),
            _ => {}
        }
    }

    let mut owner: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&l, chain) in &emb.chains {
        for &q in chain {
            if !topo.contains(q) {
                violations.push(Violation::UnavailableQubit {
                    logical: l,
                    qubit: q,
                    coord: (q < topo.id_bound()).then(|| topo.coord(q)),
                });
            }
            owner.entry(q).or_default().push(l);
        }
    }
    for (&q, ls) in &owner {
        if ls.len() > 1 && q < topo.id_bound() {
            violations.push(Violation::Overlap {
                qubit: q,
                coord: topo.coord(q),
                logicals: ls.clone(),
            });
        }
    }

    for (&l, chain) in &emb.chains {
        let members: BTreeSet<usize> = chain
            .iter()
            .copied()
            .filter(|&q| topo.contains(q))
            .collect();
        let comps = components(topo, &members);
        if comps.len() > 1 {
            violations.push(Violation::Disconnected {
                logical: l,
                components: comps.iter().map(|c| coords(c)).collect(),
            });
        }
    }

    for e in problem.edges() {
        let (Some(ci), Some(cj)) = (emb.chains.get(&e.i), emb.chains.get(&e.j)) else {
            continue;
        };
        let linked = ci.iter().filter(|&&q| topo.contains(q)).any(|&q| {
            topo.neighbors(q)
                .iter()
                .any(|p| cj.binary_search(p).is_ok())
        });
        if !linked {
            violations.push(Violation::MissingCoupler {
                i: e.i,
                j: e.j,
                chain_i: coords(ci),
                chain_j: coords(cj),
            });
        }
    }

    ValidationReport {
        valid: violations.is_empty(),
        violations,
        physical_qubits: emb.physical_qubits(),
        max_chain: emb.max_chain(),
    }
}

fn components(topo: &TopologyGraph, members: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in members {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(q) = stack.pop() {
            for &p in topo.neighbors(q) {
                if members.contains(&p) && seen.insert(p) {
                    comp.push(p);
                    stack.push(p);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainResolution {
    /// Logical bits in ascending logical index order.
    pub logical: Vec<bool>,
    /// Logical indices whose chain disagreed.
    pub broken: Vec<usize>,
    /// Share of chains that disagreed.
    pub break_fraction: f64,
}

/// Majority vote per chain, ties resolved to 0.
pub fn resolve_chain_breaks(emb: &MinorEmbedding, physical: &[bool]) -> Result<ChainResolution> {
    let mut logical = Vec::with_capacity(emb.chains.len());
    let mut broken = Vec::new();
    for (&l, chain) in &emb.chains {
        let mut ones = 0;
        for &q in chain {
            match physical.get(q) {
                Some(&b) => ones += usize::from(b),
                None => {
                    return Err(invalid(format!(
                        "chain {l} uses qubit {q} but only {} physical bits were given",
                        physical.len()
                    )))
                }
            }
        }
        if ones != 0 && ones != chain.len() {
            broken.push(l);
        }
        logical.push(2 * ones > chain.len());
    }
    let break_fraction = if emb.chains.is_empty() {
        0.0
    } else {
        broken.len() as f64 / emb.chains.len() as f64
    };
    Ok(ChainResolution {
        logical,
        broken,
        break_fraction,
    })
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    topology: TopologySpec,
    chains: BTreeMap<usize, Vec<usize>>,
}

/// `{"topology": {"family": .., size.., "removed": [..]}, "chains": {"0": [..], ..}}`.
pub fn embedding_to_json(topo: &TopologyGraph, emb: &MinorEmbedding) -> Result<String> {
    Ok(serde_json::to_string_pretty(&EmbeddingFile {
        topology: topo.spec(),
        chains: emb.chains.clone(),
    })?)
}

pub fn embedding_from_json(text: &str) -> Result<(TopologyGraph, MinorEmbedding)> {
    let f: EmbeddingFile = serde_json::from_str(text)?;
    let topo = TopologyGraph::from_spec(&f.topology)?;
    Ok((topo, MinorEmbedding::new(f.chains)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::build_chimera;

    #[test]
    fn majority_and_ties() {
        let emb = MinorEmbedding::new([(0, vec![0, 1, 2]), (1, vec![3, 4]), (2, vec![5])]);
        let r = resolve_chain_breaks(&emb, &[true, true, false, true, false, true]).unwrap();
        assert_eq!(r.logical, vec![true, false, true]);
        assert_eq!(r.broken, vec![0, 1]);
        assert!((r.break_fraction - 2.0 / 3.0).abs() < 1e-15);
        assert!(resolve_chain_breaks(&emb, &[true; 5]).is_err());
    }

    #[test]
    fn split_chain_reported() {
        let topo = build_chimera(2).unwrap();
        // (0,0,0,0) and (1,1,0,0) share no coupler
        let emb = MinorEmbedding::new([(0, vec![0, 24])]);
        let rep = validate_embedding(&Graph::empty(1), &topo, &emb);
        assert!(!rep.valid);
        assert!(matches!(
            rep.violations[0],
            Violation::Disconnected { logical: 0, .. }
        ));
    }

    #[test]
    fn json_roundtrip() {
        let topo = build_chimera(1).unwrap().with_removed([3]).unwrap();
        let emb = MinorEmbedding::new([(0, vec![0, 4]), (1, vec![1])]);
        let (t2, e2) = embedding_from_json(&embedding_to_json(&topo, &emb).unwrap()).unwrap();
        assert_eq!(t2, topo);
        assert_eq!(e2, emb);
    }
}
