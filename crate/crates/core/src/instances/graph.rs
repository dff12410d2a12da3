use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Weighted undirected simple graph. Edges are kept sorted by `(i, j)` with
/// `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    node_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = crate::Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::from_edges(raw.node_count, raw.edges)
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph {
            node_count: g.node_count,
            edges: g.edges.iter().map(|e| (e.i, e.j, e.weight)).collect(),
        }
    }
}

impl Graph {
    pub fn empty(node_count: usize) -> Self {
        Graph {
            node_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from `(i, j, weight)` triples in any orientation.
    /// Rejects self-loops, duplicates, out-of-range nodes and negative or
    /// non-finite weights.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a == b {
                return Err(invalid(format!("self-loop on node {a}")));
            }
            if a >= node_count || b >= node_count {
                return Err(invalid(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(invalid(format!("edge ({a}, {b}) has weight {w}")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            out.push(Edge { i, j, weight: w });
        }
        out.sort_by_key(|e| (e.i, e.j));
        if let Some(w) = out
            .windows(2)
            .find(|w| (w[0].i, w[0].j) == (w[1].i, w[1].j))
        {
            return Err(invalid(format!("duplicate edge ({}, {})", w[0].i, w[0].j)));
        }
        Ok(Graph {
            node_count,
            edges: out,
        })
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(node_count, edges.into_iter().map(|(i, j)| (i, j, 1.0)))
    }

    pub fn complete(node_count: usize) -> Self {
        let edges = (0..node_count)
            .flat_map(|i| (i + 1..node_count).map(move |j| Edge { i, j, weight: 1.0 }))
            .collect();
        Graph { node_count, edges }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&key, |e| (e.i, e.j))
            .is_ok()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&key, |e| (e.i, e.j))
            .ok()
            .map(|k| self.edges[k].weight)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for e in &self.edges {
            deg[e.i] += 1;
            deg[e.j] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).fold(0.0, f64::max)
    }
}
