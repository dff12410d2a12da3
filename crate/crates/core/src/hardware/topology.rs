use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Pegasus vertical and horizontal qubit offsets (the standard offset
/// list 0).
pub const PEGASUS_S0: [usize; 12] = [2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6];
pub const PEGASUS_S1: [usize; 12] = [6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TopologyKind {
    /// `n x n` grid of `K_{4,4}` cells.
    Chimera { n: usize },
    /// Pegasus of size `m`, all `24 m (m - 1)` qubits.
    Pegasus { m: usize },
}

/// Structured address of a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Coord {
    /// Cell `(row, col)`, shore `u` (0 vertical, 1 horizontal), index `k`.
    Chimera {
        row: usize,
        col: usize,
        u: usize,
        k: usize,
    },
    /// Orientation `u`, orthogonal major/minor offsets `w`, `k`, parallel
    /// offset `z`.
    Pegasus {
        u: usize,
        w: usize,
        k: usize,
        z: usize,
    },
}

impl std::fmt::Display for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Coord::Chimera { row, col, u, k } => write!(f, "chimera({row},{col},{u},{k})"),
            Coord::Pegasus { u, w, k, z } => write!(f, "pegasus({u},{w},{k},{z})"),
        }
    }
}

/// Hardware graph with linear node ids. Removed (broken) qubits keep their
/// ids but lose all couplers.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyGraph {
    kind: TopologyKind,
    removed: BTreeSet<usize>,
    adj: Vec<Vec<usize>>,
}

impl TopologyGraph {
    fn from_edges(kind: TopologyKind, size: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); size];
        for (a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        TopologyGraph {
            kind,
            removed: BTreeSet::new(),
            adj,
        }
    }

    pub fn build(kind: TopologyKind) -> Result<Self> {
        match kind {
            TopologyKind::Chimera { n } => build_chimera(n),
            TopologyKind::Pegasus { m } => build_pegasus(m),
        }
    }

    /// Copy with the given qubits and their couplers removed.
    pub fn with_removed<I: IntoIterator<Item = usize>>(&self, nodes: I) -> Result<Self> {
        let mut out = self.clone();
        for q in nodes {
            if q >= self.id_bound() {
                return Err(invalid(format!("removed node {q} out of range")));
            }
            out.removed.insert(q);
        }
        for (q, list) in out.adj.iter_mut().enumerate() {
            if out.removed.contains(&q) {
                list.clear();
            } else {
                list.retain(|p| !out.removed.contains(p));
            }
        }
        Ok(out)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn removed(&self) -> &BTreeSet<usize> {
        &self.removed
    }

    /// One past the largest node id.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.id_bound() && !self.removed.contains(&q)
    }

    /// Working qubits.
    pub fn node_count(&self) -> usize {
        self.id_bound() - self.removed.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.id_bound()).filter(|q| !self.removed.contains(q))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adj[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adj[q].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.id_bound() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn coord(&self, q: usize) -> Coord {
        match self.kind {
            TopologyKind::Chimera { n } => {
                let k = q % 4;
                let u = q / 4 % 2;
                let cell = q / 8;
                Coord::Chimera {
                    row: cell / n,
                    col: cell % n,
                    u,
                    k,
                }
            }
            TopologyKind::Pegasus { m } => {
                let z = q % (m - 1);
                let rest = q / (m - 1);
                let k = rest % 12;
                let rest = rest / 12;
                Coord::Pegasus {
                    u: rest / m,
                    w: rest % m,
                    k,
                    z,
                }
            }
        }
    }

    pub fn index(&self, c: Coord) -> Option<usize> {
        match (self.kind, c) {
            (TopologyKind::Chimera { n }, Coord::Chimera { row, col, u, k })
                if row < n && col < n && u < 2 && k < 4 =>
            {
                Some(chimera_index(n, row, col, u, k))
            }
            (TopologyKind::Pegasus { m }, Coord::Pegasus { u, w, k, z })
                if u < 2 && w < m && k < 12 && z + 1 < m =>
            {
                Some(pegasus_index(m, u, w, k, z))
            }
            _ => None,
        }
    }
}

pub fn chimera_index(n: usize, row: usize, col: usize, u: usize, k: usize) -> usize {
    ((row * n + col) * 2 + u) * 4 + k
}

pub fn pegasus_index(m: usize, u: usize, w: usize, k: usize, z: usize) -> usize {
    ((u * m + w) * 12 + k) * (m - 1) + z
}

/// Chimera `C_n`: `K_{4,4}` cells; vertical qubits (`u = 0`) couple to the
/// cell below, horizontal ones (`u = 1`) to the cell on the right.
pub fn build_chimera(n: usize) -> Result<TopologyGraph> {
    if n < 1 {
        return Err(invalid("chimera size must be at least 1"));
    }
    let idx = |r, c, u, k| chimera_index(n, r, c, u, k);
    let mut edges = Vec::with_capacity(16 * n * n + 8 * n * (n - 1));
    for r in 0..n {
        for c in 0..n {
            for a in 0..4 {
                for b in 0..4 {
                    edges.push((idx(r, c, 0, a), idx(r, c, 1, b)));
                }
                if r + 1 < n {
                    edges.push((idx(r, c, 0, a), idx(r + 1, c, 0, a)));
                }
                if c + 1 < n {
                    edges.push((idx(r, c, 1, a), idx(r, c + 1, 1, a)));
                }
            }
        }
    }
    Ok(TopologyGraph::from_edges(
        TopologyKind::Chimera { n },
        8 * n * n,
        edges,
    ))
}

/// Pegasus `P_m` with all `24 m (m - 1)` qubits, including the boundary
/// qubits outside the main fabric.
///
/// A qubit `(u, w, k, z)` is a line segment of length 12 at position
/// `12 w + k` across the lattice, starting at `12 z + S_u[k]` along it.
/// Couplers join consecutive segments on a line (external), the paired
/// lines `2j` and `2j + 1` (odd), and every crossing vertical/horizontal
/// pair (internal).
pub fn build_pegasus(m: usize) -> Result<TopologyGraph> {
    if m < 2 {
        return Err(invalid(format!("pegasus size must be at least 2, got {m}")));
    }
    let m1 = m - 1;
    let idx = |u, w, k, z| pegasus_index(m, u, w, k, z);
    let mut edges = Vec::new();
    for u in 0..2 {
        for w in 0..m {
            for k in 0..12 {
                for z in 0..m1 {
                    if z + 1 < m1 {
                        edges.push((idx(u, w, k, z), idx(u, w, k, z + 1)));
                    }
                    if k % 2 == 0 {
                        edges.push((idx(u, w, k, z), idx(u, w, k + 1, z)));
                    }
                }
            }
        }
    }
    for w in 0..m {
        for kk in 0..12 {
            let lo = if w > 0 { 0 } else { PEGASUS_S1[kk] };
            let hi = if w < m1 { 12 } else { PEGASUS_S1[kk] };
            for k in lo..hi {
                for z in 0..m1 {
                    let w1 = z + usize::from(kk < PEGASUS_S0[k]);
                    let z1 = w - usize::from(k < PEGASUS_S1[kk]);
                    edges.push((idx(0, w, k, z), idx(1, w1, kk, z1)));
                }
            }
        }
    }
    Ok(TopologyGraph::from_edges(
        TopologyKind::Pegasus { m },
        24 * m * m1,
        edges,
    ))
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TopologySpec {
    #[serde(flatten)]
    pub kind: TopologyKind,
    #[serde(default)]
    pub removed: Vec<usize>,
}

impl TopologyGraph {
    pub(crate) fn spec(&self) -> TopologySpec {
        TopologySpec {
            kind: self.kind,
            removed: self.removed.iter().copied().collect(),
        }
    }

    pub(crate) fn from_spec(spec: &TopologySpec) -> Result<Self> {
        Self::build(spec.kind)?.with_removed(spec.removed.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_roundtrip() {
        for t in [build_chimera(3).unwrap(), build_pegasus(3).unwrap()] {
            for q in t.nodes() {
                assert_eq!(t.index(t.coord(q)), Some(q));
            }
        }
    }

    #[test]
    fn single_chimera_cell() {
        let t = build_chimera(1).unwrap();
        assert_eq!((t.node_count(), t.edge_count()), (8, 16));
    }

    #[test]
    fn removal_drops_couplers() {
        let t = build_chimera(2).unwrap();
        let r = t.with_removed([0]).unwrap();
        assert_eq!(r.node_count(), 31);
        assert_eq!(r.edge_count(), 80 - t.degree(0));
        assert!(!r.contains(0));
        assert!(r.neighbors(4).iter().all(|&q| q != 0));
        assert!(t.with_removed([32]).is_err());
    }
}
