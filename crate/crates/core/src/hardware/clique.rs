use super::cost::pegasus_size_for;
use super::embedding::{validate_embedding, MinorEmbedding};
use super::topology::{build_chimera, build_pegasus, chimera_index, pegasus_index, TopologyGraph};
use crate::error::{invalid, Error, Result};
use crate::instances::Graph;

/// Chain of logical variable `4g + i` in `C_n`: the vertical qubits `i` of
/// column `g` from row `g` down, plus the horizontal qubits `i` of row `g`
/// up to column `g`. Both halves meet in cell `(g, g)`, and quadruples `g`
/// and `h > g` meet in cell `(h, g)`.
pub fn chimera_clique_chain(n: usize, logical: usize) -> Vec<usize> {
    let (g, i) = (logical / 4, logical % 4);
    let mut chain: Vec<usize> = (g..n).map(|r| chimera_index(n, r, g, 0, i)).collect();
    chain.extend((0..=g).map(|c| chimera_index(n, g, c, 1, i)));
    chain.sort_unstable();
    chain
}

/// `K_k` in `C_{ceil(k/4)}` with chains of `ceil(k/4) + 1` qubits.
pub fn embed_clique_chimera(k: usize) -> Result<(TopologyGraph, MinorEmbedding)> {
    if k < 1 {
        return Err(invalid("clique size must be at least 1"));
    }
    let n = k.div_ceil(4);
    let topo = build_chimera(n)?;
    let emb = MinorEmbedding::new((0..k).map(|l| (l, chimera_clique_chain(n, l))));
    Ok((topo, emb))
}

/// Node budget for the Pegasus chain search.
const PEGASUS_SEARCH_NODES: u64 = 2_000_000;

/// `K_k` in Pegasus `P_M` with `M = max(2, ceil((k + 10) / 12))`.
///
/// Each chain is an L: one full vertical line `(0, w, k, *)` joined to one
/// full horizontal line `(1, w', k', *)` through an internal coupler. This is
/// the shape the Chimera clique chains take inside each of the three
/// Chimera-like layers of Pegasus, widened to whole lines so that chains from
/// different layers meet through the inter-layer couplers. A deterministic
/// branch-and-bound picks `k` disjoint L-chains that pairwise touch; when it
/// finds none the size is reported as unsupported.
pub fn embed_clique_pegasus(k: usize) -> Result<(TopologyGraph, MinorEmbedding)> {
    if k < 1 {
        return Err(invalid("clique size must be at least 1"));
    }
    let m = pegasus_size_for(k).max(2);
    let topo = build_pegasus(m)?;
    if k <= 2 {
        // Any coupler carries K_2.
        let (a, b) = topo.edges().next().expect("pegasus has couplers");
        let emb = MinorEmbedding::new([(0, vec![a]), (1, vec![b])].into_iter().take(k));
        return Ok((topo, emb));
    }
    let lines = |u: usize| -> Vec<Vec<usize>> {
        (0..12 * m)
            .map(|line| {
                let (w, kk) = (line / 12, line % 12);
                (0..m - 1).map(|z| pegasus_index(m, u, w, kk, z)).collect()
            })
            .collect()
    };
    let (vert, horiz) = (lines(0), lines(1));
    let touches =
        |a: &[usize], b: &[usize]| a.iter().any(|&p| b.iter().any(|&q| topo.has_edge(p, q)));
    let nl = vert.len();
    let mut vh = vec![vec![false; nl]; nl];
    let mut vv = vec![vec![false; nl]; nl];
    let mut hh = vec![vec![false; nl]; nl];
    for a in 0..nl {
        for b in 0..nl {
            vh[a][b] = touches(&vert[a], &horiz[b]);
            if a != b {
                vv[a][b] = touches(&vert[a], &vert[b]);
                hh[a][b] = touches(&horiz[a], &horiz[b]);
            }
        }
    }
    let cands: Vec<(usize, usize)> = (0..nl)
        .flat_map(|a| (0..nl).map(move |b| (a, b)))
        .filter(|&(a, b)| vh[a][b])
        .collect();
    let compatible = |x: (usize, usize), y: (usize, usize)| {
        x.0 != y.0 && x.1 != y.1 && (vh[x.0][y.1] || vh[y.0][x.1] || vv[x.0][y.0] || hh[x.1][y.1])
    };
    let nc = cands.len();
    let adj: Vec<Vec<bool>> = (0..nc)
        .map(|i| {
            (0..nc)
                .map(|j| i != j && compatible(cands[i], cands[j]))
                .collect()
        })
        .collect();

    let picked = clique_search(&adj, k, PEGASUS_SEARCH_NODES).ok_or_else(|| {
        Error::UnsupportedSize(format!(
            "no clique embedding of K_{k} found in pegasus({m}) from line-pair chains"
        ))
    })?;
    let emb = MinorEmbedding::new(picked.iter().enumerate().map(|(l, &c)| {
        let (a, b) = cands[c];
        let mut chain = vert[a].clone();
        chain.extend_from_slice(&horiz[b]);
        chain.sort_unstable();
        (l, chain)
    }));
    let report = validate_embedding(&Graph::complete(k), &topo, &emb);
    if !report.valid {
        return Err(Error::UnsupportedSize(format!(
            "constructed K_{k} embedding in pegasus({m}) failed validation"
        )));
    }
    Ok((topo, emb))
}

/// Finds `k` pairwise adjacent vertices, visiting at most `budget` search
/// nodes. Candidates are tried in order of decreasing degree.
fn clique_search(adj: &[Vec<bool>], k: usize, budget: u64) -> Option<Vec<usize>> {
    let n = adj.len();
    let deg: Vec<usize> = adj
        .iter()
        .map(|r| r.iter().filter(|&&b| b).count())
        .collect();
    let mut order: Vec<usize> = (0..n).filter(|&v| deg[v] + 1 >= k).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));

    struct State<'a> {
        adj: &'a [Vec<bool>],
        k: usize,
        nodes: u64,
        budget: u64,
        stack: Vec<usize>,
    }
    fn go(s: &mut State, cands: &[usize]) -> bool {
        if s.stack.len() == s.k {
            return true;
        }
        for (pos, &v) in cands.iter().enumerate() {
            if s.stack.len() + cands.len() - pos < s.k {
                return false;
            }
            s.nodes += 1;
            if s.nodes > s.budget {
                return false;
            }
            let next: Vec<usize> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&u| s.adj[v][u])
                .collect();
            s.stack.push(v);
            if go(s, &next) {
                return true;
            }
            s.stack.pop();
        }
        false
    }
    let mut s = State {
        adj,
        k,
        nodes: 0,
        budget,
        stack: Vec::new(),
    };
    go(&mut s, &order).then_some(s.stack)
}
