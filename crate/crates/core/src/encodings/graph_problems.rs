use super::qubo::Qubo;
use super::record::{check_penalty, EncodingKind, EncodingRecord, Source, VarRole};
use crate::error::Result;
use crate::instances::Graph;

/// Default MIS edge penalty `|V| + 1`.
pub fn default_mis_penalty(g: &Graph) -> f64 {
    g.node_count() as f64 + 1.0
}

/// Maximum independent set: `Q_ii = -1`, `Q_ij = M/2` on edges.
///
/// Any `M > 1` keeps the optima independent; `M <= 1` is accepted with a
/// warning in the record.
pub fn encode_mis(g: &Graph, penalty: Option<f64>) -> Result<EncodingRecord> {
    let m = match penalty {
        Some(m) => check_penalty("M", m)?,
        None => default_mis_penalty(g),
    };
    let mut warnings = Vec::new();
    if m <= 1.0 {
        warnings.push(format!(
            "M = {m} <= 1: the edge penalty does not dominate a node reward"
        ));
    }
    let n = g.node_count();
    let mut q = Qubo::new(n);
    for i in 0..n {
        q.add_linear(i, -1.0);
    }
    for e in g.edges() {
        q.add(e.i, e.j, m / 2.0);
    }
    Ok(EncodingRecord {
        kind: EncodingKind::Udmis,
        qubo: q,
        offset: 0.0,
        penalty: m,
        penalty2: None,
        roles: (0..n).map(|node| VarRole::Node { node }).collect(),
        source: Source::Graph(g.clone()),
        warnings,
    })
}

/// MaxCut: `Q_ii = -Σ_k w_ik`, `Q_ij = w_ij`, so that `x^T Q x` is minus the
/// cut weight.
pub fn encode_maxcut(g: &Graph) -> EncodingRecord {
    let n = g.node_count();
    let mut q = Qubo::new(n);
    for e in g.edges() {
        q.add_linear(e.i, -e.weight);
        q.add_linear(e.j, -e.weight);
        q.add(e.i, e.j, e.weight);
    }
    EncodingRecord {
        kind: EncodingKind::Maxcut,
        qubo: q,
        offset: 0.0,
        penalty: 0.0,
        penalty2: None,
        roles: (0..n).map(|node| VarRole::Node { node }).collect(),
        source: Source::Graph(g.clone()),
        warnings: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_mis_matrix() {
        let g = Graph::unweighted(2, [(0, 1)]).unwrap();
        let rec = encode_mis(&g, Some(3.0)).unwrap();
        assert_eq!(rec.qubo.get(0, 0), -1.0);
        assert_eq!(rec.qubo.get(0, 1), 1.5);
        assert_eq!(rec.qubo.get(1, 0), 1.5);
        assert_eq!(rec.qubo.energy(&[true, false]), -1.0);
        assert_eq!(rec.qubo.energy(&[true, true]), 1.0);
        assert!(rec.warnings.is_empty());
        assert_eq!(encode_mis(&g, None).unwrap().penalty, 3.0);
    }

    #[test]
    fn weak_mis_penalty_warns() {
        let g = Graph::unweighted(2, [(0, 1)]).unwrap();
        assert_eq!(encode_mis(&g, Some(1.0)).unwrap().warnings.len(), 1);
        assert!(encode_mis(&g, Some(0.0)).is_err());
    }

    #[test]
    fn triangle_maxcut_matrix() {
        let rec = encode_maxcut(&Graph::complete(3));
        for i in 0..3 {
            assert_eq!(rec.qubo.get(i, i), -2.0);
        }
        assert_eq!(rec.qubo.get(0, 2), 1.0);
        assert_eq!(rec.qubo.energy(&[true, false, false]), -2.0);
        assert_eq!(rec.qubo.energy(&[true; 3]), 0.0);
    }
}
