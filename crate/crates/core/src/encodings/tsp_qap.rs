use super::qubo::Qubo;
use super::record::{resolve_penalty, EncodingKind, EncodingRecord, Source, VarRole};
use crate::error::{invalid, Result};
use crate::instances::TspInstance;

/// `N(N-1)/2 * max c + 1`: one violated one-hot constraint outweighs any
/// tour.
pub fn default_qap_penalty(t: &TspInstance) -> f64 {
    let n = t.node_count() as f64;
    n * (n - 1.0) / 2.0 * t.max_distance() + 1.0
}

/// Index of `y_ik` for node `i` at step `k`, both in `1..n`.
pub fn qap_index(n: usize, node: usize, step: usize) -> usize {
    (node - 1) * (n - 1) + (step - 1)
}

/// Position-based encoding with node 0 pinned to step 0, leaving the
/// `(N-1)^2` variables `y_ik`, `i, k ∈ 1..N`.
pub fn encode_tsp_qap(t: &TspInstance, penalty: Option<f64>) -> Result<EncodingRecord> {
    let n = t.node_count();
    if n < 2 {
        return Err(invalid(format!("QAP encoding needs N >= 2, got {n}")));
    }
    let mut warnings = Vec::new();
    let m = resolve_penalty("M", penalty, default_qap_penalty(t), &mut warnings)?;
    let var = |i, k| qap_index(n, i, k);
    let mut q = Qubo::new((n - 1) * (n - 1));
    for j in 1..n {
        q.add_linear(var(j, 1), t.d(0, j));
        q.add_linear(var(j, n - 1), t.d(j, 0));
    }
    for i in 1..n {
        for j in 1..n {
            if i == j {
                continue;
            }
            for k in 1..n - 1 {
                q.add_quadratic(var(i, k), var(j, k + 1), t.d(i, j));
            }
        }
    }
    let mut offset = 0.0;
    for i in 1..n {
        let row: Vec<(usize, f64)> = (1..n).map(|k| (var(i, k), 1.0)).collect();
        offset += q.add_squared(&row, -1.0, m);
    }
    for k in 1..n {
        let col: Vec<(usize, f64)> = (1..n).map(|i| (var(i, k), 1.0)).collect();
        offset += q.add_squared(&col, -1.0, m);
    }
    let mut roles = Vec::with_capacity(q.n());
    for node in 1..n {
        for step in 1..n {
            roles.push(VarRole::Assignment { node, step });
        }
    }
    Ok(EncodingRecord {
        kind: EncodingKind::TspQap,
        qubo: q,
        offset,
        penalty: m,
        penalty2: None,
        roles,
        source: Source::Tsp(t.clone()),
        warnings,
    })
}

/// Assignment bits for a tour, rotated so that node 0 is at step 0.
pub fn qap_bits_from_tour(n: usize, tour: &[usize]) -> Vec<bool> {
    let start = tour
        .iter()
        .position(|&c| c == 0)
        .expect("tour contains node 0");
    let mut bits = vec![false; (n - 1) * (n - 1)];
    for step in 1..n {
        let node = tour[(start + step) % n];
        bits[qap_index(n, node, step)] = true;
    }
    bits
}
