use super::count::dfj_count;
use super::qubo::Qubo;
use super::record::{resolve_penalty, EncodingKind, EncodingRecord, Source, VarRole};
use crate::error::{invalid, Error, Result};
use crate::instances::TspInstance;

/// Largest `N` accepted by [`encode_tsp_dfj`]; the constraint family grows
/// as `2^N`.
pub const DFJ_MAX_NODES: usize = 12;

/// `max c + 1`.
pub fn default_dfj_penalty(t: &TspInstance) -> f64 {
    t.max_distance() + 1.0
}

/// The larger alternative `N^2 * max c` for the equality penalties.
pub fn conservative_dfj_penalty(t: &TspInstance) -> f64 {
    let n = t.node_count() as f64;
    n * n * t.max_distance()
}

/// Slack bits for a subtour constraint on `size` nodes.
pub fn dfj_slack_bits(size: usize) -> u32 {
    (size - 1).ilog2() + 1
}

/// Subsets carrying a subtour constraint: every `S` with
/// `3 <= |S| <= floor(N/2)`, except that for even `N` the sets of size
/// `N/2` are limited to those containing node 0 (their complements would
/// repeat the same constraint). Ordered by size, then lexicographically.
pub fn dfj_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 3..=n / 2 {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if !(n % 2 == 0 && size == n / 2 && combo[0] != 0) {
                out.push(combo.clone());
            }
            // next combination in lexicographic order
            let mut k = size;
            while k > 0 && combo[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            combo[k - 1] += 1;
            for p in k..size {
                combo[p] = combo[p - 1] + 1;
            }
        }
    }
    out
}

/// Index of the undirected edge variable `x_ij`, `i < j`.
pub fn dfj_edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Edge-based encoding: degree penalties `M (Σ_j x_ij - 2)^2` and, for each
/// constrained subset, `M (Σ_{E(S)} x + Σ_r 2^r b_{S,r} - (|S|-1))^2`.
pub fn encode_tsp_dfj(t: &TspInstance, penalty: Option<f64>) -> Result<EncodingRecord> {
    let n = t.node_count();
    if n > DFJ_MAX_NODES {
        let vars = dfj_count(n)
            .map(|c| c.to_string())
            .unwrap_or_else(|_| "an overflowing number of".into());
        return Err(Error::SizeGuard {
            what: format!("DFJ encoding of N = {n} nodes needs {vars} variables; node count"),
            actual: n,
            limit: DFJ_MAX_NODES,
        });
    }
    if n < 4 {
        return Err(invalid(format!("DFJ encoding needs N >= 4, got {n}")));
    }
    let mut warnings = Vec::new();
    let m = resolve_penalty("M", penalty, default_dfj_penalty(t), &mut warnings)?;
    if n >= 6 && m < conservative_dfj_penalty(t) {
        // a violated constraint costs M once, while joining two subtours
        // can cost up to 2 max c
        warnings.push(format!(
            "M = {m} is below N^2 max c = {}; subtours can undercut the shortest tour",
            conservative_dfj_penalty(t)
        ));
    }
    let subsets = dfj_subsets(n);
    let edges = n * (n - 1) / 2;
    let total = edges
        + subsets
            .iter()
            .map(|s| dfj_slack_bits(s.len()) as usize)
            .sum::<usize>();
    let mut q = Qubo::new(total);
    let mut roles = Vec::with_capacity(total);
    for i in 0..n {
        for j in i + 1..n {
            q.add_linear(dfj_edge_index(n, i, j), t.d(i, j));
            roles.push(VarRole::Edge { i, j });
        }
    }
    let mut offset = 0.0;
    for v in 0..n {
        let incident: Vec<(usize, f64)> = (0..n)
            .filter(|&u| u != v)
            .map(|u| (dfj_edge_index(n, u, v), 1.0))
            .collect();
        offset += q.add_squared(&incident, -2.0, m);
    }
    let mut next = edges;
    for s in &subsets {
        let mut terms = Vec::new();
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                terms.push((dfj_edge_index(n, i, j), 1.0));
            }
        }
        for bit in 0..dfj_slack_bits(s.len()) {
            terms.push((next, f64::from(1u32 << bit)));
            roles.push(VarRole::SubtourSlack {
                subset: s.clone(),
                bit,
            });
            next += 1;
        }
        offset += q.add_squared(&terms, -((s.len() - 1) as f64), m);
    }
    Ok(EncodingRecord {
        kind: EncodingKind::TspDfj,
        qubo: q,
        offset,
        penalty: m,
        penalty2: None,
        roles,
        source: Source::Tsp(t.clone()),
        warnings,
    })
}

/// Edge and slack bits for a tour; each slack equals `|S| - 1` minus the
/// number of tour edges inside `S`.
pub fn dfj_bits_from_tour(n: usize, tour: &[usize]) -> Vec<bool> {
    let subsets = dfj_subsets(n);
    let edges = n * (n - 1) / 2;
    let mut bits = vec![false; edges];
    for k in 0..n {
        bits[dfj_edge_index(n, tour[k], tour[(k + 1) % n])] = true;
    }
    let mut slack_bits = Vec::new();
    for s in &subsets {
        let mut inside = 0usize;
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                inside += bits[dfj_edge_index(n, i, j)] as usize;
            }
        }
        let slack = s.len() - 1 - inside;
        for bit in 0..dfj_slack_bits(s.len()) {
            slack_bits.push(slack >> bit & 1 == 1);
        }
    }
    bits.extend(slack_bits);
    bits
}
