use super::qubo::Qubo;
use super::record::{resolve_penalty, EncodingKind, EncodingRecord, Source, VarRole};
use crate::error::{invalid, Result};
use crate::instances::TspInstance;

/// Bits per position `u_j - 2`: `floor(log2(N-2)) + 1`.
pub fn mtz_order_bits(n: usize) -> u32 {
    (n - 2).ilog2() + 1
}

/// Bits per ordering slack (range `0..=2(N-2)`): `floor(log2(N-2)) + 2`.
pub fn mtz_slack_bits(n: usize) -> u32 {
    (n - 2).ilog2() + 2
}

/// Variable layout: arcs, then position bits, then ordering slacks.
#[derive(Debug, Clone, Copy)]
pub struct MtzLayout {
    pub n: usize,
}

impl MtzLayout {
    pub fn arc_count(&self) -> usize {
        self.n * (self.n - 1)
    }

    /// Arc `from -> to`, `from != to`.
    pub fn arc(&self, from: usize, to: usize) -> usize {
        debug_assert_ne!(from, to);
        from * (self.n - 1) + if to > from { to - 1 } else { to }
    }

    /// Bit `r` of `u_node - 2`, `node ∈ 1..n`.
    pub fn order_bit(&self, node: usize, r: u32) -> usize {
        self.arc_count() + (node - 1) * mtz_order_bits(self.n) as usize + r as usize
    }

    fn pair_index(&self, from: usize, to: usize) -> usize {
        // ordered pairs of distinct nodes in 1..n
        (from - 1) * (self.n - 2) + if to > from { to - 2 } else { to - 1 }
    }

    /// Bit `r` of the slack for the constraint on `(from, to)`, both in `1..n`.
    pub fn slack_bit(&self, from: usize, to: usize, r: u32) -> usize {
        self.arc_count()
            + (self.n - 1) * mtz_order_bits(self.n) as usize
            + self.pair_index(from, to) * mtz_slack_bits(self.n) as usize
            + r as usize
    }

    pub fn total(&self) -> usize {
        let n = self.n;
        self.arc_count()
            + (n - 1) * mtz_order_bits(n) as usize
            + (n - 1) * (n - 2) * mtz_slack_bits(n) as usize
    }
}

pub fn default_mtz_penalties(t: &TspInstance) -> (f64, f64) {
    let c = t.max_distance();
    (c + 1.0, 2.0 * c + 1.0)
}

/// Arc-based encoding with positions `u_j = 2 + Σ_r 2^r b_{j,r}` and one
/// slack register per ordering constraint
/// `u_i - u_j + (N-1) x_ij + s_ij = N - 2`.
///
/// `m1` weights the in/out-degree terms, `m2` the ordering terms.
pub fn encode_tsp_mtz(t: &TspInstance, m1: Option<f64>, m2: Option<f64>) -> Result<EncodingRecord> {
    let n = t.node_count();
    if n < 4 {
        return Err(invalid(format!("MTZ encoding needs N >= 4, got {n}")));
    }
    let (d1, d2) = default_mtz_penalties(t);
    let mut warnings = Vec::new();
    let m1 = resolve_penalty("M1", m1, d1, &mut warnings)?;
    let m2 = resolve_penalty("M2", m2, d2, &mut warnings)?;
    let lay = MtzLayout { n };
    let (ob, sb) = (mtz_order_bits(n), mtz_slack_bits(n));
    let mut q = Qubo::new(lay.total());
    let mut offset = 0.0;

    for i in 0..n {
        for j in 0..n {
            if i != j {
                q.add_linear(lay.arc(i, j), t.d(i, j));
            }
        }
    }
    for i in 0..n {
        let out: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (lay.arc(i, j), 1.0))
            .collect();
        offset += q.add_squared(&out, -1.0, m1);
        let inc: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (lay.arc(j, i), 1.0))
            .collect();
        offset += q.add_squared(&inc, -1.0, m1);
    }
    let nf = n as f64;
    for i in 1..n {
        for j in 1..n {
            if i == j {
                continue;
            }
            // the constant 2 of u_i and u_j cancels
            let mut terms = Vec::with_capacity(2 * ob as usize + sb as usize + 1);
            for r in 0..ob {
                let w = f64::from(1u32 << r);
                terms.push((lay.order_bit(i, r), w));
                terms.push((lay.order_bit(j, r), -w));
            }
            terms.push((lay.arc(i, j), nf - 1.0));
            for r in 0..sb {
                terms.push((lay.slack_bit(i, j, r), f64::from(1u32 << r)));
            }
            offset += q.add_squared(&terms, -(nf - 2.0), m2);
        }
    }

    let mut roles = Vec::with_capacity(lay.total());
    for from in 0..n {
        for to in 0..n {
            if from != to {
                roles.push(VarRole::Arc { from, to });
            }
        }
    }
    for node in 1..n {
        for bit in 0..ob {
            roles.push(VarRole::OrderBit { node, bit });
        }
    }
    for from in 1..n {
        for to in 1..n {
            if from != to {
                for bit in 0..sb {
                    roles.push(VarRole::OrderSlack { from, to, bit });
                }
            }
        }
    }
    Ok(EncodingRecord {
        kind: EncodingKind::TspMtz,
        qubo: q,
        offset,
        penalty: m1,
        penalty2: Some(m2),
        roles,
        source: Source::Tsp(t.clone()),
        warnings,
    })
}

/// Complete assignment for a tour: arcs along the tour starting at node 0,
/// positions `u = 2, 3, ..`, and the slacks that make every ordering
/// constraint tight.
pub fn mtz_bits_from_tour(n: usize, tour: &[usize]) -> Vec<bool> {
    let lay = MtzLayout { n };
    let (ob, sb) = (mtz_order_bits(n), mtz_slack_bits(n));
    let start = tour
        .iter()
        .position(|&c| c == 0)
        .expect("tour contains node 0");
    let order: Vec<usize> = (0..n).map(|k| tour[(start + k) % n]).collect();
    let mut bits = vec![false; lay.total()];
    let mut u = vec![0i64; n];
    for k in 0..n {
        bits[lay.arc(order[k], order[(k + 1) % n])] = true;
        u[order[k]] = k as i64 + 1;
    }
    for node in 1..n {
        let v = u[node] - 2;
        for r in 0..ob {
            bits[lay.order_bit(node, r)] = v >> r & 1 == 1;
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i == j {
                continue;
            }
            let x = bits[lay.arc(i, j)] as i64;
            let s = (n as i64 - 2) - u[i] + u[j] - (n as i64 - 1) * x;
            debug_assert!(s >= 0 && s < 1 << sb);
            for r in 0..sb {
                bits[lay.slack_bit(i, j, r)] = s >> r & 1 == 1;
            }
        }
    }
    bits
}
