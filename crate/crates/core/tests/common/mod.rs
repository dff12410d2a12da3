//! Exhaustive oracles that work on the source problems directly, without
//! going through any QUBO.
#![allow(dead_code)]

use qbench_core::encodings::{mtz_order_bits, mtz_slack_bits, MtzLayout};
use qbench_core::instances::{euc_2d, Graph, TspInstance};
use rand::Rng;

/// Size of a maximum independent set, by enumerating all subsets.
pub fn mis_size(g: &Graph) -> usize {
    let n = g.node_count();
    let adj: Vec<u32> = g
        .adjacency()
        .iter()
        .map(|nb| nb.iter().fold(0u32, |m, &j| m | 1 << j))
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let independent = (0..n).all(|i| mask >> i & 1 == 0 || adj[i] & mask == 0);
        if independent {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Weight of a maximum cut, by enumerating all partitions with node 0 fixed.
pub fn max_cut(g: &Graph) -> f64 {
    let n = g.node_count();
    let mut best = 0.0f64;
    for mask in 0u32..1 << (n - 1) {
        let side = |i: usize| i > 0 && mask >> (i - 1) & 1 == 1;
        let w: f64 = g
            .edges()
            .iter()
            .filter(|e| side(e.i) != side(e.j))
            .map(|e| e.weight)
            .sum();
        best = best.max(w);
    }
    best
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Shortest tour length over all tours starting at node 0.
pub fn shortest_tour(t: &TspInstance) -> f64 {
    let n = t.node_count();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    permutations(&mut rest, 0, &mut |p| {
        let mut tour = vec![0];
        tour.extend_from_slice(p);
        best = best.min(t.tour_length(&tour));
    });
    best
}

/// Integer-distance instance on random points of a 100 x 100 grid.
pub fn random_int_tsp<R: Rng>(rng: &mut R, n: usize) -> TspInstance {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0..=100) as f64, rng.gen_range(0..=100) as f64))
        .collect();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i * n + j] = euc_2d(pts[i], pts[j]);
            }
        }
    }
    TspInstance::from_flat(n, d).unwrap()
}

/// Erdős–Rényi graph with unit weights.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::unweighted(n, edges).unwrap()
}

/// The MTZ penalty function written out from its constraints:
/// `Σ d x + m1 Σ (out_i - 1)^2 + m1 Σ (in_i - 1)^2
///  + m2 Σ_{i≠j≥1} (u_i - u_j + (N-1) x_ij + s_ij - (N-2))^2`.
pub fn mtz_objective(t: &TspInstance, m1: f64, m2: f64, bits: &[bool]) -> f64 {
    let n = t.node_count();
    let lay = MtzLayout { n };
    let x = |i: usize, j: usize| bits[lay.arc(i, j)] as i64;
    let mut e = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j && x(i, j) == 1 {
                e += t.d(i, j);
            }
        }
    }
    for i in 0..n {
        let out: i64 = (0..n).filter(|&j| j != i).map(|j| x(i, j)).sum();
        let inc: i64 = (0..n).filter(|&j| j != i).map(|j| x(j, i)).sum();
        e += m1 * ((out - 1).pow(2) + (inc - 1).pow(2)) as f64;
    }
    let u = |i: usize| -> i64 {
        (0..mtz_order_bits(n))
            .map(|r| (bits[lay.order_bit(i, r)] as i64) << r)
            .sum()
    };
    for i in 1..n {
        for j in 1..n {
            if i != j {
                let s: i64 = (0..mtz_slack_bits(n))
                    .map(|r| (bits[lay.slack_bit(i, j, r)] as i64) << r)
                    .sum();
                let r = u(i) - u(j) + (n as i64 - 1) * x(i, j) + s - (n as i64 - 2);
                e += m2 * (r * r) as f64;
            }
        }
    }
    e
}

/// Exact minimum of [`mtz_objective`] over all assignments, with the arc
/// patterns of every minimizer.
///
/// Arc patterns are enumerated first. The ordering terms are nonnegative,
/// so a pattern whose arc cost plus degree penalty already exceeds the
/// incumbent is skipped; the incumbent starts at the shortest tour length,
/// which a tour with tight slacks attains. For the remaining patterns every
/// position vector is tried and each slack takes its best value in closed
/// form: with residual `r`, `min_{0<=s<=S} (r + s)^2` is `r^2` for
/// `r >= 0`, `0` for `-S <= r < 0`, and `(r + S)^2` below that.
///
/// Distances and penalties must be integers so that ties are exact.
pub fn mtz_exact_minimum(t: &TspInstance, m1: f64, m2: f64) -> (f64, Vec<Vec<bool>>) {
    let n = t.node_count();
    let lay = MtzLayout { n };
    let na = lay.arc_count();
    let ob = mtz_order_bits(n) as usize;
    let smax = (1i64 << mtz_slack_bits(n)) - 1;
    let mut best = shortest_tour(t);
    let mut minimizers: Vec<u64> = Vec::new();
    let mut u = vec![0i64; n];
    let mut xs = vec![vec![0i64; n]; n];
    for mask in 0u64..1 << na {
        let mut cost = 0.0;
        let mut out = vec![0i64; n];
        let mut inc = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let x = (mask >> lay.arc(i, j) & 1) as i64;
                xs[i][j] = x;
                if x == 1 {
                    cost += t.d(i, j);
                    out[i] += 1;
                    inc[j] += 1;
                }
            }
        }
        for i in 0..n {
            cost += m1 * ((out[i] - 1).pow(2) + (inc[i] - 1).pow(2)) as f64;
        }
        if cost > best {
            continue;
        }
        let mut local = f64::INFINITY;
        for code in 0u64..1 << (ob * (n - 1)) {
            for i in 1..n {
                u[i] = ((code >> ((i - 1) * ob)) & ((1 << ob) - 1)) as i64;
            }
            let mut pen = 0i64;
            for i in 1..n {
                for j in 1..n {
                    if i != j {
                        let r = u[i] - u[j] + (n as i64 - 1) * xs[i][j] - (n as i64 - 2);
                        pen += if r >= 0 {
                            r * r
                        } else if r >= -smax {
                            0
                        } else {
                            (r + smax) * (r + smax)
                        };
                    }
                }
            }
            local = local.min(cost + m2 * pen as f64);
        }
        if local < best {
            best = local;
            minimizers.clear();
        }
        if local == best {
            minimizers.push(mask);
        }
    }
    let patterns = minimizers
        .into_iter()
        .map(|m| (0..na).map(|k| m >> k & 1 == 1).collect())
        .collect();
    (best, patterns)
}

/// The DFJ penalty function written out from its constraints for the given
/// subset family and slack widths `bits(|S|)`:
/// `Σ d x + M Σ_v (deg v - 2)^2 + M Σ_S (x(E(S)) + s_S - (|S|-1))^2`.
/// Bits hold the edges in lexicographic `(i, j)` order, then each subset's
/// slack register, low bit first.
pub fn dfj_objective(
    t: &TspInstance,
    m: f64,
    subsets: &[Vec<usize>],
    bits_for: impl Fn(usize) -> u32,
    bits: &[bool],
) -> f64 {
    let n = t.node_count();
    let mut e = 0.0;
    let mut x = vec![vec![0i64; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                x[i][j] = 1;
                x[j][i] = 1;
                e += t.d(i, j);
            }
            k += 1;
        }
    }
    for v in 0..n {
        let deg: i64 = x[v].iter().sum();
        e += m * ((deg - 2) * (deg - 2)) as f64;
    }
    for s in subsets {
        let mut inside = 0i64;
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                inside += x[i][j];
            }
        }
        let mut slack = 0i64;
        for r in 0..bits_for(s.len()) {
            slack += (bits[k] as i64) << r;
            k += 1;
        }
        let r = inside + slack - (s.len() as i64 - 1);
        e += m * (r * r) as f64;
    }
    e
}

/// Exact minimum of [`dfj_objective`] with the edge sets of every
/// minimizer. Edge patterns are enumerated; each slack register then takes
/// its best value independently.
pub fn dfj_exact_minimum(
    t: &TspInstance,
    m: f64,
    subsets: &[Vec<usize>],
    bits_for: impl Fn(usize) -> u32,
) -> (f64, Vec<Vec<(usize, usize)>>) {
    let n = t.node_count();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = f64::INFINITY;
    let mut arg: Vec<u64> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let on = |k: usize| mask >> k & 1 == 1;
        let mut e = 0.0;
        let mut deg = vec![0i64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if on(k) {
                e += t.d(i, j);
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        for d in deg {
            e += m * ((d - 2) * (d - 2)) as f64;
        }
        for s in subsets {
            let inside = pairs
                .iter()
                .enumerate()
                .filter(|&(k, &(i, j))| on(k) && s.contains(&i) && s.contains(&j))
                .count() as i64;
            let smax = (1i64 << bits_for(s.len())) - 1;
            let r = inside - (s.len() as i64 - 1);
            let pen = if r >= 0 {
                r * r
            } else if r >= -smax {
                0
            } else {
                (r + smax) * (r + smax)
            };
            e += m * pen as f64;
        }
        if e < best {
            best = e;
            arg.clear();
        }
        if e == best {
            arg.push(mask);
        }
    }
    let sets = arg
        .into_iter()
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    (best, sets)
}

/// Whether undirected `edges` form one Hamiltonian cycle on `n` nodes.
pub fn is_hamiltonian_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() != n {
        return false;
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    let (mut prev, mut at, mut seen) = (0, adj[0][0], 1);
    while at != 0 {
        let next = if adj[at][0] == prev { adj[at][1] } else { adj[at][0] };
        prev = at;
        at = next;
        seen += 1;
    }
    seen == n
}
