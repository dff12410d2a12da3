use crate::encodings::Qubo;
use crate::error::{Error, Result};

/// Largest QUBO accepted by [`brute_force`].
pub const BRUTE_FORCE_MAX_VARS: usize = 28;

/// Two energies within `ARGMIN_RTOL * Σ|Q_ij|` of each other are treated as
/// equal, so that mathematically tied optima that differ only by rounding
/// all land in the argmin set.
pub const ARGMIN_RTOL: f64 = 1e-12;

const RESYNC_EVERY: u64 = 1 << 12;

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForce {
    pub value: f64,
    /// Every minimizer, as bitmasks with variable `i` in bit `i`, ascending.
    pub argmin: Vec<u32>,
    pub n: usize,
}

impl BruteForce {
    pub fn bitstrings(&self) -> Vec<Vec<bool>> {
        self.argmin
            .iter()
            .map(|&m| mask_to_bits(m, self.n))
            .collect()
    }
}

pub fn mask_to_bits(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Exhaustive minimization over all `2^n` assignments, walking them in
/// Gray-code order so each step costs one bit flip. The running energy is
/// resynchronized periodically and candidates are re-evaluated from
/// scratch, so the returned value is an exact `x^T Q x`.
pub fn brute_force(q: &Qubo) -> Result<BruteForce> {
    let n = q.n();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::SizeGuard {
            what: "brute force variable count".into(),
            actual: n,
            limit: BRUTE_FORCE_MAX_VARS,
        });
    }
    let c = q.compile();
    let scale: f64 = q
        .entries()
        .map(|(i, j, v)| if i == j { v.abs() } else { 2.0 * v.abs() })
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    let window = 1e-9 * scale;

    let mut x = vec![false; n];
    // local fields h_i = d_i + Σ_j w_ij x_j
    let mut h = c.diag.clone();
    let mut mask: u32 = 0;
    let mut e = 0.0;
    let mut best = 0.0;
    let mut cands: Vec<u32> = vec![0];
    let total: u64 = 1 << n;
    for k in 1..total {
        let i = k.trailing_zeros() as usize;
        let delta = if x[i] { -h[i] } else { h[i] };
        let sign = if x[i] { -1.0 } else { 1.0 };
        x[i] = !x[i];
        mask ^= 1 << i;
        for &(j, w) in &c.nbrs[i] {
            h[j] += sign * w;
        }
        e += delta;
        if k % RESYNC_EVERY == 0 {
            e = q.energy(&x);
            h.copy_from_slice(&c.diag);
            for (j, hj) in h.iter_mut().enumerate() {
                for &(l, w) in &c.nbrs[j] {
                    if x[l] {
                        *hj += w;
                    }
                }
            }
        }
        if e < best - window {
            best = e;
            cands.clear();
            cands.push(mask);
        } else if e <= best + window {
            best = best.min(e);
            cands.push(mask);
        }
    }

    let exact: Vec<(u32, f64)> = cands
        .into_iter()
        .map(|m| (m, q.energy(&mask_to_bits(m, n))))
        .collect();
    let value = exact.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let tie = ARGMIN_RTOL * scale;
    let mut argmin: Vec<u32> = exact
        .into_iter()
        .filter(|&(_, v)| v <= value + tie)
        .map(|(m, _)| m)
        .collect();
    argmin.sort_unstable();
    Ok(BruteForce { value, argmin, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_everything_optimal() {
        let r = brute_force(&Qubo::new(5)).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.argmin, (0..32).collect::<Vec<u32>>());
    }

    #[test]
    fn single_edge_mis() {
        let q = Qubo::from_entries(2, [(0, 0, -1.0), (1, 1, -1.0), (0, 1, 1.5)]).unwrap();
        let r = brute_force(&q).unwrap();
        assert_eq!(r.value, -1.0);
        assert_eq!(r.bitstrings(), vec![vec![true, false], vec![false, true]]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            brute_force(&Qubo::new(29)),
            Err(Error::SizeGuard { actual: 29, .. })
        ));
        let r = brute_force(&Qubo::new(0)).unwrap();
        assert_eq!(r.argmin, vec![0]);
    }
}
