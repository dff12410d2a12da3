use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng;

/// Symmetric distance matrix over `n` cities with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct TspInstance {
    n: usize,
    dist: Vec<f64>,
}

impl TryFrom<Vec<Vec<f64>>> for TspInstance {
    type Error = crate::Error;
    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        TspInstance::from_rows(rows)
    }
}

impl From<TspInstance> for Vec<Vec<f64>> {
    fn from(t: TspInstance) -> Self {
        t.rows()
    }
}

impl TspInstance {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(invalid(format!(
                "row {r} has {} entries, expected {n}",
                row.len()
            )));
        }
        Self::from_flat(n, rows.into_iter().flatten().collect())
    }

    pub fn from_flat(n: usize, dist: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(invalid("a distance matrix needs at least 2 cities"));
        }
        if dist.len() != n * n {
            return Err(invalid("matrix size mismatch"));
        }
        for i in 0..n {
            if dist[i * n + i] != 0.0 {
                return Err(invalid(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(invalid(format!("distance ({i}, {j}) = {d}")));
                }
                if d != dist[j * n + i] {
                    return Err(invalid(format!(
                        "asymmetric distances ({i}, {j}) = {d} vs {}",
                        dist[j * n + i]
                    )));
                }
            }
        }
        Ok(TspInstance { n, dist })
    }

    /// Euclidean instance from planar coordinates, unrounded.
    pub fn euclidean(points: &[(f64, f64)]) -> Result<Self> {
        let n = points.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                    dist[i * n + j] = dx.hypot(dy);
                }
            }
        }
        Self::from_flat(n, dist)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn max_distance(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Length of the closed tour visiting `tour` in order.
    pub fn tour_length(&self, tour: &[usize]) -> f64 {
        (0..tour.len())
            .map(|k| self.d(tour[k], tour[(k + 1) % tour.len()]))
            .sum()
    }

    /// Restriction of the matrix to `nodes`, in the given order.
    pub fn restrict(&self, nodes: &[usize]) -> Result<Self> {
        let k = nodes.len();
        let mut dist = Vec::with_capacity(k * k);
        for &a in nodes {
            for &b in nodes {
                dist.push(self.d(a, b));
            }
        }
        Self::from_flat(k, dist)
    }
}

/// A uniformly random `k`-subset of the base cities, with distances
/// preserved. Returns the chosen base indices alongside the instance.
pub fn subsample_tsp_indexed(
    base: &TspInstance,
    k: usize,
    seed: u64,
) -> Result<(TspInstance, Vec<usize>)> {
    if k < 3 || k > base.node_count() {
        return Err(invalid(format!(
            "subsample size {k} outside [3, {}]",
            base.node_count()
        )));
    }
    let mut rng = rng::seeded(seed);
    let picked = index::sample(&mut rng, base.node_count(), k).into_vec();
    Ok((base.restrict(&picked)?, picked))
}

pub fn subsample_tsp(base: &TspInstance, k: usize, seed: u64) -> Result<TspInstance> {
    subsample_tsp_indexed(base, k, seed).map(|(t, _)| t)
}
