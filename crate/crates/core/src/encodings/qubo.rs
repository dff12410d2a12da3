use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Symmetric QUBO matrix, minimized as `x^T Q x` over `x ∈ {0,1}^n`.
///
/// Only the upper triangle is stored; `get(i, j) == get(j, i)`. Because
/// `x_i^2 = x_i` the diagonal acts as the linear part, and every stored
/// off-diagonal value contributes twice to the energy.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Qubo {
    n: usize,
    upper: BTreeMap<(usize, usize), f64>,
}

impl Qubo {
    pub fn new(n: usize) -> Self {
        Qubo {
            n,
            upper: BTreeMap::new(),
        }
    }

    /// Builds a matrix from `(i, j, Q_ij)` triples. Each unordered pair may
    /// appear at most once, in either orientation.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut q = Qubo::new(n);
        for (a, b, v) in entries {
            let key = (a.min(b), a.max(b));
            if key.1 >= n {
                return Err(invalid(format!(
                    "entry ({a}, {b}) out of range for n = {n}"
                )));
            }
            if !v.is_finite() {
                return Err(invalid(format!("entry ({a}, {b}) is {v}")));
            }
            if q.upper.insert(key, v).is_some() {
                return Err(invalid(format!("duplicate entry ({}, {})", key.0, key.1)));
            }
        }
        q.upper.retain(|_, v| *v != 0.0);
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Adds `v` to both `Q_ij` and `Q_ji` (once to `Q_ii` when `i == j`).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.n && j < self.n, "index out of range");
        if v == 0.0 {
            return;
        }
        let key = (i.min(j), i.max(j));
        let slot = self.upper.entry(key).or_insert(0.0);
        *slot += v;
        if *slot == 0.0 {
            self.upper.remove(&key);
        }
    }

    /// Adds the term `v * x_i`.
    pub fn add_linear(&mut self, i: usize, v: f64) {
        self.add(i, i, v);
    }

    /// Adds the term `v * x_i * x_j`.
    pub fn add_quadratic(&mut self, i: usize, j: usize, v: f64) {
        if i == j {
            self.add(i, i, v);
        } else {
            self.add(i, j, v / 2.0);
        }
    }

    /// Adds `weight * (constant + Σ a_k x_k)^2` over distinct variables and
    /// returns the constant part `weight * constant^2`, which a matrix cannot
    /// hold.
    pub fn add_squared(&mut self, terms: &[(usize, f64)], constant: f64, weight: f64) -> f64 {
        for (p, &(i, a)) in terms.iter().enumerate() {
            self.add_linear(i, weight * (a * a + 2.0 * constant * a));
            for &(j, b) in &terms[p + 1..] {
                self.add_quadratic(i, j, weight * 2.0 * a * b);
            }
        }
        weight * constant * constant
    }

    /// Upper-triangle entries `(i, j, Q_ij)` with `i <= j`, in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.upper.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Nonzero entries of the full symmetric matrix.
    pub fn nonzero_count(&self) -> usize {
        self.upper
            .keys()
            .map(|&(i, j)| if i == j { 1 } else { 2 })
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `x^T Q x`.
    pub fn energy(&self, x: &[bool]) -> f64 {
        assert_eq!(x.len(), self.n, "bitstring length");
        let mut e = 0.0;
        for (&(i, j), &v) in &self.upper {
            if x[i] && x[j] {
                e += if i == j { v } else { 2.0 * v };
            }
        }
        e
    }

    pub fn compile(&self) -> CompiledQubo {
        let mut diag = vec![0.0; self.n];
        let mut nbrs = vec![Vec::new(); self.n];
        for (&(i, j), &v) in &self.upper {
            if i == j {
                diag[i] = v;
            } else {
                nbrs[i].push((j, 2.0 * v));
                nbrs[j].push((i, 2.0 * v));
            }
        }
        CompiledQubo { diag, nbrs }
    }
}

/// Adjacency form used by the samplers: `E(x) = Σ d_i x_i + Σ_{i<j} w_ij x_i x_j`
/// with `w_ij = 2 Q_ij`.
#[derive(Debug, Clone)]
pub struct CompiledQubo {
    pub diag: Vec<f64>,
    pub nbrs: Vec<Vec<(usize, f64)>>,
}

impl CompiledQubo {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Energy change from flipping bit `i`.
    #[inline]
    pub fn flip_delta(&self, x: &[bool], i: usize) -> f64 {
        let field: f64 = self.diag[i]
            + self.nbrs[i]
                .iter()
                .filter(|&&(j, _)| x[j])
                .map(|&(_, w)| w)
                .sum::<f64>();
        if x[i] {
            -field
        } else {
            field
        }
    }

    /// Largest and smallest nonzero single-flip energy scales, used to set a
    /// default temperature range. Returns `None` for the zero matrix.
    pub fn delta_range(&self) -> Option<(f64, f64)> {
        let mut max = 0.0f64;
        let mut min = f64::INFINITY;
        for i in 0..self.n() {
            let mut bound = self.diag[i].abs();
            if self.diag[i] != 0.0 {
                min = min.min(self.diag[i].abs());
            }
            for &(_, w) in &self.nbrs[i] {
                bound += w.abs();
                min = min.min(w.abs());
            }
            max = max.max(bound);
        }
        (max > 0.0).then_some((max, min))
    }
}

/// Share of nonzero entries of the full `n x n` matrix.
pub fn nonzero_share(q: &Qubo) -> f64 {
    if q.n() == 0 {
        return 0.0;
    }
    q.nonzero_count() as f64 / (q.n() as f64 * q.n() as f64)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct QuboJson<M> {
    pub n: usize,
    pub entries: Vec<(usize, usize, f64)>,
    pub meta: Option<M>,
}

impl Qubo {
    pub(crate) fn to_raw<M>(&self, meta: Option<M>) -> QuboJson<M> {
        QuboJson {
            n: self.n,
            entries: self.entries().collect(),
            meta,
        }
    }

    pub(crate) fn from_raw<M>(raw: QuboJson<M>) -> Result<(Self, Option<M>)> {
        for &(i, j, _) in &raw.entries {
            if i > j {
                return Err(invalid(format!("entry ({i}, {j}) is below the diagonal")));
            }
        }
        Ok((Qubo::from_entries(raw.n, raw.entries)?, raw.meta))
    }

    /// `{"n", "entries": [[i, j, Q_ij], ...], "meta": null}`.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(
            &self.to_raw::<serde_json::Value>(None),
        )?)
    }

    /// Reads a QUBO file, ignoring any `meta` block.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuboJson<serde_json::Value> = serde_json::from_str(text)?;
        Ok(Self::from_raw(raw)?.0)
    }
}
