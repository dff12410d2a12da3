use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::sampleset::SampleSet;
use crate::clock::Stopwatch;
use crate::encodings::Qubo;
use crate::error::{invalid, Error, Result};
use crate::rng;

/// Largest QUBO the statevector simulator accepts.
pub const QAOA_MAX_VARS: usize = 20;

pub const QAOA_TAG: &str = "qaoa_statevector";

/// Gain sequences `a_k = a / (k + 1 + A)^alpha`, `c_k = c / (k + 1)^gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpsaGains {
    pub a: f64,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    /// Stability constant `A` as a fraction of the iteration count.
    pub stability: f64,
}

impl Default for SpsaGains {
    fn default() -> Self {
        SpsaGains {
            a: 0.2,
            c: 0.1,
            alpha: 0.602,
            gamma: 0.101,
            stability: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaParams {
    pub depth: usize,
    /// Number of expectation evaluations, including the initial point.
    pub budget: usize,
    pub shots: usize,
    pub seed: u64,
    /// Starting angles `[γ_1, β_1, γ_2, β_2, ..]`; `None` uses
    /// [`linear_ramp`].
    pub init: Option<Vec<f64>>,
    pub gains: SpsaGains,
}

impl QaoaParams {
    pub fn new(depth: usize, budget: usize, shots: usize, seed: u64) -> Self {
        QaoaParams {
            depth,
            budget,
            shots,
            seed,
            init: None,
            gains: SpsaGains::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaIteration {
    pub params: Vec<f64>,
    /// Expectation of the normalized cost; for SPSA steps the mean of the
    /// two perturbed evaluations.
    pub expectation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaTrace {
    pub depth: usize,
    pub iterations: Vec<QaoaIteration>,
    pub final_params: Vec<f64>,
    /// Exact expectation of `x^T Q x` at `final_params`.
    pub final_expectation: f64,
    pub initial_expectation: f64,
    pub evaluations: usize,
}

/// Linear-ramp angles: `γ_l` grows and `|β_l|` shrinks across the layers,
/// a Trotterized anneal from the mixer ground state towards low cost. With
/// the mixer written as `exp(-i β X)` that anneal needs `β < 0`. Angles
/// refer to the cost scaled by [`cost_scale`].
pub fn linear_ramp(depth: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * depth);
    for l in 0..depth {
        let f = (l as f64 + 0.5) / depth as f64;
        out.push(0.5 * PI * f);
        out.push(-0.375 * PI * (1.0 - f));
    }
    out
}

/// `x^T Q x` for every basis state, with variable `i` in bit `i` of the
/// state index.
pub fn cost_diagonal(q: &Qubo) -> Vec<f64> {
    let n = q.n();
    let mut out = Vec::with_capacity(1 << n);
    let mut x = vec![false; n];
    for b in 0..1usize << n {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = b >> i & 1 == 1;
        }
        out.push(q.energy(&x));
    }
    out
}

/// Largest `|x^T Q x|`, used to normalize the cost phases (1 for the zero
/// matrix).
pub fn cost_scale(diag: &[f64]) -> f64 {
    let m = diag.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    if m > 0.0 {
        m
    } else {
        1.0
    }
}

pub fn uniform_state(n: usize) -> Vec<Complex64> {
    let dim = 1usize << n;
    vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim]
}

/// Multiplies each amplitude by `exp(-i γ E_b / scale)`.
pub fn apply_cost_layer(state: &mut [Complex64], diag: &[f64], scale: f64, gamma: f64) {
    for (amp, &e) in state.iter_mut().zip(diag) {
        *amp *= Complex64::from_polar(1.0, -gamma * e / scale);
    }
}

/// Applies `exp(-i β X)` to every qubit.
pub fn apply_mixer_layer(state: &mut [Complex64], n: usize, beta: f64) {
    let (c, s) = (beta.cos(), beta.sin());
    let mis = Complex64::new(0.0, -s);
    for i in 0..n {
        let bit = 1usize << i;
        for b in 0..state.len() {
            if b & bit == 0 {
                let (a0, a1) = (state[b], state[b | bit]);
                state[b] = a0 * c + a1 * mis;
                state[b | bit] = a0 * mis + a1 * c;
            }
        }
    }
}

/// Prepares the depth-`params.len()/2` ansatz state, calling `on_layer`
/// after every cost and mixer layer.
pub fn qaoa_state_with<F>(diag: &[f64], n: usize, params: &[f64], mut on_layer: F) -> Vec<Complex64>
where
    F: FnMut(&[Complex64]),
{
    let scale = cost_scale(diag);
    let mut state = uniform_state(n);
    for layer in params.chunks(2) {
        apply_cost_layer(&mut state, diag, scale, layer[0]);
        on_layer(&state);
        apply_mixer_layer(&mut state, n, layer[1]);
        on_layer(&state);
    }
    state
}

pub fn qaoa_state(diag: &[f64], n: usize, params: &[f64]) -> Vec<Complex64> {
    qaoa_state_with(diag, n, params, |_| {})
}

/// `Σ_b |amp_b|^2 E_b`.
pub fn expectation(state: &[Complex64], diag: &[f64]) -> f64 {
    state.iter().zip(diag).map(|(a, e)| a.norm_sqr() * e).sum()
}

/// QAOA on the statevector: ansatz angles are tuned by SPSA on the exact
/// expectation, then `shots` bitstrings are sampled from the final state.
///
/// The returned parameters are the best evaluated point, so the final
/// expectation never exceeds the initial one.
pub fn qaoa_simulate(q: &Qubo, p: &QaoaParams) -> Result<(SampleSet, QaoaTrace)> {
    let n = q.n();
    if n > QAOA_MAX_VARS {
        return Err(Error::SizeGuard {
            what: "statevector variable count".into(),
            actual: n,
            limit: QAOA_MAX_VARS,
        });
    }
    if p.depth < 1 {
        return Err(invalid("QAOA depth must be at least 1"));
    }
    if p.budget < 1 || p.shots < 1 {
        return Err(invalid("budget and shots must be at least 1"));
    }
    let theta0 = match &p.init {
        Some(v) if v.len() != 2 * p.depth => {
            return Err(invalid(format!(
                "{} initial angles for depth {}",
                v.len(),
                p.depth
            )))
        }
        Some(v) => v.clone(),
        None => linear_ramp(p.depth),
    };
    let started = Stopwatch::start();
    let diag = cost_diagonal(q);
    let scale = cost_scale(&diag);
    let f = |theta: &[f64]| expectation(&qaoa_state(&diag, n, theta), &diag) / scale;

    let mut evals = 1;
    let f0 = f(&theta0);
    let mut iterations = vec![QaoaIteration {
        params: theta0.clone(),
        expectation: f0,
    }];
    let (mut best, mut best_f) = (theta0.clone(), f0);
    let mut theta = theta0;
    let g = p.gains;
    let iters = (p.budget - 1) / 2;
    let big_a = g.stability * iters as f64;
    let mut r = rng::stream(p.seed, 0);
    for k in 0..iters {
        let ak = g.a / (k as f64 + 1.0 + big_a).powf(g.alpha);
        let ck = g.c / (k as f64 + 1.0).powf(g.gamma);
        let delta: Vec<f64> = theta
            .iter()
            .map(|_| if r.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + ck * d).collect();
        let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - ck * d).collect();
        let (fp, fm) = (f(&plus), f(&minus));
        evals += 2;
        for (cand, fc) in [(&plus, fp), (&minus, fm)] {
            if fc < best_f {
                best_f = fc;
                best = cand.clone();
            }
        }
        for (t, d) in theta.iter_mut().zip(&delta) {
            // Rademacher perturbations: 1/Δ_i = Δ_i
            *t -= ak * (fp - fm) / (2.0 * ck) * d;
        }
        iterations.push(QaoaIteration {
            params: theta.clone(),
            expectation: 0.5 * (fp + fm),
        });
    }

    let state = qaoa_state(&diag, n, &best);
    let probs: Vec<f64> = state.iter().map(|a| a.norm_sqr()).collect();
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for pr in &probs {
        acc += pr;
        cdf.push(acc);
    }
    let mut sr = rng::stream(p.seed, 1);
    let samples: Vec<Vec<bool>> = (0..p.shots)
        .map(|_| {
            let u = sr.gen::<f64>() * acc;
            let b = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            (0..n).map(|i| b >> i & 1 == 1).collect()
        })
        .collect();
    let wall = started.seconds();
    let trace = QaoaTrace {
        depth: p.depth,
        iterations,
        final_params: best,
        final_expectation: best_f * scale,
        initial_expectation: f0 * scale,
        evaluations: evals,
    };
    Ok((SampleSet::from_samples(q, samples, QAOA_TAG, wall), trace))
}
