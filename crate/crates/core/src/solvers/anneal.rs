use rand::Rng as _;

use super::sampleset::SampleSet;
use crate::clock::Stopwatch;
use crate::encodings::Qubo;
use crate::error::{invalid, Result};
use crate::rng;

/// Temperatures of a geometric ladder, hottest first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Schedule {
    pub t_hot: f64,
    pub t_cold: f64,
}

impl Schedule {
    pub fn new(t_hot: f64, t_cold: f64) -> Result<Self> {
        if !(t_hot > 0.0 && t_cold > 0.0) || !t_hot.is_finite() {
            return Err(invalid(format!(
                "temperatures must be positive, got [{t_hot}, {t_cold}]"
            )));
        }
        if t_cold > t_hot {
            return Err(invalid(format!(
                "inverted temperature range: cold {t_cold} > hot {t_hot}"
            )));
        }
        Ok(Schedule { t_hot, t_cold })
    }

    /// From the largest possible single-flip change down to a tenth of the
    /// smallest nonzero coefficient.
    pub fn default_for(q: &Qubo) -> Self {
        match q.compile().delta_range() {
            Some((max, min)) => Schedule {
                t_hot: max,
                t_cold: (0.1 * min).min(max),
            },
            None => Schedule {
                t_hot: 1.0,
                t_cold: 0.1,
            },
        }
    }

    /// Temperature at sweep `s` of `sweeps`.
    pub fn temperature(&self, s: usize, sweeps: usize) -> f64 {
        if sweeps <= 1 {
            return self.t_cold;
        }
        let frac = s as f64 / (sweeps - 1) as f64;
        self.t_hot * (self.t_cold / self.t_hot).powf(frac)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealParams {
    pub shots: usize,
    pub sweeps: usize,
    /// `None` selects [`Schedule::default_for`].
    pub schedule: Option<Schedule>,
    pub seed: u64,
}

pub const ANNEAL_TAG: &str = "simulated_annealing";

/// Classical single-flip Metropolis annealer, a stand-in for a quantum
/// annealer's sample ensemble.
///
/// Shot `k` starts from a uniformly random state drawn from stream `k` of
/// `seed`, so the first `s` shots of a run are the same for any larger
/// shot count.
pub fn simulated_anneal(q: &Qubo, p: &AnnealParams) -> Result<SampleSet> {
    if p.shots == 0 || p.sweeps == 0 {
        return Err(invalid("shots and sweeps must be at least 1"));
    }
    let schedule = match p.schedule {
        Some(s) => Schedule::new(s.t_hot, s.t_cold)?,
        None => Schedule::default_for(q),
    };
    let started = Stopwatch::start();
    let c = q.compile();
    let n = q.n();
    let temps: Vec<f64> = (0..p.sweeps)
        .map(|s| schedule.temperature(s, p.sweeps))
        .collect();
    let mut samples = Vec::with_capacity(p.shots);
    for shot in 0..p.shots {
        let mut r = rng::stream(p.seed, shot as u64);
        let mut x: Vec<bool> = (0..n).map(|_| r.gen::<bool>()).collect();
        let mut h = c.diag.clone();
        for i in 0..n {
            if x[i] {
                for &(j, w) in &c.nbrs[i] {
                    h[j] += w;
                }
            }
        }
        for &t in &temps {
            for i in 0..n {
                let delta = if x[i] { -h[i] } else { h[i] };
                if delta <= 0.0 || r.gen::<f64>() < (-delta / t).exp() {
                    let sign = if x[i] { -1.0 } else { 1.0 };
                    x[i] = !x[i];
                    for &(j, w) in &c.nbrs[i] {
                        h[j] += sign * w;
                    }
                }
            }
        }
        samples.push(x);
    }
    let wall = started.seconds();
    Ok(SampleSet::from_samples(q, samples, ANNEAL_TAG, wall))
}
