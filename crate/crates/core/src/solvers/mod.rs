//! Exact and sampling solvers for QUBOs: exhaustive search, simulated
//! annealing and a statevector QAOA simulator.

mod anneal;
mod brute;
mod qaoa;
mod sampleset;

pub use anneal::{simulated_anneal, AnnealParams, Schedule, ANNEAL_TAG};
pub use brute::{brute_force, mask_to_bits, BruteForce, ARGMIN_RTOL, BRUTE_FORCE_MAX_VARS};
pub use qaoa::{
    apply_cost_layer, apply_mixer_layer, cost_diagonal, cost_scale, expectation, linear_ramp,
    qaoa_simulate, qaoa_state, qaoa_state_with, uniform_state, QaoaIteration, QaoaParams,
    QaoaTrace, SpsaGains, QAOA_MAX_VARS, QAOA_TAG,
};
pub use sampleset::{
    bits_from_str, bits_to_string, histogram, Histogram, HistogramRow, SampleRecord, SampleSet,
};
