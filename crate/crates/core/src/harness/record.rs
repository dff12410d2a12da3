use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// At least one feasible sample.
    Success,
    /// Samples were drawn but none decodes to a feasible solution.
    Infeasible,
    /// The run could not be carried out; `reason` says why.
    Fail,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Success => "success",
            Outcome::Infeasible => "infeasible",
            Outcome::Fail => "fail",
        }
    }
}

/// One attempt to solve one instance with one approach. Column order of the
/// CSV form follows the field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: String,
    pub problem_class: String,
    /// `<encoding>+<solver>`, with `@<topology>` when embedded.
    pub approach: String,
    pub outcome: Outcome,
    /// Best original objective over the feasible samples.
    pub best_objective: Option<f64>,
    pub maximizes: bool,
    /// Configuration plus solving, in seconds; reformulation excluded.
    pub runtime: f64,
    pub encode_seconds: f64,
    pub embed_seconds: f64,
    pub solve_seconds: f64,
    pub n_vars: Option<usize>,
    pub physical_qubits: Option<usize>,
    pub feasible_share: Option<f64>,
    pub chain_break_fraction: Option<f64>,
    pub baseline_objective: Option<f64>,
    pub baseline_tag: Option<String>,
    pub baseline_seconds: Option<f64>,
    pub reason: Option<String>,
}

impl RunRecord {
    /// Copy with every wallclock field zeroed, for comparing runs.
    pub fn without_timings(&self) -> RunRecord {
        RunRecord {
            runtime: 0.0,
            encode_seconds: 0.0,
            embed_seconds: 0.0,
            solve_seconds: 0.0,
            baseline_seconds: self.baseline_seconds.map(|_| 0.0),
            ..self.clone()
        }
    }
}
