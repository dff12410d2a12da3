use serde::{Deserialize, Serialize};

use crate::encodings::{count_vars, EncodingKind};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    NeutralAtom,
    AnnealerPegasus,
    GateBased,
}

impl Backend {
    pub const ALL: [Backend; 3] = [
        Backend::NeutralAtom,
        Backend::AnnealerPegasus,
        Backend::GateBased,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::NeutralAtom => "neutral_atom",
            Backend::AnnealerPegasus => "annealer_pegasus",
            Backend::GateBased => "gate_based",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "neutral_atom" => Backend::NeutralAtom,
            "annealer_pegasus" | "annealer" => Backend::AnnealerPegasus,
            "gate_based" | "gate" => Backend::GateBased,
            other => return Err(Error::UnknownTag(other.to_string())),
        })
    }
}

/// Pegasus size used for an `n`-variable clique: `ceil((n + 10) / 12)`.
pub fn pegasus_size_for(n: usize) -> usize {
    (n + 10).div_ceil(12)
}

/// Physical qubits for embedding a dense `n`-variable QUBO into Pegasus,
/// `24 ceil((n+10)/12) ceil((n-2)/12)`, clamped below by `n` (the formula
/// gives 0 for `n <= 2`).
pub fn n_qa(n: usize) -> u64 {
    let n64 = n as u64;
    let formula = 24 * pegasus_size_for(n) as u64 * n.saturating_sub(2).div_ceil(12) as u64;
    formula.max(n64)
}

/// Physical qubits needed by `backend` for a problem of class `kind` on
/// `nodes` nodes.
///
/// UD-MIS runs natively on neutral atoms (one atom per node); every other
/// class goes through its QUBO, which costs `4 n^2` atoms, `N_QA(n)` annealer
/// qubits, or `n` gate-model qubits for `n` QUBO variables. TSP variable
/// counts are the sizes of the constructed QUBOs, so MTZ includes its
/// `N(N-1)` arc variables.
pub fn qubit_cost(kind: EncodingKind, backend: Backend, nodes: usize) -> Result<u64> {
    if nodes < 1 {
        return Err(invalid("node count must be at least 1"));
    }
    let vars = count_vars(kind, nodes)?.total() as u64;
    Ok(match backend {
        Backend::NeutralAtom if kind == EncodingKind::Udmis => vars,
        Backend::NeutralAtom => vars
            .checked_mul(vars)
            .and_then(|v| v.checked_mul(4))
            .ok_or_else(|| invalid(format!("4 n^2 overflows for n = {vars}")))?,
        Backend::AnnealerPegasus => n_qa(vars as usize),
        Backend::GateBased => vars,
    })
}

pub fn qubit_cost_by_tag(kind: &str, backend: &str, nodes: usize) -> Result<u64> {
    qubit_cost(kind.parse()?, backend.parse()?, nodes)
}
