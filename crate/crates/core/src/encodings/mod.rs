//! QUBO encodings of MIS, MaxCut and three TSP formulations, variable
//! counts, and decoding of bitstrings back to checked solutions.

mod count;
mod decode;
mod graph_problems;
mod qubo;
mod record;
mod tsp_dfj;
mod tsp_mtz;
mod tsp_qap;

pub use count::{count_vars, count_vars_by_tag, VarCount};
pub use decode::{decode, DecodedSolution, Payload};
pub use graph_problems::{default_mis_penalty, encode_maxcut, encode_mis};
pub use qubo::{nonzero_share, CompiledQubo, Qubo};
pub use record::{EncodingKind, EncodingRecord, Source, VarRole};
pub use tsp_dfj::{
    conservative_dfj_penalty, default_dfj_penalty, dfj_edge_index, dfj_slack_bits, dfj_subsets,
    encode_tsp_dfj, DFJ_MAX_NODES,
};
pub use tsp_mtz::{
    default_mtz_penalties, encode_tsp_mtz, mtz_order_bits, mtz_slack_bits, MtzLayout,
};
pub use tsp_qap::{default_qap_penalty, encode_tsp_qap, qap_index};
