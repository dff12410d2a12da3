//! Hardware graphs, minor embeddings and physical-qubit cost models.

mod clique;
mod cost;
mod embedding;
mod physical;
mod topology;

pub use clique::{chimera_clique_chain, embed_clique_chimera, embed_clique_pegasus};
pub use cost::{n_qa, pegasus_size_for, qubit_cost, qubit_cost_by_tag, Backend};
pub use embedding::{
    embedding_from_json, embedding_to_json, resolve_chain_breaks, validate_embedding,
    ChainResolution, MinorEmbedding, ValidationReport, Violation,
};
pub use physical::{default_chain_strength, embed_qubo, PhysicalQubo};
pub use topology::{
    build_chimera, build_pegasus, chimera_index, pegasus_index, Coord, TopologyGraph, TopologyKind,
    PEGASUS_S0, PEGASUS_S1,
};
