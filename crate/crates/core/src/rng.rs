//! Deterministic random streams.
//!
//! Every generator and sampler draws from ChaCha8 (`rand_chacha` 0.3,
//! `ChaCha8Rng::seed_from_u64`). Independent sub-streams for shots or batch
//! members are derived with `set_stream`, so a given `(seed, stream)` pair
//! yields the same sequence on every platform and regardless of the order
//! in which streams are consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name and version of the generator, recorded in run manifests.
pub const ALGORITHM: &str = "chacha8/rand_chacha-0.3";

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sub-stream `stream` of `seed`. Stream 0 is the same as [`seeded`].
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
