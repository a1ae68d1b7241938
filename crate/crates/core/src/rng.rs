//! Seeded generators. Everything stochastic in a run derives from the
//! config seed through ChaCha8, using separate streams for the vertex
//! order shuffle and the partitioner's own draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type RngState = ChaCha8Rng;

const STREAM_ORDER: u64 = 0;
const PARTITIONER: u64 = 1;

pub fn stream_rng(seed: u64) -> RngState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_ORDER);
    rng
}

pub fn partitioner_rng(seed: u64) -> RngState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PARTITIONER);
    rng
}
