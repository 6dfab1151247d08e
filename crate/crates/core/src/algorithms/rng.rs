//! Seeded random streams.
//!
//! Every run derives its generators from one 64-bit seed using ChaCha8
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`) and selects an independent
//! stream with `set_stream`. ChaCha output is specified bit-for-bit, so runs
//! reproduce across platforms.
//!
//! Stream layout: 0 initial hologram, 1 simulated-annealing proposals,
//! `1 + p` direct-binary-search pass `p`, `1 + i` OSPR subframe `i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INIT_STREAM: u64 = 0;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
