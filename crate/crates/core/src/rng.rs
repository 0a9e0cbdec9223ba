//! Seed handling. Every stochastic routine takes an explicit `u64` seed; per-replica
//! or per-chunk streams are derived with a splitmix64 mix so results do not depend
//! on how work is scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(0xd6e8_feb8_6659_fd93))
}

pub fn rng_from(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

pub fn stream(seed: u64, index: u64) -> Rng {
    Rng::seed_from_u64(derive_seed(seed, index))
}

/// Chunk size used when a sample count is split across workers.
pub const CHUNK: usize = 4096;

/// Generate `count` values in parallel with one derived stream per chunk of
/// [`CHUNK`] draws. Output order and values are independent of the thread count.
pub fn par_generate<T, F>(seed: u64, count: usize, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut Rng) -> T + Sync,
{
    use rayon::prelude::*;
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut rng = stream(seed, ci as u64);
            let len = CHUNK.min(count - ci * CHUNK);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}
