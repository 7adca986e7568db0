//! Seeded, order-independent random streams.
//!
//! Every independent work item (a trial, a point-set draw, a growth sample)
//! gets its own ChaCha stream derived from the run seed and a work-item key, so
//! results do not depend on evaluation order or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x005E_ED0F_DA7A;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed for a work item, for APIs that take a plain seed.
pub fn stream_key(seed: u64, key: &[u64]) -> u64 {
    key.iter().fold(splitmix(seed), |h, &k| splitmix(h ^ k))
}

/// Random stream for work item `key` under run seed `seed`.
pub fn stream(seed: u64, key: &[u64]) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = 0x243F_6A88_85A3_08D3u64;
    for &k in key {
        h = splitmix(h ^ k);
    }
    rng.set_stream(h);
    rng
}
