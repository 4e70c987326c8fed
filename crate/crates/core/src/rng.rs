//! Seed derivation. Every random decision draws from a stream keyed by
//! (master seed, purpose, iteration, index) so runs are reproducible and
//! independent purposes never share a stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const TAG_HASH: u64 = 0x6861_7368;
pub(crate) const TAG_SPLIT: u64 = 0x7370_6c69;
pub(crate) const TAG_PICK: u64 = 0x7069_636b;
pub(crate) const TAG_SAMPLE: u64 = 0x7361_6d70;
pub(crate) const TAG_GEN: u64 = 0x0067_656e;
pub(crate) const TAG_QUERY: u64 = 0x7175_6572;

#[inline]
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub(crate) fn derive_seed(seed: u64, tag: u64, a: u64, b: u64) -> u64 {
    let mut h = splitmix64(seed ^ tag.rotate_left(17));
    h = splitmix64(h ^ a);
    splitmix64(h ^ b.rotate_left(31))
}

pub(crate) fn stream(seed: u64, tag: u64, a: u64, b: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, tag, a, b))
}
