//! Seeded random streams with deterministic derivation of child streams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// A ChaCha8 stream that remembers its key so that independent child streams
/// can be derived from it by index.
///
/// Parallel trials use `master.derive(trial_index)`, which makes results
/// independent of how trials are scheduled across threads.
#[derive(Debug, Clone)]
pub struct RngStream {
    key: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            key: seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Child stream `index`. Derivation depends only on this stream's key,
    /// not on how much of it has been consumed.
    pub fn derive(&self, index: u64) -> RngStream {
        let key = splitmix64(self.key ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)));
        RngStream::new(key)
    }

    pub fn key(&self) -> u64 {
        self.key
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}
