//! Seeded substreams.
//!
//! All randomness derives from one `u64` seed. A [`Substreams`] value holds a
//! ChaCha8 generator seeded with `seed_from_u64(seed)`; substream `i` is that
//! generator switched to ChaCha stream `i`. Random graph generators use the
//! lexicographic rank of the pair `(u, v)` as the stream index, Monte Carlo
//! estimators use the trial index. Draws are therefore independent of
//! iteration order and of how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Substreams {
    base: ChaCha8Rng,
}

impl Substreams {
    pub fn new(seed: u64) -> Self {
        Substreams {
            base: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(index);
        rng
    }
}

/// Rank of the pair `u < v` among all pairs of `0..n` in lexicographic order.
pub fn pair_index(u: usize, v: usize, n: usize) -> u64 {
    debug_assert!(u < v && v < n);
    let (u, v, n) = (u as u64, v as u64, n as u64);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}
