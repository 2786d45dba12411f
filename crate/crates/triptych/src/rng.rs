//! Deterministic, splittable random number generation.
//!
//! Band resampling and scenario simulation both draw from ChaCha streams
//! keyed by `(seed, stream index)`. ChaCha is a counter-mode cipher, so a
//! stream can be positioned independently of how many variates other
//! streams consumed; output for a given seed is bit-identical no matter
//! how work is chunked across threads or replicates.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// One independent variate stream of a seeded generator family.
pub struct Stream {
    rng: ChaCha12Rng,
}

impl Stream {
    /// Open stream `index` of the family keyed by `seed`.
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(index);
        rng.set_word_pos(0);
        Stream { rng }
    }

    /// Uniform variate on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform variate on `(0, 1]`; safe as a logarithm argument.
    pub fn uniform_open_zero(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Bernoulli draw with success probability `p`.
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// A pair of independent standard normal variates (Box-Muller).
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform_open_zero();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        (radius * angle.cos(), radius * angle.sin())
    }
}
