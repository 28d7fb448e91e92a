//! Seeded pseudo-random numbers with a pinned state-update rule.
//!
//! Weight initialization is part of reproducible results, so the generator is
//! spelled out rather than borrowed from a crate whose stream might change:
//! xorshift64* with the 12/25/27 shift triple and the Vigna multiplier.
//! Given the same seed, every port of this crate must produce the same stream.

/// xorshift64* generator.
///
/// State update per draw:
/// `x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output = x * 0x2545_F491_4F6C_DD1D`.
/// The state must never be zero; seed 0 is remapped to `0x9E37_79B9_7F4A_7C15`.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed };
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` using the top 53 bits of the output word.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_unit() * (hi - lo)
    }

    /// Uniform in `[-scale, scale)`.
    pub fn next_symmetric(&mut self, scale: f64) -> f64 {
        self.next_in(-scale, scale)
    }
}
