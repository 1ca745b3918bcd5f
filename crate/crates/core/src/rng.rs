//! Seeded randomness.
//!
//! Everything random in the crate (fold assignment, weight initialisation,
//! epoch shuffles) draws from SplitMix64 so that a run is reproducible from a
//! single 64-bit seed, in this crate or in any other implementation that
//! follows the same recipe:
//!
//! * generator: SplitMix64 (`state += 0x9E3779B97F4A7C15`, then the
//!   `(30, 27, 31)` xor-shift/multiply finaliser);
//! * integers in `[0, n)`: the high 64 bits of `next_u64() * n` (128-bit);
//! * floats in `[0, 1)`: `(next_u64() >> 11) * 2^-53`;
//! * shuffles: Fisher–Yates from the last position down, `j = below(i + 1)`;
//! * derived seeds: [`mix`].

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a parent seed and a stream index
/// (fold number, epoch number, ...).
///
/// `mix(seed, i) = F(seed ^ F(i + GOLDEN))` where `F` is the SplitMix64
/// finaliser.
pub fn mix(seed: u64, index: u64) -> u64 {
    finalize(seed ^ finalize(index.wrapping_add(GOLDEN)))
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        finalize(self.state)
    }

    /// Uniform integer in `[0, n)`. `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform float in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform float in `[-r, r)`.
    pub fn symmetric(&mut self, r: f64) -> f64 {
        (2.0 * self.next_f64() - 1.0) * r
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
