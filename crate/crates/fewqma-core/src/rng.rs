//! Counter-based pseudo-random generator and Gaussian sampling.
//!
//! Reproducibility is by recorded seeds, not by matching any external
//! bit stream: each draw is a hash of `(seed, counter)`, so independent
//! streams can be derived for trials without consuming each other's state.

use alloc::vec::Vec;
use num_complex::Complex64;
// Inherent f64 methods shadow the trait once std is in the crate graph.
#[allow(unused_imports)]
use num_traits::Float;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; statistically solid for seeding and stream mixing.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic counter-based generator.
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
    spare_gaussian: Option<f64>,
}

impl CounterRng {
    /// Generator for a master seed.
    pub fn new(seed: u64) -> Self {
        CounterRng {
            key: mix(seed),
            counter: 0,
            spare_gaussian: None,
        }
    }

    /// Independent stream derived from a master seed and a stream index,
    /// so adding trials never reshuffles earlier ones.
    pub fn derive(master: u64, stream: u64) -> Self {
        CounterRng {
            key: mix(mix(master) ^ mix(stream.wrapping_add(1))),
            counter: 0,
            spare_gaussian: None,
        }
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key ^ mix(self.counter))
    }

    /// Uniform double in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform double in `[0, hi]`.
    pub fn uniform_in(&mut self, hi: f64) -> f64 {
        self.uniform() * hi
    }

    /// Standard normal via Box-Muller.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * core::f64::consts::PI * u2;
        self.spare_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Complex number with independent standard-normal real and imaginary
    /// parts.
    pub fn gaussian_complex(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian())
    }

    /// Gaussian-amplitude complex vector of length `n` (not normalized).
    pub fn gaussian_vector(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.gaussian_complex()).collect()
    }
}
