//! Seeded, splittable randomness.
//!
//! Every random draw in the crate comes from a ChaCha8 stream selected by a
//! `(seed, stream)` pair, so results never depend on call order or scheduling.

use core::f64::consts::TAU;

use libm::{cos, log, sin, sqrt};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Generator for the independent stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on `[0, 1)` with 53 random bits.
pub fn uniform<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform index in `0..bound` by rejection, free of modulo bias.
pub fn index_below<R: RngCore>(rng: &mut R, bound: usize) -> usize {
    debug_assert!(bound > 0);
    let bound = bound as u64;
    let zone = u64::MAX - (u64::MAX % bound) - 1;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return (x % bound) as usize;
        }
    }
}

/// Standard normal draws by the Box–Muller transform.
pub struct NormalSource<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: RngCore> NormalSource<R> {
    pub fn new(rng: R) -> Self {
        NormalSource { rng, spare: None }
    }

    pub fn sample(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 - U lies in (0, 1], keeping the logarithm finite.
        let u1 = 1.0 - uniform(&mut self.rng);
        let u2 = uniform(&mut self.rng);
        let r = sqrt(-2.0 * log(u1));
        let theta = TAU * u2;
        self.spare = Some(r * sin(theta));
        r * cos(theta)
    }
}

impl NormalSource<ChaCha8Rng> {
    pub fn from_stream(seed: u64, stream: u64) -> Self {
        NormalSource::new(stream_rng(seed, stream))
    }
}

/// In-place Fisher–Yates shuffle.
pub fn shuffle<R: RngCore, T>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = index_below(rng, i + 1);
        items.swap(i, j);
    }
}
