//! Deterministic random-number streams.
//!
//! Everything random in this crate derives from a single 64-bit root seed.
//! Independent work items (trials, targets, users, sweep points) get their
//! own stream addressed by an integer path, so results do not depend on
//! execution order or worker count.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the RNG for the work item addressed by `path` under `seed`.
///
/// Streams for distinct paths are statistically independent; the same
/// (seed, path) pair always yields the same stream.
pub fn stream(seed: u64, path: &[u64]) -> ChaCha8Rng {
    let mut state = seed;
    let mut acc = splitmix64(&mut state);
    for &tag in path {
        state ^= tag.wrapping_mul(0xD132_2214_05F8_2CB5).rotate_left(17);
        acc ^= splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    let mut s = acc;
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut s).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// One sample of a circularly symmetric complex Gaussian with the given
/// total variance (real and imaginary parts each carry half).
pub fn complex_gaussian(rng: &mut impl Rng, variance: f64) -> Complex64 {
    let sd = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(sd * re, sd * im)
}

/// An i.i.d. CN(0, variance) vector of the given length.
pub fn complex_gaussian_vector(rng: &mut impl Rng, len: usize, variance: f64) -> DVector<Complex64> {
    DVector::from_fn(len, |_, _| complex_gaussian(rng, variance))
}

/// One real Gaussian sample with the given variance.
pub fn gaussian(rng: &mut impl Rng, variance: f64) -> f64 {
    let x: f64 = rng.sample(StandardNormal);
    x * variance.sqrt()
}
