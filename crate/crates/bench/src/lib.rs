//! Shared fixtures for the benchmarks in `benches/`.

use theta_core::{membership, Level, Mat2, Sampler};

/// Fixed seed so runs compare like with like.
pub const SEED: u64 = 0x5eed;

/// `n` pseudo-random members of the level's theta group, with words of up to
/// `max_word_length` generators.
pub fn members(level: Level, n: usize, max_word_length: usize) -> Vec<Mat2> {
    let mut sampler = Sampler::with_stream(SEED, u64::from(level.modulus()), max_word_length);
    (0..n)
        .map(|_| sampler.next_where(|m| membership(m, level.modulus()).unwrap()))
        .collect()
}

/// `n` pseudo-random elements of `SL(2, Z)`.
pub fn elements(n: usize, max_word_length: usize) -> Vec<Mat2> {
    let mut sampler = Sampler::with_stream(SEED, 99, max_word_length);
    (0..n).map(|_| sampler.next_element()).collect()
}
