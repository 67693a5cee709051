use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Counted uniform random stream backing every stochastic operation.
///
/// This wrapper is the reproducibility contract of the whole crate: one run
/// consumes exactly one stream, every random decision is a documented number
/// of `[0, 1)` draws, and the draw counter lets tests assert per-operation
/// consumption exactly. The generator is ChaCha8 seeded from a `u64`;
/// identical seeds yield bitwise-identical draw sequences on every platform.
///
/// A draw maps the top 53 bits of a `u64` block onto the unit interval:
/// `u = (next_u64() >> 11) as f64 * 2^-53`, so `u` is in `[0, 1)` and every
/// representable value is an integer multiple of `2^-53`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    chacha: ChaCha8Rng,
    draws: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            chacha: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// Seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of uniform draws consumed so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// One uniform draw in `[0, 1)` with 53-bit resolution.
    pub fn next_uniform(&mut self) -> f64 {
        self.draws += 1;
        (self.chacha.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One uniform draw in `[lo, hi)`. Counts as a single draw.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo < hi, "uniform_in requires lo < hi");
        lo + self.next_uniform() * (hi - lo)
    }

    /// Uniform index in `0..n`. Counts as a single draw. `n` must be >= 1.
    pub fn uniform_index(&mut self, n: usize) -> usize {
        debug_assert!(n >= 1, "uniform_index requires n >= 1");
        let i = (self.next_uniform() * n as f64) as usize;
        // u < 1 keeps u*n below n mathematically; min guards the one case
        // where rounding at the top of the range could land on n itself.
        i.min(n - 1)
    }

    /// Uniform integer in `lo..=hi`. Counts as a single draw.
    pub fn uniform_int_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi, "uniform_int_inclusive requires lo <= hi");
        lo + self.uniform_index(hi - lo + 1)
    }

    /// Fill `out` with independent uniforms in `[0, 1)`, one draw per slot.
    pub fn fill_uniform(&mut self, out: &mut [f64]) {
        for slot in out.iter_mut() {
            *slot = self.next_uniform();
        }
    }
}

/// Derives a child seed from a root seed and a list of string labels.
///
/// The mixing is pinned so stored run records stay replayable: FNV-1a (64 bit,
/// offset basis 0xcbf29ce484222325, prime 0x100000001b3) absorbs the root
/// seed's little-endian bytes, then each label's UTF-8 bytes followed by a
/// 0x1f separator byte, and the digest is finished with one splitmix64 round.
/// The separator keeps `["ab", "c"]` distinct from `["a", "bc"]`.
pub fn derive_seed(root: u64, labels: &[&str]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0100_0000_01b3;
    let mut h = OFFSET;
    for byte in root.to_le_bytes() {
        h = (h ^ u64::from(byte)).wrapping_mul(PRIME);
    }
    for label in labels {
        for byte in label.as_bytes() {
            h = (h ^ u64::from(*byte)).wrapping_mul(PRIME);
        }
        h = (h ^ 0x1f).wrapping_mul(PRIME);
    }
    splitmix64(h)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
