//! Counter-based random number generation for reproducible Monte Carlo.
//!
//! A counter-based generator produces the i-th variate as a pure function of
//! (seed, i), so a sampling plan can be split across blocks or threads and
//! still yield exactly the same stream as a serial run. The mixer is the
//! splitmix64 finalizer, which passes standard statistical batteries and is
//! more than adequate for Monte-Carlo integration (this is not a
//! cryptographic generator).

/// Stateless counter-based generator keyed by a 64-bit seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    seed: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// The `counter`-th 64-bit word of the stream.
    #[inline]
    pub fn u64_at(&self, counter: u64) -> u64 {
        mix(self
            .seed
            .wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// The `counter`-th uniform deviate in [0, 1), with 53-bit resolution.
    #[inline]
    pub fn unit_f64_at(&self, counter: u64) -> f64 {
        (self.u64_at(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
