//! Counter-based uniforms.
//!
//! Every random decision is a pure function of `(seed, replica, x, y, t)`, so
//! trajectories do not depend on traversal order, window size or the number
//! of worker threads. The mixer is the SplitMix64 finalizer applied to each
//! key word in turn.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline(always)]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Keyed stream for one replica of one run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(master_seed: u64, replica: u64) -> Self {
        let key = mix(mix(master_seed.wrapping_add(GOLDEN)) ^ replica.wrapping_mul(GOLDEN));
        Self { key }
    }

    /// Raw 64-bit output for a space-time site.
    #[inline]
    pub fn bits(&self, x: i64, y: i64, t: u64) -> u64 {
        let mut h = self.key;
        h = mix(h ^ (x as u64).wrapping_add(GOLDEN));
        h = mix(h ^ (y as u64).wrapping_add(GOLDEN.rotate_left(17)));
        mix(h ^ t.wrapping_add(GOLDEN.rotate_left(41)))
    }

    /// Uniform on `(0, 1]`, so that `u <= p` never fires for `p = 0` and
    /// always fires for `p = 1`.
    #[inline]
    pub fn uniform(&self, x: i64, y: i64, t: u64) -> f64 {
        ((self.bits(x, y, t) >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
