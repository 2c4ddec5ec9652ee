//! Small deterministic generator for seeded sampling.
//!
//! Experiments record their seed, and reports must be replayable
//! bit-for-bit, so sampling goes through this fixed splitmix64 stream
//! rather than a library RNG whose stream could change across versions.

use crate::scalar::Rational;
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub struct DetRng {
    state: u64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Rational p/q with |p| <= num_bound and 1 <= q <= den_bound.
    pub fn rational(&mut self, num_bound: u64, den_bound: u64) -> Rational {
        let p = self.int_in(-(num_bound as i64), num_bound as i64);
        let q = 1 + self.below(den_bound) as i64;
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Rational with an exact (typically large prime) denominator q and
    /// numerator uniform in `1..q`.  Used for "generic at scale N"
    /// frequencies.
    pub fn fraction_with_denominator(&mut self, q: u64) -> Rational {
        let p = 1 + self.below(q - 1);
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
