//! Small deterministic PRNG for reproducible randomized searches.
//!
//! Randomness in this crate only proposes candidates (contact-form
//! coefficients, basis changes in tests); acceptance of a candidate is
//! always an exact check. The generator is splitmix64, so a seed fixes
//! the whole stream across platforms and builds.

use crate::exactlin::{rat, QMatrix, Rational};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Integer in `lo..=hi`. Uniformity is not load-bearing here.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// Rational with small integer entries, used as a search coefficient.
    pub fn small_rational(&mut self, bound: i64) -> Rational {
        rat(self.int_in(-bound, bound))
    }
}

/// Random invertible matrix with entries in -3..=3, by rejection.
pub fn random_invertible(n: usize, rng: &mut SplitMix64) -> QMatrix {
    loop {
        let candidate = QMatrix::from_fn(n, n, |_, _| rng.small_rational(3));
        if candidate.inverse().is_some() {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_reproducible() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn int_in_respects_bounds() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let x = rng.int_in(-3, 3);
            assert!((-3..=3).contains(&x));
        }
    }

    #[test]
    fn random_invertible_is_invertible() {
        let mut rng = SplitMix64::new(1);
        for n in 1..=4 {
            assert!(random_invertible(n, &mut rng).inverse().is_some());
        }
    }
}
