//! Tiny deterministic generator for seeded randomized checks.
//!
//! SplitMix64: identical sequences on every platform, no dependency.

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

    /// Uniform in 0..bound (bound > 0).
    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform in -magnitude..=magnitude.
    pub fn next_signed(&mut self, magnitude: i64) -> i64 {
        (self.next_u64() % (2 * magnitude as u64 + 1)) as i64 - magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn signed_range() {
        let mut rng = SplitMix64::new(1);
        for _ in 0..200 {
            let x = rng.next_signed(3);
            assert!((-3..=3).contains(&x));
        }
    }
}
