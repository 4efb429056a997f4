//! Seeded random distributions on the probability simplex.
//!
//! Draws are symmetric Dirichlet(1) via normalized `Exp(1)` variates, then
//! quantized onto a fixed denominator with largest-remainder rounding so the
//! result is an exact distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::dist::{Dist, JointDist};
use crate::prob::{Prob, Rational};

/// Common denominator of every sampled probability.
pub const SAMPLE_DENOMINATOR: u64 = 1_000_000;

pub struct SimplexSampler {
    rng: ChaCha8Rng,
}

impl SimplexSampler {
    pub fn new(seed: u64) -> Self {
        SimplexSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn simplex_counts(&mut self, k: usize) -> Vec<u64> {
        let draws: Vec<f64> = (0..k).map(|_| self.rng.sample::<f64, _>(Exp1)).collect();
        quantize(&draws, SAMPLE_DENOMINATOR)
    }

    pub fn dist(&mut self, k: usize) -> Dist {
        let d = Rational::from_integer(SAMPLE_DENOMINATOR.into());
        let weights = self
            .simplex_counts(k)
            .into_iter()
            .map(|c| Prob::from_unchecked(Rational::from_integer(c.into()) / &d))
            .collect();
        Dist::from_weights_unchecked(weights)
    }

    pub fn joint(&mut self, rows: usize, cols: usize) -> JointDist {
        let counts: Vec<u32> = self.simplex_counts(rows * cols).into_iter().map(|c| c as u32).collect();
        JointDist::from_counts(rows, cols, &counts, SAMPLE_DENOMINATOR as u32)
    }

    /// A joint with a shape drawn uniformly from `1..=max_rows` x `1..=max_cols`.
    pub fn joint_up_to(&mut self, max_rows: usize, max_cols: usize) -> JointDist {
        let rows = self.rng.random_range(1..=max_rows);
        let cols = self.rng.random_range(1..=max_cols);
        self.joint(rows, cols)
    }
}

/// Scales nonnegative weights to integers summing to `denom`, handing the
/// leftover units to the largest fractional remainders (ties to the lower
/// index). All-zero input yields a point mass on index 0.
pub fn quantize(weights: &[f64], denom: u64) -> Vec<u64> {
    let total: f64 = weights.iter().sum();
    if weights.is_empty() {
        return Vec::new();
    }
    if !total.is_finite() || total <= 0.0 {
        let mut out = vec![0; weights.len()];
        out[0] = denom;
        return out;
    }
    let scaled: Vec<f64> = weights.iter().map(|w| w / total * denom as f64).collect();
    let mut out: Vec<u64> = scaled.iter().map(|s| s.floor() as u64).collect();
    let assigned: u64 = out.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| (scaled[b] - scaled[b].floor()).total_cmp(&(scaled[a] - scaled[a].floor())).then(a.cmp(&b)));
    if assigned <= denom {
        for &i in order.iter().cycle().take((denom - assigned) as usize) {
            out[i] += 1;
        }
    } else {
        // float rounding overshot; take units back from the largest cells
        let mut excess = assigned - denom;
        while excess > 0 {
            let i = (0..out.len()).max_by_key(|&i| (out[i], std::cmp::Reverse(i))).unwrap();
            out[i] -= 1;
            excess -= 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{marginal, Axis};

    #[test]
    fn quantize_sums_exactly() {
        assert_eq!(quantize(&[1.0, 1.0, 1.0], 10), vec![4, 3, 3]);
        assert_eq!(quantize(&[0.0, 0.0], 7), vec![7, 0]);
        assert_eq!(quantize(&[2.0, 0.0, 6.0], 4), vec![1, 0, 3]);
        assert_eq!(quantize(&[], 4), Vec::<u64>::new());
    }

    #[test]
    fn same_seed_same_joints() {
        let mut a = SimplexSampler::new(7);
        let mut b = SimplexSampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.joint_up_to(5, 5), b.joint_up_to(5, 5));
        }
    }

    #[test]
    fn samples_are_valid() {
        let mut s = SimplexSampler::new(11);
        for _ in 0..50 {
            let j = s.joint_up_to(4, 4);
            assert!(j.rows() >= 1 && j.rows() <= 4);
            assert_eq!(marginal(&j, Axis::X).len(), j.rows());
            let d = s.dist(3);
            assert_eq!(d.len(), 3);
        }
    }
}
