//! Exponent estimates from finite bit words: `ln ‖M⃗_{a_1…a_n}‖ / (n ln ½)`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::matrix::{ln_big, restrict_to_plane, word_product_bits, PlaneBasis};

/// Word lengths below this give estimates too noisy to read much into.
pub const LOW_CONFIDENCE_BITS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixNorm {
    /// Frobenius norm of the basis-`B` matrix.
    FrobeniusB,
    /// Largest absolute entry of the basis-`B` matrix.
    MaxAbsB,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateTrace {
    pub norm: MatrixNorm,
    /// `(n, estimate)` pairs, in the order requested.
    pub points: Vec<(usize, f64)>,
}

impl EstimateTrace {
    pub fn last(&self) -> Option<f64> {
        self.points.last().map(|&(_, a)| a)
    }
}

fn generator_b(bit: u8) -> [[i64; 2]; 2] {
    let m = restrict_to_plane(&word_product_bits(&[bit]), PlaneBasis::B);
    let e = m.entries();
    std::array::from_fn(|i| std::array::from_fn(|j| i64::try_from(&e[i][j]).unwrap()))
}

fn ln_norm(m: &[[BigInt; 2]; 2], norm: MatrixNorm) -> f64 {
    match norm {
        MatrixNorm::FrobeniusB => 0.5 * ln_big(&m.iter().flatten().map(|e| e * e).sum()),
        MatrixNorm::MaxAbsB => ln_big(&m.iter().flatten().map(|e| num_traits::Signed::abs(e)).max().unwrap()),
    }
}

/// Estimates at each requested prefix length `n`; lengths outside `1..=bits.len()` are skipped.
///
/// Products are exact integers over `5^n`; only the final logarithm is floating point.
pub fn alpha_estimate(bits: &[u8], at: &[usize], norm: MatrixNorm) -> EstimateTrace {
    let gens = [generator_b(0), generator_b(1)];
    let mut wanted: Vec<usize> = at.iter().copied().filter(|&n| n >= 1 && n <= bits.len()).collect();
    wanted.sort_unstable();
    wanted.dedup();
    let mut values = std::collections::BTreeMap::new();
    let mut acc: [[BigInt; 2]; 2] = [[BigInt::from(1), BigInt::from(0)], [BigInt::from(0), BigInt::from(1)]];
    let mut next = wanted.iter().peekable();
    let ln5 = 5f64.ln();
    let ln_half = 0.5f64.ln();
    for (k, &b) in bits.iter().enumerate() {
        let Some(&&target) = next.peek() else { break };
        let g = &gens[usize::from(b != 0)];
        acc = std::array::from_fn(|i| {
            std::array::from_fn(|j| &acc[i][0] * g[0][j] + &acc[i][1] * g[1][j])
        });
        let n = k + 1;
        if n == target {
            let ln = ln_norm(&acc, norm) - n as f64 * ln5;
            values.insert(n, ln / (n as f64 * ln_half));
            next.next();
        }
    }
    let points = at.iter().filter_map(|n| values.get(n).map(|&a| (*n, a))).collect();
    EstimateTrace { norm, points }
}

/// Summary of exponent estimates on independent uniform random words.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovSummary {
    pub nbits: usize,
    pub trials: usize,
    pub seed: u64,
    pub estimates: Vec<f64>,
    pub mean: f64,
    pub median: f64,
    pub fraction_above_one: f64,
    pub low_confidence: bool,
}

pub fn lyapunov_random_estimate(nbits: usize, trials: usize, seed: u64) -> LyapunovSummary {
    let nbits = nbits.max(1);
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Vec<u8>> = (0..trials).map(|_| (0..nbits).map(|_| rng.gen_range(0..=1u8)).collect()).collect();
    let estimates: Vec<f64> = words
        .par_iter()
        .map(|w| alpha_estimate(w, &[nbits], MatrixNorm::FrobeniusB).last().unwrap())
        .collect();
    let mean = estimates.iter().sum::<f64>() / trials as f64;
    let mut sorted = estimates.clone();
    sorted.sort_by(f64::total_cmp);
    let median = if trials % 2 == 1 {
        sorted[trials / 2]
    } else {
        0.5 * (sorted[trials / 2 - 1] + sorted[trials / 2])
    };
    let fraction_above_one = estimates.iter().filter(|&&a| a > 1.0).count() as f64 / trials as f64;
    LyapunovSummary {
        nbits,
        trials,
        seed,
        estimates,
        mean,
        median,
        fraction_above_one,
        low_confidence: nbits < LOW_CONFIDENCE_BITS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holder::trivial_exponent;

    #[test]
    fn constant_word_tends_to_trivial_exponent() {
        let bits = vec![0u8; 2000];
        let t = alpha_estimate(&bits, &[10, 100, 2000], MatrixNorm::FrobeniusB);
        assert_eq!(t.points.len(), 3);
        let errs: Vec<f64> = t.points.iter().map(|&(_, a)| (a - trivial_exponent()).abs()).collect();
        assert!(errs[2] < errs[0] && errs[2] < 2e-3, "{errs:?}");
    }

    #[test]
    fn alternating_word() {
        let bits: Vec<u8> = (0..4096).map(|i| (i % 2) as u8).collect();
        let a = alpha_estimate(&bits, &[4096], MatrixNorm::FrobeniusB).last().unwrap();
        assert!((a - 1.11855).abs() < 0.01, "{a}");
    }

    #[test]
    fn out_of_range_lengths_skipped() {
        let t = alpha_estimate(&[0, 1], &[0, 2, 5], MatrixNorm::MaxAbsB);
        assert_eq!(t.points.len(), 1);
        assert_eq!(t.points[0].0, 2);
    }

    #[test]
    fn lyapunov_is_deterministic() {
        let a = lyapunov_random_estimate(64, 3, 7);
        let b = lyapunov_random_estimate(64, 3, 7);
        assert_eq!(a, b);
        assert!(a.low_confidence);
        assert_ne!(a.estimates, lyapunov_random_estimate(64, 3, 8).estimates);
        assert_eq!(lyapunov_random_estimate(32, 1, 1).estimates.len(), 1);
    }
}
