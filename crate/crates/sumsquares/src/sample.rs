//! Seeded random generation of test instances.
//!
//! Every randomized suite in the crate draws from [`seeded_rng`] so runs are
//! reproducible bit-for-bit. Weights are produced as i.i.d. uniform `[0,1]`
//! values, then rescaled affinely toward 1 (or toward 0) until the target
//! mean is met.

use num_rational::Ratio;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::optimize::NonnegVector24;
use crate::ring::{Modulus, ResidueWeight};

/// Fixed default seed used by the CLI and the acceptance suite.
pub const DEFAULT_SEED: u64 = 1729;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rescale values affinely so that their mean becomes `target`:
/// toward 1 when the mean is too low, toward 0 when it is too high.
fn rescale_to_mean(values: &mut [f64], target: f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if mean <= 0.0 || mean >= 1.0 {
        values.iter_mut().for_each(|v| *v = target);
        return;
    }
    if mean < target {
        let s = (1.0 - target) / (1.0 - mean);
        values.iter_mut().for_each(|v| *v = 1.0 - (1.0 - *v) * s);
    } else {
        let s = target / mean;
        values.iter_mut().for_each(|v| *v *= s);
    }
}

/// A random weight on `Z/qZ` with the given mean.
pub fn random_weight(q: Modulus, target_mean: f64, rng: &mut impl Rng) -> ResidueWeight {
    let mut values: Vec<f64> = (0..q.len()).map(|_| rng.gen::<f64>()).collect();
    rescale_to_mean(&mut values, target_mean);
    ResidueWeight { q, values }
}

/// A random rational vector in `[0,1]^24` with denominator 4096, rescaled so
/// the sum is at least `min_sum`.
pub fn random_unit_vector24(min_sum: f64, rng: &mut impl Rng) -> NonnegVector24 {
    const DEN: i64 = 4096;
    let mut values = [Ratio::new(0, 1); 24];
    loop {
        for v in &mut values {
            *v = Ratio::new(rng.gen_range(0..=DEN), DEN);
        }
        let sum: Ratio<i64> = values.iter().sum();
        let sum_f = *sum.numer() as f64 / *sum.denom() as f64;
        if sum_f >= min_sum {
            return NonnegVector24 { values };
        }
        if sum_f > 0.0 {
            // pull toward 1 until the target sum is reached, then re-quantize
            let target_mean = (min_sum / 24.0).min(1.0);
            let mean = sum_f / 24.0;
            let s = (1.0 - target_mean) / (1.0 - mean);
            for v in &mut values {
                let f = 1.0 - (1.0 - (*v.numer() as f64 / DEN as f64)) * s;
                let num = (f * DEN as f64).ceil().clamp(0.0, DEN as f64) as i64;
                *v = Ratio::new(num, DEN);
            }
            let sum: Ratio<i64> = values.iter().sum();
            if *sum.numer() as f64 / *sum.denom() as f64 >= min_sum {
                return NonnegVector24 { values };
            }
        }
    }
}

/// A random non-negative rational vector with entries in `[0, max]`.
pub fn random_nonneg_vector24(max: f64, rng: &mut impl Rng) -> NonnegVector24 {
    const DEN: i64 = 4096;
    let cap = (max * DEN as f64) as i64;
    let mut values = [Ratio::new(0, 1); 24];
    for v in &mut values {
        *v = Ratio::new(rng.gen_range(0..=cap), DEN);
    }
    NonnegVector24 { values }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_hits_target_mean() {
        let mut rng = seeded_rng(3);
        for &target in &[0.2, 0.5, 0.375 + 0.05, 0.9] {
            let w = random_weight(Modulus::new(100).unwrap(), target, &mut rng);
            assert!((w.mean() - target).abs() < 1e-9);
            assert!(w.values.iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)));
        }
    }

    #[test]
    fn unit_vector_meets_min_sum() {
        let mut rng = seeded_rng(5);
        for _ in 0..50 {
            let v = random_unit_vector24(9.5, &mut rng);
            assert!(v.sum_f64() >= 9.5);
            assert!(v.values.iter().all(|r| *r.numer() >= 0 && *r <= Ratio::new(1, 1)));
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = random_weight(Modulus::new(50).unwrap(), 0.5, &mut seeded_rng(42));
        let b = random_weight(Modulus::new(50).unwrap(), 0.5, &mut seeded_rng(42));
        assert_eq!(a.values, b.values);
    }
}
