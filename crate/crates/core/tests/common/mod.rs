#![allow(dead_code)]

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn gaussian(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

pub fn gaussian_complex(n: usize, seed: u64) -> Vec<Complex64> {
    let re = gaussian(n, seed);
    let im = gaussian(n, seed ^ 0x9e37_79b9_7f4a_7c15);
    re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect()
}

/// `max |a - b| / ||c||_1`.
pub fn relative_error(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let norm: f64 = c.iter().map(|v| v.abs()).sum();
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / norm
}
