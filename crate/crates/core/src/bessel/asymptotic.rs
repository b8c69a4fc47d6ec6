//! Hankel's large-argument expansion
//!
//! `J_ν(z) = sqrt(2/(πz)) (cos μ Σ_{m<M} (-1)^m a_{2m}(ν) z^{-2m}
//!                       - sin μ Σ_{m<M} (-1)^m a_{2m+1}(ν) z^{-2m-1}) + R_{ν,M}(z)`
//!
//! with `μ = z - (2ν+1)π/4`, together with the bound on `R_{ν,M}` and the
//! cutoff `s_{ν,M}(ε)` beyond which the truncation is `ε`-accurate.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

/// The coefficients `a_0(ν), ..., a_{len-1}(ν)` of the expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCoeffs {
    nu: i32,
    values: Vec<f64>,
}

impl AsymptoticCoeffs {
    pub fn new(nu: i32, len: usize) -> Self {
        let mut values = Vec::with_capacity(len);
        let mut a = 1.0;
        for m in 0..len {
            if m > 0 {
                a *= coeff_ratio(nu, m);
            }
            values.push(a);
        }
        Self { nu, values }
    }

    pub fn nu(&self) -> i32 {
        self.nu
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `a_m(ν) / a_{m-1}(ν)`.
#[inline]
fn coeff_ratio(nu: i32, m: usize) -> f64 {
    let four_nu2 = 4.0 * f64::from(nu) * f64::from(nu);
    let odd = (2 * m - 1) as f64;
    (four_nu2 - odd * odd) / (8.0 * m as f64)
}

/// `a_m(ν) = (4ν²-1²)(4ν²-3²)⋯(4ν²-(2m-1)²) / (m! 8^m)`.
///
/// Evaluated as a running product; overflows to ±inf only when far more
/// terms are requested than any sensible truncation uses.
pub fn asy_coeff(nu: i32, m: usize) -> f64 {
    (1..=m).fold(1.0, |a, k| a * coeff_ratio(nu, k))
}

/// `(cos φ, sin φ)` for `φ = (2ν+1)π/4`, exactly.
#[inline]
pub(crate) fn phase_shift(nu: i32) -> (f64, f64) {
    match (2 * i64::from(nu) + 1).rem_euclid(8) {
        1 => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        3 => (-FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        5 => (-FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        _ => (FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
    }
}

/// `(cos μ, sin μ)` with `μ = z - (2ν+1)π/4`, without forming `μ`.
#[inline]
pub(crate) fn hankel_phase(nu: i32, z: f64) -> (f64, f64) {
    let (cp, sp) = phase_shift(nu);
    let (sz, cz) = z.sin_cos();
    (cz * cp + sz * sp, sz * cp - cz * sp)
}

/// Truncated expansion with the first `2M` terms.
pub fn hankel_asy_eval(nu: i32, terms: usize, z: f64) -> f64 {
    let mut p = 0.0;
    let mut q = 0.0;
    let mut t = 1.0;
    for k in 0..2 * terms {
        if k > 0 {
            t *= coeff_ratio(nu, k) / z;
        }
        let signed = if (k / 2) % 2 == 0 { t } else { -t };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
    }
    let (cos_mu, sin_mu) = hankel_phase(nu, z);
    (FRAC_2_PI / z).sqrt() * (cos_mu * p - sin_mu * q)
}

/// Size of the first neglected terms, a bound on `|R_{ν,M}(z)|`.
pub fn asy_error_bound(nu: i32, terms: usize, z: f64) -> f64 {
    let a_even = asy_coeff(nu, 2 * terms).abs();
    let a_odd = a_even * coeff_ratio(nu, 2 * terms + 1).abs();
    let z_even = z.powi(2 * terms as i32);
    (FRAC_2_PI / z).sqrt() * (a_even / z_even + a_odd / (z_even * z))
}

/// `s_{ν,M}(ε)`: four steps of the fixed-point iteration for
/// `asy_error_bound(ν, M, s) = ε`, started from `s = 1`.
pub fn s_cutoff(nu: i32, terms: usize, eps: f64) -> f64 {
    let a_even = asy_coeff(nu, 2 * terms).abs();
    let a_odd = a_even * coeff_ratio(nu, 2 * terms + 1).abs();
    let exponent = 1.0 / (2.0 * terms as f64 + 0.5);
    let scale = std::f64::consts::SQRT_2 / (PI.sqrt() * eps);
    let mut s = 1.0;
    for _ in 0..4 {
        s = (scale * (a_even + a_odd / s)).powf(exponent);
    }
    s
}
