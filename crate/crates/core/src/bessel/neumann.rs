//! Truncated Neumann addition formula
//! `J_ν(z+δz) ≈ Σ_{s=-K+1}^{K-1} J_{ν-s}(z) J_s(δz)`, with remainder at most
//! `5.2 (e|δz|/2)^K` whenever `|δz| < 1/e`.

use std::f64::consts::E;

/// Largest `|δz|` for which the `(2K-1)`-term Neumann sum is `ε`-accurate:
/// `2 (ε/5.2)^{1/K} / e`.
pub fn neumann_radius(terms: usize, eps: f64) -> f64 {
    2.0 * (eps / 5.2).powf(1.0 / terms as f64) / E
}

/// Remainder bound `5.2 (e|δz|/2)^K`.
pub fn neumann_error_bound(terms: usize, dz: f64) -> f64 {
    5.2 * (0.5 * E * dz.abs()).powi(terms as i32)
}

/// The truncated sum itself, for checking the bound.
pub fn neumann_sum(nu: i32, terms: usize, z: f64, dz: f64) -> f64 {
    let k = terms as i32;
    (-k + 1..k)
        .map(|s| super::jn(nu - s, z) * super::jn(s, dz))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_inverts_bound() {
        for k in 1..=10 {
            let r = neumann_radius(k, 1e-15);
            assert!((neumann_error_bound(k, r) / 1e-15 - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn tabulated_radius_at_machine_accuracy() {
        assert!((neumann_radius(10, 1e-15) - 0.0197).abs() < 1e-4);
        assert!((neumann_radius(3, 1e-15) - 4.25e-6).abs() < 1e-8);
    }

    #[test]
    fn truncated_sum_within_bound() {
        for &(nu, z, dz, k) in &[(0, 10.0, 0.01, 3), (-3, 25.0, -0.2, 5), (7, 0.5, 0.3, 8)] {
            let err = (super::super::jn(nu, z + dz) - neumann_sum(nu, k, z, dz)).abs();
            assert!(err <= neumann_error_bound(k, dz) + 1e-15);
        }
    }
}
