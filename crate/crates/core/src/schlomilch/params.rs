use std::f64::consts::PI;

use crate::bessel::s_cutoff;
use crate::{check_eps, Error, Result};

/// Parameters of the partitioned Schlömilch evaluator for a problem of size
/// `n` at working accuracy `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchlomilchParams {
    pub eps: f64,
    /// Largest Bessel order involved.
    pub nu: u32,
    /// Frequency shift: the frequencies are `(n + γ)π`.
    pub gamma: f64,
    pub n: usize,
    /// Hankel terms are used in pairs: `2M` terms in all.
    pub m: usize,
    /// The asymptotic expansion is `eps`-accurate for arguments `≥ s`.
    pub s: f64,
    /// `sqrt(s/π)`.
    pub alpha: f64,
    /// Refinement ratio `min(3/ln N, 1)`.
    pub beta: f64,
    /// Number of partition levels.
    pub p: usize,
}

/// `max(⌊0.3 ln(1/ε)⌋, 3)`.
pub fn hankel_pairs(eps: f64) -> usize {
    ((0.3 * (1.0 / eps).ln()).floor() as usize).max(3)
}

/// `min(3/ln N, 1)`.
pub fn refinement_ratio(n: usize) -> f64 {
    if n <= 1 {
        1.0
    } else {
        (3.0 / (n as f64).ln()).min(1.0)
    }
}

/// `⌈ln(30 α^{-1} N^{-1/2}) / ln β⌉`, clamped at zero.
pub fn partition_levels(alpha: f64, beta: f64, n: usize) -> usize {
    let x = 30.0 / (alpha * (n as f64).sqrt());
    if x >= 1.0 || beta >= 1.0 {
        0
    } else {
        (x.ln() / beta.ln()).ceil().max(0.0) as usize
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > -1.0 {
        Ok(())
    } else {
        Err(Error::InvalidShift(gamma))
    }
}

/// Parameter choice for `f_k = Σ c_n J_ν((n+γ)π k/N)`.
pub fn select_params(nu: u32, n: usize, eps: f64, gamma: f64) -> Result<SchlomilchParams> {
    select_params_for_orders(&[nu], n, eps, gamma)
}

/// As [`select_params`], with `s` large enough for every order in `orders`.
pub(crate) fn select_params_for_orders(
    orders: &[u32],
    n: usize,
    eps: f64,
    gamma: f64,
) -> Result<SchlomilchParams> {
    check_eps(eps)?;
    check_gamma(gamma)?;
    if n == 0 {
        return Err(Error::InvalidSize { min: 1, got: 0 });
    }
    let m = hankel_pairs(eps);
    let s = orders
        .iter()
        .map(|&nu| s_cutoff(nu as i32, m, eps))
        .fold(0.0, f64::max);
    let alpha = (s / PI).sqrt();
    let beta = refinement_ratio(n);
    Ok(SchlomilchParams {
        eps,
        nu: orders.iter().copied().max().unwrap_or(0),
        gamma,
        n,
        m,
        s,
        alpha,
        beta,
        p: partition_levels(alpha, beta, n),
    })
}

impl SchlomilchParams {
    /// The same parameters with the partition refinement switched off.
    pub fn single_partition(mut self) -> Self {
        self.p = 0;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_accuracy_uses_ten_pairs() {
        let p = select_params(0, 1000, 1e-15, 0.0).unwrap();
        assert_eq!(p.m, 10);
        assert!((p.s - 17.8).abs() < 0.1);
        assert!((p.alpha - (p.s / PI).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn loose_accuracy_clamps_pairs() {
        assert_eq!(select_params(0, 100, 1e-3, 0.0).unwrap().m, 3);
    }

    #[test]
    fn refinement_ratio_at_5000() {
        let p = select_params(0, 5000, 1e-15, 0.0).unwrap();
        assert!((p.beta - 0.352).abs() < 1e-3);
    }

    #[test]
    fn no_partitions_up_to_158() {
        for n in 1..=158 {
            assert_eq!(select_params(0, n, 1e-15, 0.0).unwrap().p, 0, "n={n}");
        }
        assert!(select_params(0, 159, 1e-15, 0.0).unwrap().p > 0);
        assert_eq!(select_params(0, 20, 1e-15, 0.0).unwrap().beta, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(select_params(0, 10, 0.0, 0.0).is_err());
        assert!(select_params(0, 10, 1e-17, 0.0).is_err());
        assert!(select_params(0, 10, 1e-8, -1.0).is_err());
        assert!(select_params(0, 0, 1e-8, 0.0).is_err());
    }
}
