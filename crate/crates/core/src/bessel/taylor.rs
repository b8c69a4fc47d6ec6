//! Small-argument Taylor series of `J_ν`.

use std::f64::consts::LN_2;

/// `Σ_{t<T} (-1)^t (z/2)^{2t+ν} / (t! (t+ν)!)`.
pub fn taylor_eval(nu: u32, terms: usize, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = leading_term(nu, half);
    let mut sum = 0.0;
    let h2 = half * half;
    for t in 0..terms {
        sum += term;
        let t1 = (t + 1) as f64;
        term *= -h2 / (t1 * (t1 + f64::from(nu)));
    }
    sum
}

/// `(z/2)^ν / ν!`
fn leading_term(nu: u32, half: f64) -> f64 {
    (1..=nu).fold(1.0, |acc, k| acc * half / f64::from(k))
}

pub(crate) fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// `t_{ν,T}(ε) ≈ (2^{2T+ν} (T+ν)! T! ε)^{1/(2T+ν)}`.
///
/// Solves "first neglected Taylor term = ε", i.e. the exact remainder with
/// its `₁F₂(1; T+1, T+ν+1; -z²/4)` factor replaced by 1. That factor tends
/// to 1 as `z → 0` and is below 1 in the range where the cutoff is used.
pub fn t_cutoff(nu: u32, terms: usize, eps: f64) -> f64 {
    let t = terms as u32;
    let power = f64::from(2 * t + nu);
    let log = power * LN_2 + ln_factorial(t + nu) + ln_factorial(t) + eps.ln();
    (log / power).exp()
}
