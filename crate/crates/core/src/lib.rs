//! Fast evaluation of Schlömilch and Fourier–Bessel expansions and the
//! order-0 discrete Hankel transform.
//!
//! Every fast evaluator in this crate rests on three truncated expansions of
//! `J_ν`: the Hankel asymptotic expansion for large arguments, the Taylor
//! series for small arguments and the Neumann addition formula for perturbed
//! arguments. Each truncation comes with an explicit error bound, and all
//! algorithmic parameters are derived from those bounds for a requested
//! working accuracy `eps`. Results are accurate to `O(eps * ||c||_1)`.
//!
//! The three problems:
//!
//! * [`schlomilch`]: `f_k = Σ c_n J_ν((n+γ)π k/N)`,
//! * [`fourier_bessel`]: `f_k = Σ c_n J_ν(j_{0,n} k/N)`,
//! * [`dht`]: `f_k = Σ c_n J_0(j_{0,k} j_{0,n}/j_{0,N+1})`.
//!
//! Each has an `O(N^2)` direct summation that doubles as a reference.

pub mod bessel;
mod error;
pub mod dht;
pub mod fourier_bessel;
mod kahan;
mod parallel;
mod scalar;
pub mod schlomilch;
pub mod trig;

pub use error::{Error, Result};
pub use kahan::KahanSum;
pub use scalar::{l1_norm, max_abs_diff, Scalar};

/// Smallest working accuracy accepted by the public evaluators (`2^-52`).
pub const MIN_EPS: f64 = f64::EPSILON;

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && (MIN_EPS..1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidAccuracy(eps))
    }
}
