//! Pointwise Bessel functions of the first kind, the three truncated
//! expansions the fast evaluators are built from, and the roots of `J_0`.

mod asymptotic;
mod neumann;
mod roots;
mod taylor;

use std::sync::OnceLock;

pub use asymptotic::{asy_coeff, asy_error_bound, hankel_asy_eval, s_cutoff, AsymptoticCoeffs};
pub(crate) use asymptotic::{hankel_phase, phase_shift};
pub use neumann::{neumann_error_bound, neumann_radius, neumann_sum};
pub use roots::{bessel_roots_j0, BesselRootsTable};
pub use taylor::{t_cutoff, taylor_eval};

use crate::{Error, Result};

/// Taylor terms used by [`bessel_j`] near the origin.
const TAYLOR_TERMS: usize = 10;
/// Asymptotic terms (`2M`) used by [`bessel_j`] for large arguments.
const ASY_TERMS: usize = 16;
/// Target accuracy of the pointwise evaluator.
const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
const CACHED_ORDERS: usize = 96;

#[derive(Clone, Copy)]
struct Regions {
    taylor_below: f64,
    asymptotic_above: f64,
}

fn regions(nu: u32) -> Regions {
    static TABLE: OnceLock<Vec<Regions>> = OnceLock::new();
    let compute = |nu: u32| Regions {
        taylor_below: t_cutoff(nu, TAYLOR_TERMS, UNIT_ROUNDOFF),
        asymptotic_above: s_cutoff(nu as i32, ASY_TERMS, UNIT_ROUNDOFF),
    };
    match TABLE
        .get_or_init(|| (0..CACHED_ORDERS as u32).map(compute).collect())
        .get(nu as usize)
    {
        Some(r) => *r,
        None => compute(nu),
    }
}

/// `J_ν(z)` for integer `ν ≥ 0` and `z ≥ 0`, to about `1e-15` absolute.
///
/// Uses the truncated Taylor series below `t_{ν,10}`, Hankel's expansion
/// above `s_{ν,16}` and Miller's backward recurrence in between.
pub fn bessel_j(nu: u32, z: f64) -> Result<f64> {
    if z < 0.0 || z.is_nan() {
        return Err(Error::NegativeArgument(z));
    }
    Ok(j_nonneg(nu, z))
}

/// `J_ν(x)` for any integer order and real argument, through
/// `J_{-ν}(x) = (-1)^ν J_ν(x)` and `J_ν(-x) = (-1)^ν J_ν(x)`.
pub fn jn(nu: i32, x: f64) -> f64 {
    let v = j_nonneg(nu.unsigned_abs(), x.abs());
    let flips = (nu < 0) as u32 + (x < 0.0) as u32;
    if nu % 2 != 0 && flips == 1 {
        -v
    } else {
        v
    }
}

fn j_nonneg(nu: u32, z: f64) -> f64 {
    if z == 0.0 {
        return if nu == 0 { 1.0 } else { 0.0 };
    }
    let r = regions(nu);
    if z <= r.taylor_below {
        taylor_eval(nu, TAYLOR_TERMS, z)
    } else if z >= r.asymptotic_above {
        hankel_adaptive(nu as i32, z)
    } else {
        miller(nu, z)
    }
}

/// Hankel's expansion with up to `2 * ASY_TERMS` terms, stopping once the
/// terms are negligible.
fn hankel_adaptive(nu: i32, z: f64) -> f64 {
    let four_nu2 = 4.0 * f64::from(nu) * f64::from(nu);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    for k in 1..2 * ASY_TERMS {
        let odd = (2 * k - 1) as f64;
        t *= (four_nu2 - odd * odd) / (8.0 * k as f64 * z);
        let signed = if (k / 2) % 2 == 0 { t } else { -t };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if t.abs() < 1e-20 {
            break;
        }
    }
    let (cos_mu, sin_mu) = hankel_phase(nu, z);
    (std::f64::consts::FRAC_2_PI / z).sqrt() * (cos_mu * p - sin_mu * q)
}

/// Starting order for the backward recurrence: past the turning point by a
/// margin that grows like the width of the transition region, `z^{1/3}`.
fn miller_start(order: u32, z: f64) -> usize {
    let top = f64::from(order).max(z) + 12.0 * z.cbrt() + 25.0;
    let m = top.ceil() as usize;
    m + m % 2
}

const RESCALE_ABOVE: f64 = 1e250;

/// Miller's algorithm normalised by `J_0 + 2 J_2 + 2 J_4 + ... = 1`.
fn miller(nu: u32, z: f64) -> f64 {
    let start = miller_start(nu, z);
    let two_over_z = 2.0 / z;
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        if k == nu as usize {
            wanted = cur;
        }
        let prev = k as f64 * two_over_z * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
            wanted /= RESCALE_ABOVE;
        }
    }
    if nu == 0 {
        wanted = cur;
    }
    norm += cur;
    wanted / norm
}

/// Fills `out[k] = J_k(z)` for `0 ≤ k < out.len()`, `z ≥ 0`.
///
/// Forward recurrence from `J_0, J_1` when every order is below `z` (the
/// stable direction there), one normalised backward sweep otherwise.
pub fn bessel_j_orders(z: f64, out: &mut [f64]) {
    let Some(last) = out.len().checked_sub(1) else {
        return;
    };
    if z == 0.0 {
        out.fill(0.0);
        out[0] = 1.0;
        return;
    }
    if z > last as f64 + 1.0 {
        out[0] = j_nonneg(0, z);
        if last >= 1 {
            out[1] = j_nonneg(1, z);
        }
        let two_over_z = 2.0 / z;
        for k in 1..last {
            out[k + 1] = k as f64 * two_over_z * out[k] - out[k - 1];
        }
        return;
    }
    let start = miller_start(last as u32, z);
    let two_over_z = 2.0 / z;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    out.fill(0.0);
    for k in (1..=start).rev() {
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        if k <= last {
            out[k] = cur;
        }
        let prev = k as f64 * two_over_z * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            next /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
            for v in out.iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
}
