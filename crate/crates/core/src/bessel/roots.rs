//! Positive roots of `J_0`, viewed as a perturbation of the grid `(n - 1/4)π`.

use std::f64::consts::PI;

use super::jn;
use crate::{Error, Result};

const NEWTON_MAX_ITERS: usize = 20;
const RESIDUAL_TOL: f64 = 1e-13;
/// Above this argument the root offset is refined through the phase of
/// Hankel's expansion, which delivers `b_n` to full relative precision.
const PHASE_FROM: f64 = 20.0;
const PHASE_TERMS: usize = 16;

/// The roots `j_{0,1} < ... < j_{0,n_max}` together with their offsets
/// `b_n = j_{0,n} - (n - 1/4)π` from the equally spaced grid.
#[derive(Debug, Clone)]
pub struct BesselRootsTable {
    roots: Vec<f64>,
    perturbations: Vec<f64>,
}

impl BesselRootsTable {
    /// Number of stored roots.
    pub fn n_max(&self) -> usize {
        self.roots.len()
    }

    /// `j_{0,1..n_max}` (zero-based slice).
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// `b_n` for `n = 1..n_max` (zero-based slice).
    pub fn perturbations(&self) -> &[f64] {
        &self.perturbations
    }

    /// `j_{0,n}` for one-based `n`.
    pub fn root(&self, n: usize) -> f64 {
        self.roots[n - 1]
    }

    /// `b_n` for one-based `n`.
    pub fn perturbation(&self, n: usize) -> f64 {
        self.perturbations[n - 1]
    }

    /// `e_{k,N} = j_{0,k}/j_{0,N+1} - (k - 1/4)/(N + 3/4)`, evaluated without
    /// cancellation. Needs `N + 1 ≤ n_max`.
    pub fn ratio_perturbation(&self, k: usize, n: usize) -> f64 {
        let shifted = n as f64 + 0.75;
        let b_last = self.perturbation(n + 1);
        (self.perturbation(k) * shifted - b_last * (k as f64 - 0.25))
            / (self.root(n + 1) * shifted)
    }
}

/// First `count` positive roots of `J_0` by Newton's method from `(n - 1/4)π`.
pub fn bessel_roots_j0(count: usize) -> Result<BesselRootsTable> {
    if count == 0 {
        return Err(Error::InvalidSize { min: 1, got: 0 });
    }
    let mut roots = Vec::with_capacity(count);
    let mut perturbations = Vec::with_capacity(count);
    for n in 1..=count {
        let grid = (n as f64 - 0.25) * PI;
        let mut j = grid;
        for _ in 0..NEWTON_MAX_ITERS {
            let step = jn(0, j) / jn(1, j);
            j += step;
            if step.abs() <= 1e-16 * j {
                break;
            }
        }
        let residual = jn(0, j).abs();
        if residual.is_nan() || residual > RESIDUAL_TOL {
            return Err(Error::RootNotConverged { index: n, residual });
        }
        let b = if grid >= PHASE_FROM {
            phase_offset(grid, j - grid)
        } else {
            j - grid
        };
        roots.push(grid + b);
        perturbations.push(b);
    }
    Ok(BesselRootsTable {
        roots,
        perturbations,
    })
}

/// Solves `tan b = -Q(ω+b)/P(ω+b)` by fixed-point iteration, where `P` and
/// `Q` are the cosine and sine parts of Hankel's expansion of `J_0`.
fn phase_offset(grid: f64, mut b: f64) -> f64 {
    for _ in 0..8 {
        let z = grid + b;
        let (p, q) = hankel_pq(z);
        let next = (-q / p).atan();
        if next == b {
            break;
        }
        b = next;
    }
    b
}

fn hankel_pq(z: f64) -> (f64, f64) {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    for k in 1..2 * PHASE_TERMS {
        let odd = (2 * k - 1) as f64;
        t *= -(odd * odd) / (8.0 * k as f64 * z);
        let signed = if (k / 2) % 2 == 0 { t } else { -t };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if t.abs() < 1e-22 {
            break;
        }
    }
    (p, q)
}
