//! The discrete Hankel transform of order zero,
//! `f_k = Σ_{n=1}^{N} c_n J_0(j_{0,k} j_{0,n} / j_{0,N+1})`, `k = 1..N`.
//!
//! The row points `j_{0,k}/j_{0,N+1} = r̃_k + e_{k,N}` with
//! `r̃_k = (4k - 1)/(4N + 3)` are a perturbed equally spaced grid, so the
//! Neumann–Taylor expansion used for Fourier–Bessel sums applies again on the
//! row side:
//!
//! `J_0((r̃ + e) j_0ᵀ) ≈ Σ_u D_e^u J_{mix(u)}(r̃ j_0ᵀ) D_{j_0}^u`.
//!
//! Each `J_{mix(u)}(r̃ j_0ᵀ) x` is a Fourier–Bessel evaluation of size
//! `4N + 3` on the zero-padded vector, read off at rows `4k - 1`. The first
//! `⌊1.01 max(p_K, q_T)⌋` rows are summed directly.

use std::sync::Arc;

use crate::bessel::{bessel_j, bessel_roots_j0, jn, BesselRootsTable};
use crate::fourier_bessel::{
    grouped_orders, select_with_margin, shared_params, split_eps, FourierBesselPlan, NeumannParams,
};
use crate::parallel::map_indexed;
use crate::schlomilch::{Rows, SchlomilchParams};
use crate::{check_eps, Error, KahanSum, Result, Scalar};

/// Safety factor on the row cutoffs, covering `j_{0,n}/((N + 3/4)π) ≤ 1.01`.
const ROW_MARGIN: f64 = 1.01;

/// A prepared transform of size `N`.
#[derive(Debug, Clone)]
pub struct DhtPlan {
    n: usize,
    eps: f64,
    neumann: NeumannParams,
    roots: Arc<BesselRootsTable>,
    row_split: usize,
    weights: Vec<f64>,
    /// `e_{k,N} j_{0,N+1}` for `k = 1..N`.
    row_scale: Vec<f64>,
    terms: Vec<FourierBesselPlan>,
    threads: usize,
}

impl DhtPlan {
    pub fn new(n: usize, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        if n == 0 {
            return Err(Error::InvalidSize { min: 1, got: 0 });
        }
        let neumann = select_with_margin(eps, ROW_MARGIN)?;
        let roots = Arc::new(bessel_roots_j0(n + 1)?);
        let row_split = ((ROW_MARGIN * neumann.p_cut.max(neumann.q_cut)).floor() as usize).min(n);
        let weights = roots.roots()[..n]
            .iter()
            .map(|&j| bessel_j(1, j).map(|v| 2.0 / (v * v)))
            .collect::<Result<Vec<_>>>()?;
        let last = roots.root(n + 1);
        let row_scale = (1..=n).map(|k| roots.ratio_perturbation(k, n) * last).collect();

        let terms_count = neumann.schlomilch_terms();
        let inner_eps = split_eps(eps, terms_count * terms_count);
        let padded = 4 * n + 3;
        let mut terms: Vec<FourierBesselPlan> = Vec::new();
        if row_split < n {
            let bases: Vec<Vec<(i32, f64)>> =
                (0..terms_count).map(|u| grouped_orders(&[(0, 1.0)], u, &neumann)).collect();
            let params = shared_params(&bases, padded, inner_eps, &neumann)?;
            for base in &bases {
                let fft = terms.first().and_then(|t| t.fft()).cloned();
                terms.push(FourierBesselPlan::build(base, eps, neumann, roots.clone(), params, fft.as_ref())?);
            }
        }
        Ok(Self {
            n,
            eps,
            neumann,
            roots,
            row_split,
            weights,
            row_scale,
            terms,
            threads: 1,
        })
    }

    /// Evaluates the outer terms on up to `threads` threads. The result does
    /// not depend on the thread count.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Row-side truncation orders.
    pub fn neumann(&self) -> &NeumannParams {
        &self.neumann
    }

    /// `j_{0,1..N+1}`.
    pub fn roots(&self) -> &BesselRootsTable {
        &self.roots
    }

    /// Number of leading rows summed directly.
    pub fn row_split(&self) -> usize {
        self.row_split
    }

    /// `v_n = 2 / J_1(j_{0,n})^2` for `n = 1..N` (zero-based slice).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Parameters shared by every inner Schlömilch evaluation of size
    /// `4N + 3`; `None` when all rows are summed directly.
    pub fn schlomilch_params(&self) -> Option<&SchlomilchParams> {
        self.terms.first().map(|t| t.schlomilch_params())
    }

    /// Number of Fourier–Bessel evaluations per application.
    pub fn fourier_bessel_evaluations(&self) -> usize {
        self.terms.len()
    }

    pub fn apply<T: Scalar>(&self, c: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if c.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: c.len() });
        }
        let roots = self.roots.roots();
        let mut out = direct_rows(c, &self.roots, 1..self.row_split + 1);
        if self.terms.is_empty() || c.iter().all(|v| v.is_zero()) {
            return Ok(out);
        }

        // Entries left of the shared partition boundary are summed directly
        // from the exact kernel; the rest come from the asymptotic blocks of
        // each inner Fourier–Bessel term. Columns carry (j_{0,n}/j_{0,N+1})^u
        // and rows (e_k j_{0,N+1})^u so that neither factor overflows.
        let first = &self.terms[0];
        let last = self.roots.root(n + 1);
        for k in self.row_split + 1..=n {
            let stop = first.direct_end(4 * k - 1).min(n + 1);
            let scale = roots[k - 1] / last;
            let mut acc = KahanSum::new();
            for col in 1..stop {
                let v = c[col - 1];
                if !v.is_zero() {
                    acc.add(v * jn(0, scale * roots[col - 1]));
                }
            }
            out[k - 1] = acc.value();
        }

        let padded = 4 * n + 3;
        let rows = Rows::Strided {
            first: 4 * (self.row_split + 1) - 1,
            step: 4,
        };
        let split = self.neumann.n_split.min(n);
        let parts = map_indexed(self.threads, self.terms.len(), |u| {
            let mut x = vec![T::ZERO; padded];
            x[split..n].copy_from_slice(&c[split..]);
            for _ in 0..u {
                for (v, &j) in x[split..n].iter_mut().zip(&roots[split..]) {
                    *v = *v * (j / last);
                }
            }
            let mut y = vec![T::ZERO; padded];
            self.terms[u].add_asymptotic(&x, rows, &mut y);
            y
        });
        let mut row_pow = vec![1.0; n];
        for (u, y) in parts.into_iter().enumerate() {
            if u > 0 {
                for (p, &e) in row_pow.iter_mut().zip(&self.row_scale) {
                    *p *= e;
                }
            }
            for k in self.row_split + 1..=n {
                out[k - 1] += y[4 * k - 2] * row_pow[k - 1];
            }
        }
        Ok(out)
    }
}

/// Compensated sums `Σ_n c_n J_0(j_{0,k} j_{0,n}/j_{0,N+1})` for `k ∈ rows`;
/// other entries are zero. `roots` must hold `N + 1` roots.
fn direct_rows<T: Scalar>(c: &[T], roots: &BesselRootsTable, rows: std::ops::Range<usize>) -> Vec<T> {
    let n = c.len();
    let last = roots.root(n + 1);
    let j = roots.roots();
    let cols: Vec<usize> = (0..n).filter(|&i| !c[i].is_zero()).collect();
    let mut out = vec![T::ZERO; n];
    for k in rows {
        let scale = j[k - 1] / last;
        let mut acc = KahanSum::new();
        for &i in &cols {
            acc.add(c[i] * jn(0, scale * j[i]));
        }
        out[k - 1] = acc.value();
    }
    out
}

/// Fast transform at working accuracy `eps`.
pub fn dht<T: Scalar>(plan: &DhtPlan, c: &[T]) -> Result<Vec<T>> {
    plan.apply(c)
}

/// `O(N^2)` reference with compensated sums.
pub fn dht_direct<T: Scalar>(c: &[T]) -> Result<Vec<T>> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let roots = bessel_roots_j0(n + 1)?;
    Ok(direct_rows(c, &roots, 1..n + 1))
}

/// `‖c̃ - c‖_∞` with `c̃ = j_{0,N+1}^{-2} DHT(D_v DHT(D_v c))`, the transform
/// computed at working accuracy `eps`.
pub fn dht_self_inverse_residual(n: usize, eps: f64, c: &[f64]) -> Result<f64> {
    check_eps(eps)?;
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: c.len() });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let plan = DhtPlan::new(n, eps)?;
    let weigh = |x: Vec<f64>| -> Vec<f64> { x.iter().zip(plan.weights()).map(|(a, v)| a * v).collect() };
    let once = plan.apply(&weigh(c.to_vec()))?;
    let twice = plan.apply(&weigh(once))?;
    let last = plan.roots().root(n + 1);
    let scale = 1.0 / (last * last);
    Ok(twice
        .iter()
        .zip(c)
        .map(|(t, x)| (t * scale - x).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_split_at_machine_accuracy() {
        let plan = DhtPlan::new(100, 1e-15).unwrap();
        assert_eq!(plan.row_split(), 22);
        assert_eq!(plan.fourier_bessel_evaluations(), 10);
        assert!(ROW_MARGIN * plan.neumann().p_cut.max(plan.neumann().q_cut) <= 30.0);
    }

    #[test]
    fn single_entry() {
        let plan = DhtPlan::new(1, 1e-15).unwrap();
        let f = plan.apply(&[1.0]).unwrap();
        let j = plan.roots().roots();
        let expect = bessel_j(0, j[0] * j[0] / j[1]).unwrap();
        assert!((f[0] - expect).abs() < 1e-15);
    }

    #[test]
    fn zero_input() {
        let plan = DhtPlan::new(64, 1e-8).unwrap();
        assert!(plan.apply(&[0.0; 64]).unwrap().iter().all(|&v| v == 0.0));
        assert_eq!(dht_self_inverse_residual(64, 1e-8, &[0.0; 64]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_length_mismatch() {
        let plan = DhtPlan::new(8, 1e-8).unwrap();
        assert!(matches!(plan.apply(&[1.0; 7]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn weights_grow_linearly() {
        let plan = DhtPlan::new(2000, 1e-3).unwrap();
        for (i, &v) in plan.weights().iter().enumerate().skip(1) {
            let ratio = v / (i + 1) as f64;
            assert!(v > 0.0 && (8.0..11.0).contains(&ratio), "n={} ratio={ratio}", i + 1);
        }
    }
}
