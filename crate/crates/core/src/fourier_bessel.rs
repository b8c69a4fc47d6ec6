//! Fourier–Bessel expansions `f_k = Σ_{n=1}^{N} c_n J_ν(j_{0,n} k/N)`, `k = 1..N`.
//!
//! Writing `j_{0,n} = (n - 1/4)π + b_n` with small `b_n`, the Neumann
//! addition formula followed by a Taylor expansion of `J_s(r_k b_n)` gives
//!
//! `J_ν(r j_0ᵀ) ≈ Σ_{s=-K+1}^{K-1} Σ_{t<T} (-1)^t 2^{-2t-s}/(t!(t+s)!) D_r^{2t+s} J_{ν-s}(r ω̃ᵀ) D_b^{2t+s}`,
//!
//! a sum of Schlömilch matrices with shift `γ = -1/4`. Grouping terms by
//! `u = 2t + s` leaves `2T + K - 2` Schlömilch evaluations, each with a
//! combination of orders. The first `⌊max(p_K, q_T)⌋` columns, where the
//! truncations are not yet accurate, are summed directly.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use crate::bessel::{bessel_roots_j0, BesselRootsTable};
use crate::schlomilch::{select_params_for_orders, support, EvalStats, OrderMix, Rows, SchlomilchParams, SchlomilchPlan};
use crate::parallel::map_indexed;
use crate::trig::JointTrigPlan;
use crate::{check_eps, Error, KahanSum, Result, Scalar, MIN_EPS};

/// Cutoffs beyond which the truncations are allowed.
const CUTOFF_LIMIT: f64 = 30.0;

/// Truncation orders of the Neumann (`K`) and Taylor (`T`) sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeumannParams {
    pub k: usize,
    pub t: usize,
    /// `p_K(ε)`: columns `n ≥ p_K` tolerate the `K`-term Neumann truncation.
    pub p_cut: f64,
    /// `q_T(ε)`: columns `n ≥ q_T` tolerate the `T`-term Taylor truncation.
    pub q_cut: f64,
    /// `⌊max(p_K, q_T)⌋`, the number of leading columns summed directly.
    pub n_split: usize,
}

impl NeumannParams {
    /// `2T + K - 2`, the number of Schlömilch evaluations after grouping.
    pub fn schlomilch_terms(&self) -> usize {
        2 * self.t + self.k - 2
    }
}

/// `p_K(ε) = (e/(16π)) (5.2/ε)^{1/K} + 1/4`.
pub fn p_cutoff(k: usize, eps: f64) -> f64 {
    E / (16.0 * PI) * (5.2 / eps).powf(1.0 / k as f64) + 0.25
}

/// `q_T(ε) = ε^{-1/(2T)} / (16π (T!)^{1/T}) + 1/4`.
pub fn q_cutoff(t: usize, eps: f64) -> f64 {
    let log_fact: f64 = (2..=t).map(|i| (i as f64).ln()).sum();
    eps.powf(-0.5 / t as f64) / (16.0 * PI * (log_fact / t as f64).exp()) + 0.25
}

/// Smallest `K` and `T` with `margin · p_K(ε) ≤ 30` and `margin · q_T(ε) ≤ 30`.
pub(crate) fn select_with_margin(eps: f64, margin: f64) -> Result<NeumannParams> {
    check_eps(eps)?;
    let k = (1..).find(|&k| margin * p_cutoff(k, eps) <= CUTOFF_LIMIT).unwrap();
    let t = (1..).find(|&t| margin * q_cutoff(t, eps) <= CUTOFF_LIMIT).unwrap();
    let p_cut = p_cutoff(k, eps);
    let q_cut = q_cutoff(t, eps);
    Ok(NeumannParams {
        k,
        t,
        p_cut,
        q_cut,
        n_split: p_cut.max(q_cut).floor() as usize,
    })
}

/// `K`, `T` and the column split for working accuracy `eps`.
pub fn select_neumann_params(eps: f64) -> Result<NeumannParams> {
    select_with_margin(eps, 1.0)
}

/// The combination of orders multiplying `D_r^u (·) D_b^u` after grouping by
/// `u = 2t + s`, for each base order `(ν_j, w_j)`:
/// `Σ''_t (-1)^t 2^{-u}/(t!(u-t)!) [J_{ν-s} + (-1)^s J_{ν+s}]`, `s = u - 2t`,
/// where the term with `s = 0` is halved.
pub fn grouped_orders(base: &[(i32, f64)], u: usize, params: &NeumannParams) -> Vec<(i32, f64)> {
    let (k, t_max) = (params.k as i64, params.t as i64);
    let u_i = u as i64;
    let lo = ((u_i - k + 1) as f64 / 2.0).ceil().max(0.0) as i64;
    let hi = (u_i / 2).min(t_max - 1);
    let mut out = Vec::new();
    for t in lo..=hi {
        let s = u_i - 2 * t;
        let mut kappa = 2f64.powi(-(u as i32)) / (factorial(t as u32) * factorial((u_i - t) as u32));
        if t % 2 == 1 {
            kappa = -kappa;
        }
        if s == 0 {
            kappa *= 0.5;
        }
        let parity = if s % 2 == 0 { 1.0 } else { -1.0 };
        for &(nu, w) in base {
            out.push((nu - s as i32, kappa * w));
            out.push((nu + s as i32, kappa * parity * w));
        }
    }
    out
}

fn factorial(n: u32) -> f64 {
    (2..=n).map(f64::from).product()
}

/// Working accuracy of each inner Schlömilch evaluation: the budget split
/// evenly across `terms`, but never below `2^-52`.
pub(crate) fn split_eps(eps: f64, terms: usize) -> f64 {
    (eps / terms.max(1) as f64).max(MIN_EPS)
}

/// Schlömilch parameters shared by every grouped term of the expansions
/// with the given base order combinations, so that all terms use one
/// partition of the matrix.
pub(crate) fn shared_params(
    bases: &[Vec<(i32, f64)>],
    n: usize,
    schlomilch_eps: f64,
    neumann: &NeumannParams,
) -> Result<SchlomilchParams> {
    let mut orders: Vec<u32> = Vec::new();
    for base in bases {
        for u in 0..neumann.schlomilch_terms() {
            orders.extend(OrderMix::new(grouped_orders(base, u, neumann)).orders());
        }
    }
    orders.sort_unstable();
    orders.dedup();
    select_params_for_orders(&orders, n, schlomilch_eps, -0.25)
}

/// A prepared Fourier–Bessel evaluator.
///
/// All grouped terms share one partition. Entries left of the partition's
/// evaluation boundary, and the first `n_split` columns, are summed directly
/// from `J_ν(j_{0,n} k/N)` itself: there the truncated expansion agrees with
/// the exact entry to working accuracy, so one direct sum replaces the
/// `2T + K - 2` per-term ones. The asymptotic blocks are applied term by term.
#[derive(Debug, Clone)]
pub struct FourierBesselPlan {
    n: usize,
    eps: f64,
    base: OrderMix,
    neumann: NeumannParams,
    roots: Arc<BesselRootsTable>,
    terms: Vec<SchlomilchPlan>,
    threads: usize,
}

impl FourierBesselPlan {
    /// Plan for order `nu`, size `n` and working accuracy `eps`.
    pub fn new(nu: i32, n: usize, eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { min: 1, got: 0 });
        }
        let neumann = select_neumann_params(eps)?;
        let inner = split_eps(eps, neumann.schlomilch_terms());
        let base = vec![(nu, 1.0)];
        let params = shared_params(std::slice::from_ref(&base), n, inner, &neumann)?;
        Self::build(&base, eps, neumann, Arc::new(bessel_roots_j0(n)?), params, None)
    }

    /// Plan for the combination `Σ_j w_j J_{ν_j}` of base orders, with
    /// explicit truncation orders and Schlömilch parameters (which fix the
    /// size). `roots` must hold at least as many roots as the last nonzero
    /// coefficient index.
    pub(crate) fn build(
        base: &[(i32, f64)],
        eps: f64,
        neumann: NeumannParams,
        roots: Arc<BesselRootsTable>,
        params: SchlomilchParams,
        fft: Option<&JointTrigPlan>,
    ) -> Result<Self> {
        let mut terms: Vec<SchlomilchPlan> = Vec::with_capacity(neumann.schlomilch_terms());
        for u in 0..neumann.schlomilch_terms() {
            let shared = fft.or_else(|| terms.first().and_then(|t| t.fft()));
            let plan = SchlomilchPlan::with_params(params, &grouped_orders(base, u, &neumann), shared)?;
            terms.push(plan);
        }
        Ok(Self {
            n: params.n,
            eps,
            base: OrderMix::new(base.iter().copied()),
            neumann,
            roots,
            terms,
            threads: 1,
        })
    }

    /// Evaluates the grouped terms on up to `threads` threads. The result
    /// does not depend on the thread count.
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

    pub fn neumann(&self) -> &NeumannParams {
        &self.neumann
    }

    pub fn roots(&self) -> &BesselRootsTable {
        &self.roots
    }

    /// Parameters of the inner Schlömilch evaluations.
    pub fn schlomilch_params(&self) -> &SchlomilchParams {
        self.terms[0].params()
    }

    /// Number of Schlömilch evaluations per application.
    pub fn schlomilch_evaluations(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn fft(&self) -> Option<&JointTrigPlan> {
        self.terms[0].fft()
    }

    /// Columns `1..direct_end(k)` of row `k` are summed directly.
    pub(crate) fn direct_end(&self, k: usize) -> usize {
        (self.neumann.n_split.min(self.n) + 1).max(self.terms[0].partition().eval_end(k))
    }

    pub fn apply<T: Scalar>(&self, c: &[T]) -> Result<Vec<T>> {
        self.apply_with_stats(c, Rows::All).map(|(f, _)| f)
    }

    pub fn apply_rows<T: Scalar>(&self, c: &[T], rows: Rows) -> Result<Vec<T>> {
        self.apply_with_stats(c, rows).map(|(f, _)| f)
    }

    pub fn apply_with_stats<T: Scalar>(&self, c: &[T], rows: Rows) -> Result<(Vec<T>, EvalStats)> {
        let n = self.n;
        if c.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: c.len() });
        }
        let mut stats = EvalStats::default();
        let Some(range) = support(c) else {
            return Ok((vec![T::ZERO; n], stats));
        };
        if range.end - 1 > self.roots.n_max() {
            return Err(Error::InvalidSize {
                min: range.end - 1,
                got: self.roots.n_max(),
            });
        }
        let roots = self.roots.roots();
        let nf = n as f64;
        let mut out = vec![T::ZERO; n];
        let mut scratch = vec![0.0; self.base.max_order() as usize + 1];
        for k in rows.iter(n) {
            let stop = self.direct_end(k).min(range.end);
            let mut acc = KahanSum::new();
            for col in range.start..stop {
                let v = c[col - 1];
                if !v.is_zero() {
                    acc.add(v * self.base.eval(k as f64 * roots[col - 1] / nf, &mut scratch));
                    stats.bessel_evals += 1;
                }
            }
            out[k - 1] = acc.value();
        }

        let mut x = c.to_vec();
        x[..self.neumann.n_split.min(n)].fill(T::ZERO);
        let asy = self.add_asymptotic(&x, rows, &mut out);
        stats.blocks = asy.blocks;
        stats.transforms = asy.transforms;
        Ok((out, stats))
    }

    /// Adds `Σ_u D_r^u A_u D_b^u x` to `out`, where `A_u` is the asymptotic
    /// part of the `u`-th grouped Schlömilch matrix. `x` must vanish on the
    /// first `n_split` entries.
    pub(crate) fn add_asymptotic<T: Scalar>(&self, x: &[T], rows: Rows, out: &mut [T]) -> EvalStats {
        let mut stats = EvalStats::default();
        let Some(range) = support(x) else {
            return stats;
        };
        let n = self.n;
        let b = self.roots.perturbations();
        let parts = map_indexed(self.threads, self.terms.len(), |u| {
            let mut scaled = x.to_vec();
            for _ in 0..u {
                for col in range.clone() {
                    scaled[col - 1] = scaled[col - 1] * b[col - 1];
                }
            }
            let mut y = vec![T::ZERO; n];
            let s = self.terms[u].apply_asymptotic(&scaled, range.clone(), rows, &mut y);
            (y, s)
        });
        let mut row_pow = vec![1.0; n + 1];
        for (u, (y, s)) in parts.into_iter().enumerate() {
            if u > 0 {
                for (k, p) in row_pow.iter_mut().enumerate() {
                    *p *= k as f64 / n as f64;
                }
            }
            stats.blocks += s.blocks;
            stats.transforms += s.transforms;
            for k in rows.iter(n) {
                out[k - 1] += y[k - 1] * row_pow[k];
            }
        }
        stats
    }
}

/// Compensated sums `Σ_{n ∈ cols} c_n J_mix(j_{0,n} k/N)` for the selected rows.
fn direct_columns<T: Scalar>(
    mix: &OrderMix,
    c: &[T],
    roots: &[f64],
    n: usize,
    cols: std::ops::Range<usize>,
    rows: Rows,
) -> (Vec<T>, usize) {
    let mut out = vec![T::ZERO; n];
    let mut scratch = vec![0.0; mix.max_order() as usize + 1];
    let mut count = 0;
    let nf = n as f64;
    let cols: Vec<usize> = cols.filter(|&col| !c[col - 1].is_zero()).collect();
    if cols.is_empty() {
        return (out, 0);
    }
    for k in rows.iter(n) {
        let mut acc = KahanSum::new();
        for &col in &cols {
            acc.add(c[col - 1] * mix.eval(k as f64 * roots[col - 1] / nf, &mut scratch));
        }
        count += cols.len();
        out[k - 1] = acc.value();
    }
    (out, count)
}

/// `O(N^2)` reference: `f_k = Σ_n c_n J_ν(j_{0,n} k/N)` with compensated sums.
pub fn fourier_bessel_direct<T: Scalar>(nu: i32, c: &[T]) -> Result<Vec<T>> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let roots = bessel_roots_j0(n)?;
    Ok(direct_columns(&OrderMix::new([(nu, 1.0)]), c, roots.roots(), n, 1..n + 1, Rows::All).0)
}

/// Fast evaluation at working accuracy `eps`.
pub fn fourier_bessel_eval<T: Scalar>(nu: i32, c: &[T], eps: f64) -> Result<Vec<T>> {
    if c.is_empty() {
        check_eps(eps)?;
        return Ok(Vec::new());
    }
    FourierBesselPlan::new(nu, c.len(), eps)?.apply(c)
}

/// The grouped Neumann–Taylor sum alone, for coefficients that vanish on the
/// first `params.n_split` entries.
pub fn neumann_matvec<T: Scalar>(
    nu: i32,
    c: &[T],
    params: &NeumannParams,
    schlomilch_eps: f64,
) -> Result<Vec<T>> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let base = vec![(nu, 1.0)];
    let shared = shared_params(std::slice::from_ref(&base), n, schlomilch_eps, params)?;
    let plan = FourierBesselPlan::build(&base, schlomilch_eps, *params, Arc::new(bessel_roots_j0(n)?), shared, None)?;
    let roots = plan.roots.perturbations();
    let mut out = vec![T::ZERO; n];
    let mut x = c.to_vec();
    let mut row_pow = vec![1.0; n + 1];
    for (u, term) in plan.terms.iter().enumerate() {
        if u > 0 {
            for (v, b) in x.iter_mut().zip(roots) {
                *v = *v * *b;
            }
            for (k, p) in row_pow.iter_mut().enumerate() {
                *p *= k as f64 / n as f64;
            }
        }
        let y = term.apply(&x)?;
        for k in 1..=n {
            out[k - 1] += y[k - 1] * row_pow[k];
        }
    }
    Ok(out)
}

/// The same truncated sum without grouping by `u`:
/// `Σ'_{s=0}^{K-1} Σ_{t<T} (-1)^t 2^{-2t-s}/(t!(t+s)!) D_r^{2t+s} [J_{ν-s} + (-1)^s J_{ν+s}] D_b^{2t+s}`
/// with one Schlömilch evaluation per order, `(2K - 1) T` in all.
pub fn neumann_matvec_ungrouped<T: Scalar>(
    nu: i32,
    c: &[T],
    params: &NeumannParams,
    schlomilch_eps: f64,
) -> Result<Vec<T>> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let roots = bessel_roots_j0(n)?;
    let b = roots.perturbations();
    let mut out = vec![T::ZERO; n];
    for s in 0..params.k as i32 {
        for t in 0..params.t as i32 {
            let power = 2 * t + s;
            let mut kappa = 2f64.powi(-power) / (factorial(t as u32) * factorial((t + s) as u32));
            if t % 2 == 1 {
                kappa = -kappa;
            }
            let parity = if s % 2 == 0 { 1.0 } else { -1.0 };
            let pieces: Vec<(i32, f64)> = if s == 0 {
                vec![(nu, kappa)]
            } else {
                vec![(nu - s, kappa), (nu + s, kappa * parity)]
            };
            let x: Vec<T> = c.iter().zip(b).map(|(&v, &bn)| v * bn.powi(power)).collect();
            for (order, weight) in pieces {
                let plan = SchlomilchPlan::with_orders(&[(order, 1.0)], n, schlomilch_eps, -0.25, false)?;
                let y = plan.apply(&x)?;
                for k in 1..=n {
                    out[k - 1] += y[k - 1] * (weight * (k as f64 / n as f64).powi(power));
                }
            }
        }
    }
    Ok(out)
}
