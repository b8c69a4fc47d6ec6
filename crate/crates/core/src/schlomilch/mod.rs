//! Schlömilch expansions `f_k = Σ_{n=1}^{N} c_n J_ν((n+γ)π k/N)`, `k = 1..N`.
//!
//! Entries of the matrix whose argument exceeds `s_{ν,M}(ε)` are handled
//! through Hankel's expansion, which turns each rectangular block into `2M`
//! diagonally scaled DCT-I/DST-I products. The remaining entries are summed
//! directly. [`schlomilch_single_partition`] uses one block and costs
//! `O(N^{3/2})`; [`schlomilch_fast`] refines the partition recursively and
//! costs `O(N (log N)^2 / log log N)`.

mod params;
mod partition;

use std::f64::consts::{FRAC_2_PI, PI};

pub use params::{hankel_pairs, partition_levels, refinement_ratio, select_params, SchlomilchParams};
pub(crate) use params::{check_gamma, select_params_for_orders};
pub use partition::{AsyBlock, PartitionScheme};

use crate::bessel::{bessel_j_orders, jn, phase_shift, AsymptoticCoeffs};
use crate::trig::JointTrigPlan;
use crate::{check_eps, Error, KahanSum, Result, Scalar};

/// Which outputs `f_k` to compute. Rows that are not selected are left at
/// zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rows {
    #[default]
    All,
    /// `k = first, first + step, first + 2 step, ...`
    Strided { first: usize, step: usize },
}

impl Rows {
    pub(crate) fn iter(self, n: usize) -> impl Iterator<Item = usize> {
        let (first, step) = match self {
            Rows::All => (1, 1),
            Rows::Strided { first, step } => (first.max(1), step.max(1)),
        };
        (first..=n).step_by(step)
    }

    fn within(self, range: std::ops::Range<usize>) -> impl Iterator<Item = usize> {
        let (first, step) = match self {
            Rows::All => (1, 1),
            Rows::Strided { first, step } => (first.max(1), step.max(1)),
        };
        let start = if range.start <= first {
            first
        } else {
            first + (range.start - first).div_ceil(step) * step
        };
        (start..range.end).step_by(step)
    }
}

/// Work done by one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    /// Asymptotic blocks applied.
    pub blocks: usize,
    /// DCT-I/DST-I pair applications (`2M` per block).
    pub transforms: usize,
    /// Matrix entries summed directly.
    pub bessel_evals: usize,
}

/// A weighted combination `Σ_j w_j J_{ν_j}` of non-negative integer orders.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct OrderMix {
    terms: Vec<(u32, f64)>,
}

impl OrderMix {
    pub(crate) fn single(nu: u32) -> Self {
        Self {
            terms: vec![(nu, 1.0)],
        }
    }

    /// Folds negative orders through `J_{-m} = (-1)^m J_m` and merges equal
    /// orders.
    pub(crate) fn new(terms: impl IntoIterator<Item = (i32, f64)>) -> Self {
        let mut merged: Vec<(u32, f64)> = Vec::new();
        for (nu, w) in terms {
            let order = nu.unsigned_abs();
            let w = if nu < 0 && order % 2 == 1 { -w } else { w };
            match merged.iter_mut().find(|(o, _)| *o == order) {
                Some((_, acc)) => *acc += w,
                None => merged.push((order, w)),
            }
        }
        merged.retain(|&(_, w)| w != 0.0);
        merged.sort_by_key(|&(o, _)| o);
        Self { terms: merged }
    }

    pub(crate) fn orders(&self) -> Vec<u32> {
        self.terms.iter().map(|&(o, _)| o).collect()
    }

    pub(crate) fn max_order(&self) -> u32 {
        self.terms.iter().map(|&(o, _)| o).max().unwrap_or(0)
    }

    #[inline]
    pub(crate) fn eval(&self, x: f64, scratch: &mut [f64]) -> f64 {
        if let [(nu, w)] = self.terms[..] {
            return w * jn(nu as i32, x);
        }
        bessel_j_orders(x, scratch);
        self.terms.iter().map(|&(o, w)| w * scratch[o as usize]).sum()
    }
}

/// Per-term mixing constants: `√(2/π) (-1)^m Σ_j w_j a_i(ν_j) (cos φ_j, sin φ_j)`
/// for `i = 2m` and `i = 2m+1`.
#[derive(Debug, Clone, Copy)]
struct TermWeights {
    even: (f64, f64),
    odd: (f64, f64),
}

fn term_weights(mix: &OrderMix, pairs: usize) -> Vec<TermWeights> {
    let tables: Vec<(AsymptoticCoeffs, (f64, f64), f64)> = mix
        .terms
        .iter()
        .map(|&(nu, w)| (AsymptoticCoeffs::new(nu as i32, 2 * pairs), phase_shift(nu as i32), w))
        .collect();
    let scale = FRAC_2_PI.sqrt();
    (0..pairs)
        .map(|m| {
            let sign = if m % 2 == 0 { scale } else { -scale };
            let mut even = (0.0, 0.0);
            let mut odd = (0.0, 0.0);
            for (coeffs, (cphi, sphi), w) in &tables {
                let a = coeffs.values();
                even.0 += sign * w * a[2 * m] * cphi;
                even.1 += sign * w * a[2 * m] * sphi;
                odd.0 += sign * w * a[2 * m + 1] * cphi;
                odd.1 += sign * w * a[2 * m + 1] * sphi;
            }
            TermWeights { even, odd }
        })
        .collect()
}

/// A prepared evaluator for a fixed size, shift, accuracy and order mix.
#[derive(Clone)]
pub struct SchlomilchPlan {
    params: SchlomilchParams,
    partition: PartitionScheme,
    mix: OrderMix,
    weights: Vec<TermWeights>,
    fft: Option<JointTrigPlan>,
}

impl std::fmt::Debug for SchlomilchPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SchlomilchPlan")
            .field("params", &self.params)
            .field("blocks", &self.partition.blocks().len())
            .finish()
    }
}

impl SchlomilchPlan {
    /// Plan for order `params.nu` with the given (possibly modified) parameters.
    pub fn new(params: SchlomilchParams) -> Result<Self> {
        Self::build(params, OrderMix::single(params.nu))
    }

    /// Plan with parameters from [`select_params`].
    pub fn with_accuracy(nu: u32, n: usize, eps: f64, gamma: f64) -> Result<Self> {
        Self::new(select_params(nu, n, eps, gamma)?)
    }

    /// Plan for `f_k = Σ_n c_n Σ_j w_j J_{ν_j}((n+γ)π k/N)`. Negative orders
    /// are allowed.
    pub fn with_orders(
        orders: &[(i32, f64)],
        n: usize,
        eps: f64,
        gamma: f64,
        single_partition: bool,
    ) -> Result<Self> {
        let mix = OrderMix::new(orders.iter().copied());
        let mut params = select_params_for_orders(&mix.orders(), n, eps, gamma)?;
        if single_partition {
            params = params.single_partition();
        }
        Self::build(params, mix)
    }

    /// Plan for an order combination with externally chosen parameters,
    /// reusing `fft` when it is given. `params.s` must cover every order.
    pub(crate) fn with_params(
        params: SchlomilchParams,
        orders: &[(i32, f64)],
        fft: Option<&JointTrigPlan>,
    ) -> Result<Self> {
        let mix = OrderMix::new(orders.iter().copied());
        Self::build_with(params, mix, fft)
    }

    fn build(params: SchlomilchParams, mix: OrderMix) -> Result<Self> {
        Self::build_with(params, mix, None)
    }

    fn build_with(params: SchlomilchParams, mix: OrderMix, fft: Option<&JointTrigPlan>) -> Result<Self> {
        check_eps(params.eps)?;
        check_gamma(params.gamma)?;
        if params.n == 0 {
            return Err(Error::InvalidSize { min: 1, got: 0 });
        }
        let partition = PartitionScheme::new(&params);
        let fft = match fft {
            _ if partition.blocks().is_empty() => None,
            Some(f) if f.len() == params.n => Some(f.clone()),
            _ => Some(JointTrigPlan::new(params.n)?),
        };
        Ok(Self {
            weights: term_weights(&mix, params.m),
            params,
            partition,
            mix,
            fft,
        })
    }

    pub fn params(&self) -> &SchlomilchParams {
        &self.params
    }

    pub fn partition(&self) -> &PartitionScheme {
        &self.partition
    }

    pub fn apply<T: Scalar>(&self, c: &[T]) -> Result<Vec<T>> {
        self.apply_with_stats(c, Rows::All).map(|(f, _)| f)
    }

    pub fn apply_rows<T: Scalar>(&self, c: &[T], rows: Rows) -> Result<Vec<T>> {
        self.apply_with_stats(c, rows).map(|(f, _)| f)
    }

    pub fn apply_with_stats<T: Scalar>(&self, c: &[T], rows: Rows) -> Result<(Vec<T>, EvalStats)> {
        let n = self.params.n;
        if c.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: c.len(),
            });
        }
        let mut out = vec![T::ZERO; n];
        let mut stats = EvalStats::default();
        let Some(support) = support(c) else {
            return Ok((out, stats));
        };
        let omega = frequencies(n, self.params.gamma);
        stats.bessel_evals = direct_rows(
            &self.mix,
            c,
            &omega,
            support.clone(),
            rows,
            |k| self.partition.eval_end(k),
            &mut out,
        );
        let asy = self.apply_asymptotic(c, support, rows, &mut out);
        stats.blocks = asy.blocks;
        stats.transforms = asy.transforms;
        Ok((out, stats))
    }

    /// The FFT plan shared by all blocks, if any block exists.
    pub(crate) fn fft(&self) -> Option<&JointTrigPlan> {
        self.fft.as_ref()
    }

    /// Adds only the asymptotic-block part of the product to `out`; the
    /// entries left of `partition().eval_end(k)` are not touched.
    pub(crate) fn apply_asymptotic<T: Scalar>(
        &self,
        c: &[T],
        support: std::ops::Range<usize>,
        rows: Rows,
        out: &mut [T],
    ) -> EvalStats {
        let mut stats = EvalStats::default();
        let omega = frequencies(self.params.n, self.params.gamma);
        if let Some(fft) = &self.fft {
            let blocks: Vec<&AsyBlock> = self
                .partition
                .blocks()
                .iter()
                .filter(|b| {
                    b.cols.start < support.end
                        && support.start < b.cols.end
                        && rows.within(b.rows.clone()).next().is_some()
                })
                .collect();
            if !blocks.is_empty() {
                self.asymptotic(fft, &blocks, c, &omega, rows, out);
                stats.blocks = blocks.len();
                stats.transforms = 2 * self.params.m * blocks.len();
            }
        }
        stats
    }

    /// Adds the Hankel-expansion contribution of each block to `out`.
    fn asymptotic<T: Scalar>(
        &self,
        fft: &JointTrigPlan,
        blocks: &[&AsyBlock],
        c: &[T],
        omega: &[f64],
        rows: Rows,
        out: &mut [T],
    ) {
        let n = self.params.n;
        let nf = n as f64;
        // running powers ω_n^{-(2m+1/2)} and r_k^{-(2m+1/2)}
        let mut col_pow: Vec<f64> = omega.iter().map(|w| w.powf(-0.5)).collect();
        let col_step: Vec<f64> = omega.iter().map(|w| 1.0 / (w * w)).collect();
        let mut row_pow: Vec<f64> = (0..=n).map(|k| (k as f64 / nf).powf(-0.5)).collect();
        let row_step: Vec<f64> = (0..=n).map(|k| (nf / k as f64).powi(2)).collect();
        let rotation: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let theta = self.params.gamma * k as f64 * PI / nf;
                (theta.cos(), theta.sin())
            })
            .collect();
        let mut work = fft.workspace();
        let mut second = if T::IS_REAL { None } else { Some(fft.workspace()) };

        for tw in &self.weights {
            for block in blocks {
                let cols = block.cols.start.max(1)..block.cols.end.min(n + 1);
                fft.clear(&mut work);
                if let Some(w2) = second.as_mut() {
                    fft.clear(w2);
                }
                for col in cols {
                    let v = c[col - 1];
                    if v.is_zero() {
                        continue;
                    }
                    let ye = v * col_pow[col];
                    let yo = ye * (1.0 / omega[col]);
                    match second.as_mut() {
                        None => fft.set_pair(&mut work, col, ye.to_complex().re, yo.to_complex().re),
                        Some(w2) => {
                            fft.set(&mut work, col, ye);
                            fft.set(w2, col, yo);
                        }
                    }
                }
                fft.run(&mut work);
                if let Some(w2) = second.as_mut() {
                    fft.run(w2);
                }
                for k in rows.within(block.rows.clone()) {
                    let (ct, st) = rotation[k];
                    let ve = tw.even.0 * ct + tw.even.1 * st;
                    let we = tw.even.1 * ct - tw.even.0 * st;
                    let vo = tw.odd.0 * ct + tw.odd.1 * st;
                    let wo = tw.odd.1 * ct - tw.odd.0 * st;
                    let re = row_pow[k];
                    let ro = re * nf / k as f64;
                    let (ce, se, co, so): (T, T, T, T) = match second.as_ref() {
                        None => {
                            let ((ce, se), (co, so)) = fft.get_pair(&work, k);
                            (real(ce), real(se), real(co), real(so))
                        }
                        Some(w2) => {
                            let (ce, se) = fft.get(&work, k);
                            let (co, so) = fft.get(w2, k);
                            (ce, se, co, so)
                        }
                    };
                    out[k - 1] += (ce * ve + se * we) * re - (so * vo - co * wo) * ro;
                }
            }
            for (p, s) in col_pow.iter_mut().zip(&col_step) {
                *p *= s;
            }
            for (p, s) in row_pow.iter_mut().zip(&row_step) {
                *p *= s;
            }
        }
    }
}

#[inline]
fn real<T: Scalar>(x: f64) -> T {
    T::from_complex(num_complex::Complex64::new(x, 0.0))
}

/// `ω_n = (n+γ)π` for `n = 0..=N` (index 0 unused).
fn frequencies(n: usize, gamma: f64) -> Vec<f64> {
    (0..=n).map(|i| (i as f64 + gamma) * PI).collect()
}

#[inline]
fn argument(k: usize, omega: f64, n: f64) -> f64 {
    k as f64 * omega / n
}

/// 1-based range `[first nonzero, last nonzero]` of `c`.
pub(crate) fn support<T: Scalar>(c: &[T]) -> Option<std::ops::Range<usize>> {
    let first = c.iter().position(|v| !v.is_zero())?;
    let last = c.iter().rposition(|v| !v.is_zero())?;
    Some(first + 1..last + 2)
}

/// Compensated direct sums over columns `support ∩ [1, end(k))`; returns the
/// number of entries evaluated.
fn direct_rows<T: Scalar>(
    mix: &OrderMix,
    c: &[T],
    omega: &[f64],
    support: std::ops::Range<usize>,
    rows: Rows,
    end: impl Fn(usize) -> usize,
    out: &mut [T],
) -> usize {
    let n = c.len();
    let nf = n as f64;
    let mut scratch = vec![0.0; mix.max_order() as usize + 1];
    let mut count = 0;
    for k in rows.iter(n) {
        let stop = end(k).min(support.end);
        let mut acc = KahanSum::new();
        for col in support.start..stop {
            let v = c[col - 1];
            if v.is_zero() {
                continue;
            }
            acc.add(v * mix.eval(argument(k, omega[col], nf), &mut scratch));
            count += 1;
        }
        out[k - 1] = acc.value();
    }
    count
}

/// `O(N^2)` reference: every entry summed directly with compensation.
pub fn schlomilch_direct<T: Scalar>(nu: u32, gamma: f64, c: &[T]) -> Result<Vec<T>> {
    check_gamma(gamma)?;
    let n = c.len();
    let mut out = vec![T::ZERO; n];
    if let Some(support) = support(c) {
        let omega = frequencies(n, gamma);
        direct_rows(&OrderMix::single(nu), c, &omega, support, Rows::All, |_| n + 1, &mut out);
    }
    Ok(out)
}

/// Direct summation for a weighted combination of orders.
pub fn schlomilch_direct_orders<T: Scalar>(
    orders: &[(i32, f64)],
    gamma: f64,
    c: &[T],
    rows: Rows,
) -> Result<Vec<T>> {
    check_gamma(gamma)?;
    let n = c.len();
    let mut out = vec![T::ZERO; n];
    if let Some(support) = support(c) {
        let omega = frequencies(n, gamma);
        let mix = OrderMix::new(orders.iter().copied());
        direct_rows(&mix, c, &omega, support, rows, |_| n + 1, &mut out);
    }
    Ok(out)
}

/// The `O(N^{3/2})` scheme: one asymptotic block plus direct sums.
pub fn schlomilch_single_partition<T: Scalar>(params: &SchlomilchParams, c: &[T]) -> Result<Vec<T>> {
    SchlomilchPlan::new(params.single_partition())?.apply(c)
}

/// The recursively partitioned scheme with `2P+1` asymptotic blocks.
pub fn schlomilch_fast<T: Scalar>(params: &SchlomilchParams, c: &[T]) -> Result<Vec<T>> {
    SchlomilchPlan::new(*params)?.apply(c)
}

/// Adds `Σ_{n ∈ cols} c_n J^{ASY}_{ν,M}(k(n+γ)π/N)` to `out[k-1]` for
/// `k ∈ rows`. Every entry of the block must lie past the cutoff `s`.
pub fn asy_block_apply<T: Scalar>(
    params: &SchlomilchParams,
    block: &AsyBlock,
    c: &[T],
    out: &mut [T],
) -> Result<()> {
    let n = params.n;
    for len in [c.len(), out.len()] {
        if len != n {
            return Err(Error::LengthMismatch { expected: n, got: len });
        }
    }
    if block.is_empty() {
        return Ok(());
    }
    debug_assert!(
        argument(block.rows.start, (block.cols.start as f64 + params.gamma) * PI, n as f64)
            >= params.s * (1.0 - 1e-12),
        "block {block:?} reaches below the asymptotic cutoff"
    );
    let plan = SchlomilchPlan::new(*params)?;
    let fft = JointTrigPlan::new(n)?;
    let omega = frequencies(n, params.gamma);
    plan.asymptotic(&fft, &[block], c, &omega, Rows::All, out);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_mix_folds_negative_orders() {
        let mix = OrderMix::new([(-3, 1.0), (3, 0.5), (-2, 2.0), (0, 0.0)]);
        assert_eq!(mix.terms, vec![(2, 2.0), (3, -0.5)]);
    }

    #[test]
    fn row_selection_within_range() {
        let rows = Rows::Strided { first: 3, step: 4 };
        assert_eq!(rows.within(1..20).collect::<Vec<_>>(), vec![3, 7, 11, 15, 19]);
        assert_eq!(rows.within(8..20).collect::<Vec<_>>(), vec![11, 15, 19]);
        assert_eq!(rows.within(11..12).collect::<Vec<_>>(), vec![11]);
        assert_eq!(Rows::All.within(4..7).collect::<Vec<_>>(), vec![4, 5, 6]);
    }

    #[test]
    fn support_range() {
        assert_eq!(support(&[0.0, 1.0, 0.0, 2.0, 0.0]), Some(2..5));
        assert_eq!(support::<f64>(&[0.0, 0.0]), None);
    }

    #[test]
    fn first_basis_vector_gives_first_column() {
        let n = 300;
        let mut c = vec![0.0; n];
        c[0] = 1.0;
        let params = select_params(0, n, 1e-15, 0.0).unwrap();
        let f = schlomilch_fast(&params, &c).unwrap();
        for k in 1..=n {
            assert!((f[k - 1] - jn(0, k as f64 * PI / n as f64)).abs() < 1e-14);
        }
    }
}
