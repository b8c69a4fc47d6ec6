use std::ops::Range;

use super::SchlomilchParams;

/// A rectangle of the `N × N` matrix, as 1-based half-open index ranges,
/// on which the asymptotic expansion is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsyBlock {
    pub rows: Range<usize>,
    pub cols: Range<usize>,
}

impl AsyBlock {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() || self.cols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn contains(&self, k: usize, n: usize) -> bool {
        self.rows.contains(&k) && self.cols.contains(&n)
    }
}

/// The recursive partition of the matrix `J_ν(k(n+γ)π/N)`.
///
/// A central block `[A_0, N] × [A'_0, N]` plus, for each level
/// `p = 1..P`, a tall block `[A_p, A_{p-1}) × [B'_p, N]` and its wide mirror
/// `[B_p, N] × [A'_p, A'_{p-1})`, where `A_p = ⌈αβ^p √N⌉`,
/// `B_p = ⌈αβ^{-p} √N⌉`, and the primed column thresholds are shifted by
/// `-γ` so that every covered entry has `k(n+γ) ≥ α²N`. Entries outside all
/// blocks form the directly summed set.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionScheme {
    n: usize,
    levels: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
    row_a: Vec<usize>,
    row_b: Vec<usize>,
    col_a: Vec<usize>,
    col_b: Vec<usize>,
    blocks: Vec<AsyBlock>,
}

impl PartitionScheme {
    pub fn new(params: &SchlomilchParams) -> Self {
        let n = params.n;
        let root_n = (n as f64).sqrt();
        let threshold = |x: f64| (x.ceil().max(1.0) as usize).min(n + 1);
        let levels = params.p;
        let scaled = |p: i32| params.alpha * params.beta.powi(p) * root_n;
        let row_a: Vec<usize> = (0..=levels as i32).map(|p| threshold(scaled(p))).collect();
        let row_b: Vec<usize> = (0..=levels as i32).map(|p| threshold(scaled(-p))).collect();
        let col_a: Vec<usize> = (0..=levels as i32)
            .map(|p| threshold(scaled(p) - params.gamma))
            .collect();
        let col_b: Vec<usize> = (0..=levels as i32)
            .map(|p| threshold(scaled(-p) - params.gamma))
            .collect();

        let end = n + 1;
        let mut blocks = vec![AsyBlock {
            rows: row_a[0]..end,
            cols: col_a[0]..end,
        }];
        for p in 1..=levels {
            blocks.push(AsyBlock {
                rows: row_a[p]..row_a[p - 1],
                cols: col_b[p]..end,
            });
            blocks.push(AsyBlock {
                rows: row_b[p]..end,
                cols: col_a[p]..col_a[p - 1],
            });
        }
        blocks.retain(|b| !b.is_empty());
        Self {
            n,
            levels,
            alpha: params.alpha,
            beta: params.beta,
            gamma: params.gamma,
            row_a,
            row_b,
            col_a,
            col_b,
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Non-empty asymptotic blocks; the central one first when present.
    pub fn blocks(&self) -> &[AsyBlock] {
        &self.blocks
    }

    /// The central block `[A_0, N] × [A'_0, N]` (possibly empty).
    pub fn center(&self) -> AsyBlock {
        AsyBlock {
            rows: self.row_a[0]..self.n + 1,
            cols: self.col_a[0]..self.n + 1,
        }
    }

    /// Row `k` is summed directly over columns `1..eval_end(k)`; all later
    /// columns lie in exactly one asymptotic block.
    pub fn eval_end(&self, k: usize) -> usize {
        let end = self.n + 1;
        if k >= self.row_a[0] {
            let deepest = (1..=self.levels)
                .rev()
                .find(|&p| self.row_b[p] <= k)
                .unwrap_or(0);
            return self.col_a[deepest];
        }
        (1..=self.levels)
            .find(|&p| self.row_a[p] <= k && k < self.row_a[p - 1])
            .map_or(end, |p| self.col_b[p])
    }

    /// Whether `(k, n)` is summed directly.
    pub fn is_eval(&self, k: usize, n: usize) -> bool {
        n < self.eval_end(k)
    }

    /// Number of directly summed entries.
    pub fn eval_count(&self) -> usize {
        (1..=self.n).map(|k| self.eval_end(k) - 1).sum()
    }

    /// Upper bound on [`eval_count`](Self::eval_count):
    /// `2αβ^P N^{3/2} + 2Pα²N(1/β - 1) + (2P+4)(N+1)(1+|γ|)`.
    pub fn eval_bound(&self) -> f64 {
        let n = self.n as f64;
        let p = self.levels as f64;
        let tail = 2.0 * self.alpha * self.beta.powi(self.levels as i32) * n.powf(1.5);
        let steps = if self.levels == 0 {
            0.0
        } else {
            2.0 * p * self.alpha * self.alpha * n * (1.0 / self.beta - 1.0)
        };
        tail + steps + (2.0 * p + 4.0) * (n + 1.0) * (1.0 + self.gamma.abs())
    }
}
