//! DCT-I and DST-I matrices applied in `O(N log N)` through an FFT of a
//! symmetric extension.
//!
//! `(C_N)_{kn} = cos((k-1)(n-1)π/(N-1))` and `(S_N)_{kn} = sin(knπ/(N+1))`
//! for `1 ≤ k, n ≤ N`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrigKind {
    Dct1,
    Dst1,
}

/// A reusable DCT-I or DST-I of fixed length.
#[derive(Clone)]
pub struct TransformPlan {
    length: usize,
    kind: TrigKind,
    fft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for TransformPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransformPlan")
            .field("length", &self.length)
            .field("kind", &self.kind)
            .finish()
    }
}

impl TransformPlan {
    /// Needs `N ≥ 2` for the DCT-I and `N ≥ 1` for the DST-I.
    pub fn new(length: usize, kind: TrigKind) -> Result<Self> {
        let (min, fft_len) = match kind {
            TrigKind::Dct1 => (2, 2 * length.saturating_sub(1)),
            TrigKind::Dst1 => (1, 2 * (length + 1)),
        };
        if length < min {
            return Err(Error::InvalidSize { min, got: length });
        }
        let fft = FftPlanner::new().plan_fft_forward(fft_len);
        Ok(Self { length, kind, fft })
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> TrigKind {
        self.kind
    }

    /// `C_N v` or `S_N v`.
    pub fn apply<T: Scalar>(&self, v: &[T]) -> Result<Vec<T>> {
        let n = self.length;
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let len = self.fft.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        match self.kind {
            TrigKind::Dct1 => {
                for (j, x) in v.iter().enumerate() {
                    buf[j] = x.to_complex();
                }
                for j in 1..n - 1 {
                    buf[len - j] = buf[j];
                }
            }
            TrigKind::Dst1 => {
                for (j, x) in v.iter().enumerate() {
                    buf[j + 1] = x.to_complex();
                    buf[len - j - 1] = -x.to_complex();
                }
            }
        }
        self.fft.process(&mut buf);
        let out = match self.kind {
            TrigKind::Dct1 => {
                let first = v[0].to_complex();
                let last = v[n - 1].to_complex();
                (0..n)
                    .map(|k| {
                        let edge = if k % 2 == 0 { first + last } else { first - last };
                        T::from_complex((buf[k] + edge) * 0.5)
                    })
                    .collect()
            }
            TrigKind::Dst1 => (1..=n)
                .map(|k| {
                    let y = buf[k];
                    T::from_complex(Complex64::new(-0.5 * y.im, 0.5 * y.re))
                })
                .collect(),
        };
        Ok(out)
    }
}

/// Both `C_k = Σ_{n=1}^{N} cos(knπ/N) y_n` and `S_k = Σ_{n=1}^{N} sin(knπ/N) y_n`
/// for `k = 1..N` from a single complex FFT of length `2N`.
///
/// These are the unit-stride DCT-I and DST-I sums in the form the Schlömilch
/// evaluator consumes them.
#[derive(Clone)]
pub struct JointTrigPlan {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

/// Buffers for one application of a [`JointTrigPlan`].
pub struct JointWork {
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl JointTrigPlan {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize { min: 1, got: 0 });
        }
        let fft = FftPlanner::new().plan_fft_inverse(2 * n);
        Ok(Self { n, fft })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn workspace(&self) -> JointWork {
        JointWork {
            buf: vec![Complex64::new(0.0, 0.0); 2 * self.n],
            scratch: vec![Complex64::new(0.0, 0.0); self.fft.get_inplace_scratch_len()],
        }
    }

    /// Clears the input slots `y_1..y_N`.
    pub fn clear(&self, work: &mut JointWork) {
        work.buf.fill(Complex64::new(0.0, 0.0));
    }

    /// Sets `y_n` for `1 ≤ n ≤ N`.
    #[inline]
    pub fn set<T: Scalar>(&self, work: &mut JointWork, n: usize, y: T) {
        work.buf[n] = y.to_complex();
    }

    /// Sets `y_n = a` in one problem and `y_n = b` in a second one; both are
    /// transformed by a single [`run`](Self::run) and read back with
    /// [`get_pair`](Self::get_pair).
    #[inline]
    pub fn set_pair(&self, work: &mut JointWork, n: usize, a: f64, b: f64) {
        work.buf[n] = Complex64::new(a, b);
    }

    /// `((C_k, S_k), (C'_k, S'_k))` for the two real problems loaded with
    /// [`set_pair`](Self::set_pair).
    #[inline]
    pub fn get_pair(&self, work: &JointWork, k: usize) -> ((f64, f64), (f64, f64)) {
        let g = work.buf[k];
        let h = work.buf[2 * self.n - k].conj();
        let first = (g + h) * 0.5;
        let d = (g - h) * 0.5;
        // second = d / i
        ((first.re, first.im), (d.im, -d.re))
    }

    pub fn run(&self, work: &mut JointWork) {
        self.fft
            .process_with_scratch(&mut work.buf, &mut work.scratch);
    }

    /// `(C_k, S_k)` for `1 ≤ k ≤ N`, after [`run`](Self::run).
    #[inline]
    pub fn get<T: Scalar>(&self, work: &JointWork, k: usize) -> (T, T) {
        T::split_cos_sin(work.buf[k], work.buf[2 * self.n - k])
    }
}
