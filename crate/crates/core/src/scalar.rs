use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Coefficient type accepted by the evaluators: `f64` or `Complex64`.
///
/// All kernels in this crate are real, so a complex input is simply two real
/// problems carried through the same arithmetic.
pub trait Scalar:
    Copy
    + Send
    + Sync
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + AddAssign
    + SubAssign
    + 'static
{
    const ZERO: Self;
    /// Whether values have no imaginary part.
    const IS_REAL: bool;

    fn to_complex(self) -> Complex64;

    /// Recovers `(Σ cos(θ_n) y_n, Σ sin(θ_n) y_n)` from `F = Σ e^{iθ_n} y_n`
    /// and `G = Σ e^{-iθ_n} y_n`.
    fn split_cos_sin(f: Complex64, g: Complex64) -> (Self, Self);

    /// Keeps the real component for `f64`; identity for `Complex64`.
    fn from_complex(z: Complex64) -> Self;

    fn magnitude(self) -> f64;

    fn is_finite(self) -> bool;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const IS_REAL: bool = true;

    #[inline]
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }

    #[inline]
    fn split_cos_sin(f: Complex64, _g: Complex64) -> (Self, Self) {
        // for real y, G = conj(F)
        (f.re, f.im)
    }

    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z.re
    }

    #[inline]
    fn magnitude(self) -> f64 {
        self.abs()
    }

    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const IS_REAL: bool = false;

    #[inline]
    fn to_complex(self) -> Complex64 {
        self
    }

    #[inline]
    fn split_cos_sin(f: Complex64, g: Complex64) -> (Self, Self) {
        let cos = (f + g) * 0.5;
        let d = (f - g) * 0.5;
        // (f - g) / 2i
        (cos, Complex64::new(d.im, -d.re))
    }

    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z
    }

    #[inline]
    fn magnitude(self) -> f64 {
        self.norm()
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `||c||_1`.
pub fn l1_norm<T: Scalar>(c: &[T]) -> f64 {
    c.iter().map(|v| v.magnitude()).sum()
}

/// `||a - b||_inf`.
pub fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).magnitude())
        .fold(0.0, f64::max)
}
