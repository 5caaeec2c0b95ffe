use std::f64::consts::PI;

use num_complex::Complex64;

use super::KernelError;
use crate::grid::Grid;
use crate::potentials::SampledKernel;
use crate::symmetry::SymmetryCode;

/// Local potential `V(x) = α / (x - iε)²` on `[-d, d]`.
///
/// With `α` real and `ε > 0` this is PT-symmetric: the real part
/// `α(x² - ε²)/(x² + ε²)²` is even and the imaginary part
/// `2αxε/(x² + ε²)²` is odd. Its Fourier transform over the whole line is
/// supported on negative wavenumbers only, which makes it a broadband one-way
/// reflector in the Born approximation.
///
/// Parity or conjugation map the potential onto the same form with `ε → -ε`,
/// so a negative `epsilon` is accepted as the mirrored variant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedInverseSquare {
    alpha: f64,
    epsilon: f64,
    half_width: f64,
}

impl RegularizedInverseSquare {
    /// Potential on the default support `[-1, 1]`; requires `ε > 0`.
    pub fn new(alpha: f64, epsilon: f64) -> Result<Self, KernelError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(KernelError::Epsilon(epsilon));
        }
        Self::with_support(alpha, epsilon, crate::units::D)
    }

    /// Any non-zero `ε`, any positive half-width.
    pub fn with_support(alpha: f64, epsilon: f64, half_width: f64) -> Result<Self, KernelError> {
        if !alpha.is_finite() {
            return Err(KernelError::NonFinite { index: 0 });
        }
        if !(epsilon != 0.0 && epsilon.is_finite()) {
            return Err(KernelError::Epsilon(epsilon));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(KernelError::HalfWidth(half_width));
        }
        Ok(Self {
            alpha,
            epsilon,
            half_width,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// `V(x)`, zero for `|x| > d`.
    pub fn profile(&self, x: f64) -> Complex64 {
        if x.abs() > self.half_width {
            return Complex64::new(0.0, 0.0);
        }
        let (e, x2) = (self.epsilon, x * x);
        let den = (x2 + e * e) * (x2 + e * e);
        Complex64::new(self.alpha * (x2 - e * e) / den, self.alpha * 2.0 * x * e / den)
    }

    /// Fourier transform `(2π)^{-1/2} ∫ V(x) e^{-ikx} dx` of the untruncated
    /// potential: `√(2π) α k e^{εk}` for `k < 0` and zero for `k ≥ 0`
    /// (mirrored when `ε < 0`).
    pub fn fourier_transform(&self, k: f64) -> Complex64 {
        let scale = (2.0 * PI).sqrt() * self.alpha * k * (self.epsilon * k).exp();
        let value = if self.epsilon > 0.0 {
            if k < 0.0 {
                scale
            } else {
                0.0
            }
        } else if k > 0.0 {
            -scale
        } else {
            0.0
        };
        Complex64::new(value, 0.0)
    }

    /// Local profile on a sinh-graded grid refined around the origin on the
    /// scale `|ε|`.
    pub fn sample(&self, n: usize) -> Result<SampledKernel, KernelError> {
        let grid = Grid::sinh(self.half_width, n, self.epsilon.abs())?;
        Ok(SampledKernel::local_from_fn(grid, |x| self.profile(x)))
    }

    pub fn transform(&self, code: SymmetryCode) -> RegularizedInverseSquare {
        let (_, parity, conjugate) = code.kernel_ops();
        let flip = parity ^ conjugate;
        RegularizedInverseSquare {
            epsilon: if flip { -self.epsilon } else { self.epsilon },
            ..*self
        }
    }
}
