use num_complex::Complex64;

use super::KernelError;
use crate::grid::Grid;
use crate::potentials::SampledKernel;
use crate::symmetry::SymmetryCode;

/// Highest power allowed in either variable.
pub const MAX_DEGREE: usize = 5;

/// `V(x, y) = Σ_ij v_ij x^i y^j` on `[-d, d]²`, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialKernel {
    half_width: f64,
    imax: usize,
    jmax: usize,
    /// Row-major `(imax+1) × (jmax+1)`.
    coeffs: Vec<Complex64>,
}

impl PolynomialKernel {
    pub fn new(
        half_width: f64,
        imax: usize,
        jmax: usize,
        coeffs: Vec<Complex64>,
    ) -> Result<Self, KernelError> {
        if imax > MAX_DEGREE || jmax > MAX_DEGREE {
            return Err(KernelError::Degree { imax, jmax });
        }
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(KernelError::HalfWidth(half_width));
        }
        let expected = (imax + 1) * (jmax + 1);
        if coeffs.len() != expected {
            return Err(KernelError::Shape {
                expected,
                found: coeffs.len(),
            });
        }
        if let Some(index) = coeffs.iter().position(|v| !v.is_finite()) {
            return Err(KernelError::NonFinite { index });
        }
        Ok(Self {
            half_width,
            imax,
            jmax,
            coeffs,
        })
    }

    pub fn zero(half_width: f64, imax: usize, jmax: usize) -> Result<Self, KernelError> {
        Self::new(
            half_width,
            imax,
            jmax,
            vec![Complex64::new(0.0, 0.0); (imax + 1) * (jmax + 1)],
        )
    }

    pub fn from_fn(
        half_width: f64,
        imax: usize,
        jmax: usize,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Result<Self, KernelError> {
        let coeffs = (0..=imax)
            .flat_map(|i| (0..=jmax).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Self::new(half_width, imax, jmax, coeffs)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `v_ij`, zero beyond the stored degrees.
    pub fn coeff(&self, i: usize, j: usize) -> Complex64 {
        if i > self.imax || j > self.jmax {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i * (self.jmax + 1) + j]
        }
    }

    pub fn evaluate(&self, x: f64, y: f64) -> Complex64 {
        let d = self.half_width;
        if x.abs() > d || y.abs() > d {
            return Complex64::new(0.0, 0.0);
        }
        // Horner in x over rows, each row a Horner polynomial in y.
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (0..=self.imax).rev() {
            let mut row = Complex64::new(0.0, 0.0);
            for j in (0..=self.jmax).rev() {
                row = row * y + self.coeff(i, j);
            }
            acc = acc * x + row;
        }
        acc
    }

    /// Coefficient map of a symmetry code: transposition swaps indices,
    /// parity multiplies by `(-1)^{i+j}`.
    pub fn transform(&self, code: SymmetryCode) -> PolynomialKernel {
        let (transpose, parity, conjugate) = code.kernel_ops();
        let (imax, jmax) = if transpose {
            (self.jmax, self.imax)
        } else {
            (self.imax, self.jmax)
        };
        let coeffs = (0..=imax)
            .flat_map(|i| (0..=jmax).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut v = if transpose {
                    self.coeff(j, i)
                } else {
                    self.coeff(i, j)
                };
                if parity && (i + j) % 2 == 1 {
                    v = -v;
                }
                if conjugate {
                    v = v.conj();
                }
                v
            })
            .collect();
        PolynomialKernel {
            half_width: self.half_width,
            imax,
            jmax,
            coeffs,
        }
    }

    pub fn adjoint(&self) -> PolynomialKernel {
        self.transform(SymmetryCode::II)
    }

    /// Largest coefficient modulus.
    pub fn coeff_sup_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the coefficient matrix.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |v - w| / max |v|` over coefficients, padding to a common shape.
    pub fn coeff_distance(&self, other: &PolynomialKernel) -> f64 {
        let imax = self.imax.max(other.imax);
        let jmax = self.jmax.max(other.jmax);
        let mut diff: f64 = 0.0;
        for i in 0..=imax {
            for j in 0..=jmax {
                diff = diff.max((self.coeff(i, j) - other.coeff(i, j)).norm());
            }
        }
        let scale = self.coeff_sup_norm();
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }

    /// Tabulates the kernel on a uniform grid.
    pub fn sample(&self, n: usize) -> Result<SampledKernel, KernelError> {
        let grid = Grid::uniform(self.half_width, n)?;
        Ok(SampledKernel::nonlocal_from_fn(grid, |x, y| {
            self.evaluate(x, y)
        }))
    }

    /// `max_y |V(±d, y)| / max |V|`, both estimated on `n` uniform points.
    pub fn edge_residual(&self, n: usize) -> f64 {
        let d = self.half_width;
        let ys: Vec<f64> = (0..n)
            .map(|j| -d + 2.0 * d * j as f64 / (n - 1) as f64)
            .collect();
        let mut edge: f64 = 0.0;
        let mut total: f64 = 0.0;
        for &x in &ys {
            for &y in &ys {
                total = total.max(self.evaluate(x, y).norm());
            }
        }
        for &y in &ys {
            edge = edge
                .max(self.evaluate(d, y).norm())
                .max(self.evaluate(-d, y).norm());
        }
        if total > 0.0 {
            edge / total
        } else {
            0.0
        }
    }
}
