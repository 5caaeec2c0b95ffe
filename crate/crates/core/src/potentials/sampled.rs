use num_complex::Complex64;

use super::KernelError;
use crate::grid::Grid;
use crate::symmetry::SymmetryCode;

/// A kernel tabulated on a grid over `[-d, d]`.
///
/// Nonlocal kernels store the full `N×N` matrix `V(x_i, y_j)` row-major.
/// Local kernels `V(x)δ(x-y)` store only the profile `V(x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledKernel {
    grid: Grid,
    values: Vec<Complex64>,
    local: bool,
}

impl SampledKernel {
    pub fn nonlocal(grid: Grid, values: Vec<Complex64>) -> Result<Self, KernelError> {
        let n = grid.len();
        if values.len() != n * n {
            return Err(KernelError::Shape {
                expected: n * n,
                found: values.len(),
            });
        }
        check_finite(&values)?;
        Ok(Self {
            grid,
            values,
            local: false,
        })
    }

    pub fn local(grid: Grid, profile: Vec<Complex64>) -> Result<Self, KernelError> {
        if profile.len() != grid.len() {
            return Err(KernelError::Shape {
                expected: grid.len(),
                found: profile.len(),
            });
        }
        check_finite(&profile)?;
        Ok(Self {
            grid,
            values: profile,
            local: true,
        })
    }

    pub fn nonlocal_from_fn(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let x = grid.nodes();
        let values = x
            .iter()
            .flat_map(|&xi| x.iter().map(move |&yj| (xi, yj)))
            .map(|(xi, yj)| f(xi, yj))
            .collect();
        Self {
            grid,
            values,
            local: false,
        }
    }

    pub fn local_from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self {
            grid,
            values,
            local: true,
        }
    }

    pub fn zero(grid: Grid) -> Self {
        let n = grid.len();
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n * n],
            local: false,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn is_local(&self) -> bool {
        self.local
    }

    /// Raw storage: the row-major matrix, or the profile for local kernels.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Matrix entry `V(x_i, y_j)`; local kernels panic, use [`Self::profile`].
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        assert!(!self.local, "local kernels have no off-diagonal entries");
        self.values[i * self.len() + j]
    }

    /// Local profile `V(x_i)`.
    pub fn profile(&self, i: usize) -> Complex64 {
        assert!(self.local, "nonlocal kernels have no profile");
        self.values[i]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// For nonlocal kernels, bilinear interpolation of `V(x, y)`. For local
    /// kernels, the coefficient of `δ(x-y)`: the interpolated profile when
    /// `x == y` and zero otherwise.
    pub fn evaluate(&self, x: f64, y: f64) -> Complex64 {
        let d = self.grid.half_width();
        if x.abs() > d || y.abs() > d {
            return Complex64::new(0.0, 0.0);
        }
        let (i, tx) = self.locate(x);
        if self.local {
            if x != y {
                return Complex64::new(0.0, 0.0);
            }
            return self.values[i] * (1.0 - tx) + self.values[i + 1] * tx;
        }
        let (j, ty) = self.locate(y);
        let n = self.len();
        let v = |a: usize, b: usize| self.values[a * n + b];
        v(i, j) * ((1.0 - tx) * (1.0 - ty))
            + v(i + 1, j) * (tx * (1.0 - ty))
            + v(i, j + 1) * ((1.0 - tx) * ty)
            + v(i + 1, j + 1) * (tx * ty)
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let nodes = self.grid.nodes();
        let n = nodes.len();
        let i = match nodes.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.clamp(1, n - 1) - 1,
        };
        let t = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
        (i, t)
    }

    /// Every other node; `None` when the node count is even or too small.
    pub fn coarsen(&self) -> Option<SampledKernel> {
        let grid = self.grid.coarsen()?;
        let m = grid.len();
        let n = self.len();
        let values = if self.local {
            (0..m).map(|i| self.values[2 * i]).collect()
        } else {
            let mut v = Vec::with_capacity(m * m);
            for i in 0..m {
                for j in 0..m {
                    v.push(self.values[2 * i * n + 2 * j]);
                }
            }
            v
        };
        Some(Self {
            grid,
            values,
            local: self.local,
        })
    }

    /// Applies the kernel map of a symmetry code by index permutation and
    /// conjugation. The grid must be symmetric about the origin, which every
    /// [`Grid`] is.
    pub fn transform(&self, code: SymmetryCode) -> SampledKernel {
        let (transpose, parity, conjugate) = code.kernel_ops();
        let n = self.len();
        let src = |i: usize| if parity { n - 1 - i } else { i };
        let conj = |z: Complex64| if conjugate { z.conj() } else { z };
        let values = if self.local {
            (0..n).map(|i| conj(self.values[src(i)])).collect()
        } else {
            let mut v = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = if transpose {
                        (src(j), src(i))
                    } else {
                        (src(i), src(j))
                    };
                    v.push(conj(self.values[a * n + b]));
                }
            }
            v
        };
        Self {
            grid: self.grid.clone(),
            values,
            local: self.local,
        }
    }

    /// `V†(x, y) = V(y, x)*`.
    pub fn adjoint(&self) -> SampledKernel {
        self.transform(SymmetryCode::II)
    }

    /// `sup |V - W| / sup |V|` (zero kernels compare by absolute difference).
    pub fn relative_distance(&self, other: &SampledKernel) -> f64 {
        let diff = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let scale = self.sup_norm();
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }

    /// Projection onto the class of kernels invariant under `code`,
    /// `(V + transform(V, code)) / 2`.
    pub fn symmetrize(&self, code: SymmetryCode) -> SampledKernel {
        let other = self.transform(code);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) * 0.5)
            .collect();
        Self {
            grid: self.grid.clone(),
            values,
            local: self.local,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> SampledKernel {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
            local: self.local,
        }
    }
}

fn check_finite(values: &[Complex64]) -> Result<(), KernelError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(KernelError::NonFinite { index }),
        None => Ok(()),
    }
}
