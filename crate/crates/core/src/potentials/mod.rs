//! Potential kernels `V(x, y)` supported on `[-d, d]²`.
//!
//! Three representations are used: tabulated kernels ([`SampledKernel`],
//! nonlocal or local), polynomial kernels ([`PolynomialKernel`], the form
//! produced by the designer) and the regularized inverse-square local
//! potential ([`RegularizedInverseSquare`]) behind the broadband reflector.
//! The solver only ever sees tabulated kernels; see
//! [`PotentialKernel::discretize`].

mod inverse_square;
pub mod json;
mod polynomial;
mod sampled;

pub use inverse_square::RegularizedInverseSquare;
pub use polynomial::{PolynomialKernel, MAX_DEGREE};
pub use sampled::SampledKernel;

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::GridError;
use crate::symmetry::SymmetryCode;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("expected {expected} values, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("polynomial degrees ({imax}, {jmax}) exceed the cap of {MAX_DEGREE}")]
    Degree { imax: usize, jmax: usize },
    #[error("support half-width must be positive and finite, got {0}")]
    HalfWidth(f64),
    #[error("regularizer epsilon must be non-zero and finite (positive for new designs), got {0}")]
    Epsilon(f64),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("malformed kernel JSON: {0}")]
    Json(String),
    #[error("invalid field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKernel {
    Sampled(SampledKernel),
    Polynomial(PolynomialKernel),
    InverseSquare(RegularizedInverseSquare),
}

impl PotentialKernel {
    pub fn half_width(&self) -> f64 {
        match self {
            PotentialKernel::Sampled(k) => k.grid().half_width(),
            PotentialKernel::Polynomial(k) => k.half_width(),
            PotentialKernel::InverseSquare(k) => k.half_width(),
        }
    }

    pub fn is_local(&self) -> bool {
        match self {
            PotentialKernel::Sampled(k) => k.is_local(),
            PotentialKernel::Polynomial(_) => false,
            PotentialKernel::InverseSquare(_) => true,
        }
    }

    /// `V(x, y)`; zero whenever `|x| > d` or `|y| > d`. Local kernels return
    /// the coefficient of `δ(x - y)`, i.e. the profile on the diagonal and
    /// zero elsewhere.
    pub fn evaluate(&self, x: f64, y: f64) -> Complex64 {
        match self {
            PotentialKernel::Sampled(k) => k.evaluate(x, y),
            PotentialKernel::Polynomial(k) => k.evaluate(x, y),
            PotentialKernel::InverseSquare(k) => {
                if x == y {
                    k.profile(x)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
        }
    }

    /// The kernel `W` obtained from the coordinate-space relation of `code`,
    /// e.g. `W(x,y) = V(-y,-x)*` for IV.
    pub fn transform(&self, code: SymmetryCode) -> PotentialKernel {
        match self {
            PotentialKernel::Sampled(k) => PotentialKernel::Sampled(k.transform(code)),
            PotentialKernel::Polynomial(k) => PotentialKernel::Polynomial(k.transform(code)),
            PotentialKernel::InverseSquare(k) => PotentialKernel::InverseSquare(k.transform(code)),
        }
    }

    /// `V†(x, y) = V(y, x)*`, the potential of `H†`.
    pub fn adjoint(&self) -> PotentialKernel {
        self.transform(SymmetryCode::II)
    }

    /// Tabulated form used by the solver. Sampled kernels are returned as is
    /// (`n` is ignored); polynomial kernels go onto a uniform grid of `n`
    /// points; the inverse-square potential onto a sinh-graded grid of `n`
    /// points refined on the scale `|ε|`.
    pub fn discretize(&self, n: usize) -> Result<SampledKernel, KernelError> {
        match self {
            PotentialKernel::Sampled(k) => Ok(k.clone()),
            PotentialKernel::Polynomial(k) => k.sample(n),
            PotentialKernel::InverseSquare(k) => k.sample(n),
        }
    }
}

impl From<SampledKernel> for PotentialKernel {
    fn from(k: SampledKernel) -> Self {
        PotentialKernel::Sampled(k)
    }
}

impl From<PolynomialKernel> for PotentialKernel {
    fn from(k: PolynomialKernel) -> Self {
        PotentialKernel::Polynomial(k)
    }
}

impl From<RegularizedInverseSquare> for PotentialKernel {
    fn from(k: RegularizedInverseSquare) -> Self {
        PotentialKernel::InverseSquare(k)
    }
}
