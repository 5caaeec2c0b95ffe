//! Scattering amplitudes of `H = -½∂² + V` for kernels supported in `[-d, d]`.
//!
//! The primary path is a Nyström discretization of the Lippmann–Schwinger
//! equation (see [`nystrom`]); [`oracle`] is an independent finite-difference
//! solve of the same problem used for cross-checks.

mod amplitudes;
mod nystrom;
pub mod oracle;
mod sweep;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

pub use amplitudes::{
    generalized_unitarity_residuals, hatted_from_unhatted, AdjointDivergence, AmplitudeSet,
    OnShellSMatrix, ScatteringAmplitudes,
};
pub use sweep::{k_sweep, SweepRow, SweepTable};

use crate::potentials::{KernelError, PotentialKernel, SampledKernel};

/// Side the plane wave comes in from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(SolverError::Config(format!("unknown side `{s}`"))),
        }
    }
}

/// Quadrature rule of the Nyström discretization.
///
/// `Simpson` is fourth order: it extrapolates the trapezoid solution on the
/// grid and on its every-other-node coarsening, `(4 A_h - A_2h) / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Quadrature {
    #[default]
    Trapezoid,
    Simpson,
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrature::Trapezoid => "trapezoid",
            Quadrature::Simpson => "simpson",
        })
    }
}

impl FromStr for Quadrature {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "trapezoid" => Ok(Quadrature::Trapezoid),
            "simpson" => Ok(Quadrature::Simpson),
            _ => Err(SolverError::Config(format!("unknown quadrature `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Grid points across `[-d, d]` for kernels that are not already sampled.
    pub n_grid: usize,
    pub quadrature: Quadrature,
    /// Relative pivot threshold below which the system counts as singular.
    pub tolerance: f64,
    /// Solve local kernels by the `O(N)` march instead of a dense LU.
    pub structured_local: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_grid: 401,
            quadrature: Quadrature::Trapezoid,
            tolerance: 1e-10,
            structured_local: true,
        }
    }
}

impl SolverConfig {
    pub fn simpson(n_grid: usize) -> Self {
        Self {
            n_grid,
            quadrature: Quadrature::Simpson,
            ..Self::default()
        }
    }

    pub fn trapezoid(n_grid: usize) -> Self {
        Self {
            n_grid,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(SolverError::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        check_points(self.n_grid, self.quadrature)
    }
}

fn check_points(n: usize, quadrature: Quadrature) -> Result<(), SolverError> {
    match quadrature {
        Quadrature::Trapezoid if n < 3 => Err(SolverError::Config(format!(
            "trapezoid quadrature needs at least 3 points, got {n}"
        ))),
        Quadrature::Simpson if n < 5 || n.is_multiple_of(2) => Err(SolverError::Config(format!(
            "simpson quadrature needs an odd number of points ≥ 5, got {n}"
        ))),
        _ => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("wavenumber must be positive and finite, got {0}")]
    NonPositiveK(f64),
    #[error("scattering problem is non-invertible at k = {k}")]
    Singular { k: f64 },
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Amplitudes and wavefunction for one incidence side.
#[derive(Debug, Clone, PartialEq)]
pub struct SideSolution {
    pub transmission: Complex64,
    pub reflection: Complex64,
    pub nodes: Vec<f64>,
    pub wavefunction: Vec<Complex64>,
}

/// Solves for a plane wave incident from `side`.
///
/// The returned wavefunction lives on the finest grid; only the amplitudes are
/// extrapolated under [`Quadrature::Simpson`].
pub fn scatter(
    kernel: &PotentialKernel,
    k: f64,
    side: Side,
    config: &SolverConfig,
) -> Result<SideSolution, SolverError> {
    check_k(k)?;
    config.validate()?;
    let sampled = kernel.discretize(config.n_grid)?;
    let (amps, level) = solve_levels(&sampled, k, config)?;
    let (transmission, reflection, wavefunction) = match side {
        Side::Left => (amps.t_left, amps.r_left, level.psi_left),
        Side::Right => (amps.t_right, amps.r_right, level.psi_right),
    };
    Ok(SideSolution {
        transmission,
        reflection,
        nodes: sampled.grid().nodes().to_vec(),
        wavefunction,
    })
}

/// Both incidence sides of `kernel`, and of its adjoint when `with_adjoint`.
pub fn scatter_all(
    kernel: &PotentialKernel,
    k: f64,
    config: &SolverConfig,
    with_adjoint: bool,
) -> Result<ScatteringAmplitudes, SolverError> {
    check_k(k)?;
    config.validate()?;
    let sampled = kernel.discretize(config.n_grid)?;
    scatter_sampled(&sampled, k, config, with_adjoint)
}

/// [`scatter_all`] on an already tabulated kernel.
pub fn scatter_sampled(
    kernel: &SampledKernel,
    k: f64,
    config: &SolverConfig,
    with_adjoint: bool,
) -> Result<ScatteringAmplitudes, SolverError> {
    check_k(k)?;
    config.validate()?;
    let direct = amplitudes_sampled(kernel, k, config)?;
    let hatted = if with_adjoint {
        Some(amplitudes_sampled(&kernel.adjoint(), k, config)?)
    } else {
        None
    };
    Ok(ScatteringAmplitudes { k, direct, hatted })
}

/// The four amplitudes of a tabulated kernel.
pub fn amplitudes_sampled(
    kernel: &SampledKernel,
    k: f64,
    config: &SolverConfig,
) -> Result<AmplitudeSet, SolverError> {
    check_k(k)?;
    Ok(solve_levels(kernel, k, config)?.0)
}

fn check_k(k: f64) -> Result<(), SolverError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(SolverError::NonPositiveK(k))
    }
}

fn solve_levels(
    kernel: &SampledKernel,
    k: f64,
    config: &SolverConfig,
) -> Result<(AmplitudeSet, nystrom::LevelSolution), SolverError> {
    check_points(kernel.len(), config.quadrature)?;
    let fine = nystrom::solve_level(kernel, k, config.tolerance, config.structured_local)?;
    let amps = match config.quadrature {
        Quadrature::Trapezoid => fine.amps,
        Quadrature::Simpson => {
            let coarse_kernel = kernel
                .coarsen()
                .ok_or_else(|| SolverError::Config("kernel grid cannot be coarsened".into()))?;
            let coarse =
                nystrom::solve_level(&coarse_kernel, k, config.tolerance, config.structured_local)?;
            let (f, c) = (fine.amps.as_array(), coarse.amps.as_array());
            AmplitudeSet::from_array(std::array::from_fn(|i| (4.0 * f[i] - c[i]) / 3.0))
        }
    };
    Ok((amps, fine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::potentials::PolynomialKernel;

    /// Two-interface amplitudes of the real well `V = v` on `[-1, 1]`.
    fn square_well(k: f64, v: f64) -> (Complex64, Complex64) {
        let q = Complex64::new(k * k - 2.0 * v, 0.0).sqrt();
        let kc = Complex64::new(k, 0.0);
        let i = Complex64::i();
        let (c, s) = ((2.0 * q).cos(), (2.0 * q).sin());
        let den = c - i * (kc * kc + q * q) / (2.0 * kc * q) * s;
        let phase = (-2.0 * i * kc).exp();
        let t = phase / den;
        let r = i * (q * q - kc * kc) / (2.0 * kc * q) * s * phase / den;
        (t, r)
    }

    #[test]
    fn free_propagation() {
        let kernel = PotentialKernel::from(PolynomialKernel::zero(1.0, 0, 0).unwrap());
        for q in [Quadrature::Trapezoid, Quadrature::Simpson] {
            let cfg = SolverConfig { n_grid: 21, quadrature: q, ..Default::default() };
            let a = scatter_all(&kernel, 1.0, &cfg, true).unwrap();
            assert!(a.direct.max_abs_diff(&AmplitudeSet::free()) < 1e-14);
            assert_eq!(a.hatted, Some(a.direct));
        }
    }

    #[test]
    fn square_well_matches_closed_form() {
        let (t, r) = square_well(1.0, -1.0);
        let kernel: PotentialKernel =
            SampledKernel::local_from_fn(Grid::uniform(1.0, 801).unwrap(), |_| Complex64::new(-1.0, 0.0))
                .into();
        let a = scatter_all(&kernel, 1.0, &SolverConfig::simpson(801), false).unwrap().direct;
        for (got, want) in [(a.t_left, t), (a.t_right, t), (a.r_left, r), (a.r_right, r)] {
            assert!((got - want).norm() < 1e-9, "{got} vs {want}");
        }
        let flux = a.t_left.norm_sqr() + a.r_left.norm_sqr();
        assert!((flux - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let kernel = PotentialKernel::from(PolynomialKernel::zero(1.0, 0, 0).unwrap());
        let cfg = SolverConfig::default();
        assert!(matches!(scatter_all(&kernel, 0.0, &cfg, false), Err(SolverError::NonPositiveK(_))));
        assert!(matches!(scatter_all(&kernel, -1.0, &cfg, false), Err(SolverError::NonPositiveK(_))));
        let even = SolverConfig::simpson(400);
        assert!(matches!(scatter_all(&kernel, 1.0, &even, false), Err(SolverError::Config(_))));
        let bad_tol = SolverConfig { tolerance: 0.0, ..cfg };
        assert!(bad_tol.validate().is_err());
    }

    #[test]
    fn simpson_converges_faster_than_trapezoid() {
        let kernel: PotentialKernel = PolynomialKernel::from_fn(1.0, 2, 2, |i, j| {
            Complex64::new(0.3 / (1 + i + j) as f64, 0.1 * (i as f64 - j as f64))
        })
        .unwrap()
        .into();
        let reference = scatter_all(&kernel, 1.2, &SolverConfig::simpson(641), false).unwrap().direct;
        let err = |cfg: SolverConfig| {
            scatter_all(&kernel, 1.2, &cfg, false).unwrap().direct.max_abs_diff(&reference)
        };
        let (t1, t2) = (err(SolverConfig::trapezoid(41)), err(SolverConfig::trapezoid(81)));
        let (s1, s2) = (err(SolverConfig::simpson(41)), err(SolverConfig::simpson(81)));
        assert!((t1 / t2).log2() > 1.8, "trapezoid order {}", (t1 / t2).log2());
        assert!((s1 / s2).log2() > 3.5, "simpson order {}", (s1 / s2).log2());
    }

    #[test]
    fn side_and_quadrature_parse() {
        assert_eq!("Left".parse::<Side>().unwrap(), Side::Left);
        assert_eq!("simpson".parse::<Quadrature>().unwrap(), Quadrature::Simpson);
        assert!("midpoint".parse::<Quadrature>().is_err());
    }
}
