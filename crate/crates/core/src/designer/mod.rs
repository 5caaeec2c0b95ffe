//! Inverse design of polynomial kernels that act as asymmetric scattering
//! devices at a chosen wavenumber.
//!
//! The interior wavefunctions and the kernel are polynomials; matching them to
//! the exterior plane waves with the target amplitudes, and to the stationary
//! equation power by power, gives a bilinear system (see [`ansatz`]). It is
//! solved by Levenberg–Marquardt from seeded restarts, and every result is
//! checked by an independent forward solve.

mod ansatz;
mod lm;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::potentials::{PolynomialKernel, PotentialKernel};
use crate::solver::{self, AmplitudeSet, ScatteringAmplitudes, SolverConfig, SolverError, SweepTable};
use crate::symmetry::{DeviceCode, SymmetryCode};
use crate::units;
use ansatz::{Blocks, Layout, Problem, DEGREE};

/// Structural constraint imposed on the designed kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Constraint {
    /// `v_ij` for `i ≤ 5`, `j ≤ 1`, no relation between them.
    #[default]
    None,
    /// `v_ij = (-1)^{i+j} v_ji` with `i, j ≤ 5` and the `4,5` corner removed.
    SymmetryViii,
    /// `v_ij` real for even `i + j`, imaginary for odd, `j ≤ 1`.
    NonlocalPt,
}

impl Constraint {
    /// Symmetry the constrained kernels satisfy by construction.
    pub fn symmetry(self) -> Option<SymmetryCode> {
        match self {
            Constraint::None => None,
            Constraint::SymmetryViii => Some(SymmetryCode::VIII),
            Constraint::NonlocalPt => Some(SymmetryCode::VII),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::None => "none",
            Constraint::SymmetryViii => "viii",
            Constraint::NonlocalPt => "pt",
        })
    }
}

impl FromStr for Constraint {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Constraint::None),
            "viii" | "symmetry-viii" => Ok(Constraint::SymmetryViii),
            "pt" | "nonlocal-pt" => Ok(Constraint::NonlocalPt),
            _ => Err(DesignError::InvalidSpec(format!("unknown constraint `{s}`"))),
        }
    }
}

/// Default target amplitudes `(T^l, T^r, R^l, R^r)` of each designable device.
pub fn default_targets(device: DeviceCode) -> Option<AmplitudeSet> {
    match device {
        DeviceCode::OneWayMirror => Some(AmplitudeSet::real(1.0, 0.0, -1.0, 0.0)),
        DeviceCode::OneWayBarrier => Some(AmplitudeSet::real(1.0, 0.0, 0.0, -1.0)),
        DeviceCode::OneWayFilter => Some(AmplitudeSet::real(1.0, 0.0, 0.0, 0.0)),
        DeviceCode::MirrorOneWayTransmitter => Some(AmplitudeSet::real(1.0, 0.0, -1.0, -1.0)),
        DeviceCode::TransparentOneWayReflector => Some(AmplitudeSet::real(1.0, -1.0, -1.0, 0.0)),
        DeviceCode::OneWayReflector => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    /// `None` for a plain target quadruple not tied to a device code.
    pub device: Option<DeviceCode>,
    pub k0: f64,
    pub targets: AmplitudeSet,
    pub constraint: Constraint,
}

impl DeviceSpec {
    /// Device with its default targets at `k0 = 1/d` and no constraint.
    pub fn new(device: DeviceCode) -> Result<Self, DesignError> {
        let targets = default_targets(device).ok_or(DesignError::NotDesignable(device))?;
        Ok(Self {
            device: Some(device),
            k0: 1.0 / units::D,
            targets,
            constraint: Constraint::None,
        })
    }

    /// Unit transmission and no reflection on both sides.
    pub fn free_space() -> Self {
        Self {
            device: None,
            k0: 1.0 / units::D,
            targets: AmplitudeSet::free(),
            constraint: Constraint::None,
        }
    }

    pub fn with_k0(mut self, k0: f64) -> Self {
        self.k0 = k0;
        self
    }

    pub fn with_targets(mut self, targets: AmplitudeSet) -> Self {
        self.targets = targets;
        self
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = constraint;
        self
    }

    pub fn validate(&self) -> Result<(), DesignError> {
        if !(self.k0 > 0.0 && self.k0.is_finite()) {
            return Err(DesignError::InvalidSpec(format!("k0 must be positive, got {}", self.k0)));
        }
        if self.targets.as_array().iter().any(|z| !z.is_finite()) {
            return Err(DesignError::InvalidSpec("targets must be finite".into()));
        }
        if let Some(device) = self.device {
            if device == DeviceCode::OneWayReflector {
                return Err(DesignError::NotDesignable(device));
            }
            let moduli = self.targets.coefficients();
            for (got, want) in moduli.iter().zip(device.coefficient_pattern()) {
                if (got - want).abs() > 1e-9 {
                    return Err(DesignError::InvalidSpec(format!(
                        "targets {} do not match the {device} pattern",
                        self.targets
                    )));
                }
            }
            if let Some(code) = self.constraint.symmetry() {
                if device.forbidden_by(code) {
                    return Err(DesignError::Forbidden { device, symmetry: code });
                }
            }
        }
        match self.constraint {
            Constraint::SymmetryViii if (self.targets.r_left - self.targets.r_right).norm() > 1e-12 => {
                Err(DesignError::InvalidSpec(
                    "symmetry VIII requires R^l = R^r".into(),
                ))
            }
            Constraint::NonlocalPt if !pt_compatible(&self.targets) => Err(DesignError::InvalidSpec(
                "nonlocal PT kernels need |T^l| = |T^r| and unit-modulus transmissions when reflection is asymmetric".into(),
            )),
            _ => Ok(()),
        }
    }
}

fn pt_compatible(t: &AmplitudeSet) -> bool {
    let same_t = (t.t_left.norm() - t.t_right.norm()).abs() < 1e-9;
    let asymmetric_r = (t.r_left.norm() - t.r_right.norm()).abs() > 1e-9;
    same_t && (!asymmetric_r || (t.t_left.norm() - 1.0).abs() < 1e-9)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignOptions {
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    /// Equation residual (2-norm) counted as converged.
    pub equation_tolerance: f64,
    /// Largest amplitude deviation accepted in the forward check.
    pub verify_tolerance: f64,
    pub verify_config: SolverConfig,
}

impl Default for DesignOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 16,
            max_iterations: 200,
            equation_tolerance: 1e-11,
            verify_tolerance: 1e-6,
            verify_config: SolverConfig::simpson(401),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignResult {
    pub spec: DeviceSpec,
    pub kernel: PolynomialKernel,
    /// Interior wavefunction coefficients `c_{l,n}` and `c_{r,n}`, `n = 0..5`.
    pub wave_left: [Complex64; DEGREE + 1],
    pub wave_right: [Complex64; DEGREE + 1],
    /// Forward solve at `k0`.
    pub verification: ScatteringAmplitudes,
    /// Largest deviation of the verified amplitudes from the targets.
    pub residual: f64,
    /// Norm of the design equations at the returned solution.
    pub equation_residual: f64,
    /// Restarts that converged.
    pub converged_restarts: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DesignError {
    #[error("invalid design spec: {0}")]
    InvalidSpec(String),
    #[error("{device} is forbidden by symmetry {symmetry}")]
    Forbidden { device: DeviceCode, symmetry: SymmetryCode },
    #[error("{0} devices are classified only, not designed")]
    NotDesignable(DeviceCode),
    #[error("design did not converge; best equation residual {best_residual:e}")]
    NoConvergence { best_residual: f64 },
    #[error("forward solve deviates from the targets by {deviation:e} at k0 = {k0}")]
    Verification { deviation: f64, k0: f64 },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Finds a polynomial kernel with the spec's amplitudes at `k0`.
///
/// Among converged restarts the one with the smallest kernel coefficients is
/// kept, so the result is reproducible for a given seed.
pub fn design_device(spec: &DeviceSpec, options: &DesignOptions) -> Result<DesignResult, DesignError> {
    spec.validate()?;
    let d = units::D;
    if spec.targets.max_abs_diff(&AmplitudeSet::free()) == 0.0 {
        return free_design(spec, options, d);
    }

    let layout = Layout::new(spec.constraint);
    let problem = Problem {
        layout: layout.clone(),
        k: spec.k0,
        d,
        targets: spec.targets,
    };
    let n = layout.len();
    let wave_len = layout.wave_len();

    let mut best: Option<(f64, f64, Vec<f64>)> = None;
    let mut best_residual = f64::INFINITY;
    let mut converged = 0;
    for restart in 0..options.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(restart as u64));
        let mut z: Vec<f64> = if restart == 0 {
            vec![0.0; n]
        } else {
            (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
        };

        // Wave coefficients nearest the start that meet the boundary conditions.
        let (wave, kernel) = z.split_at(wave_len);
        let kernel = kernel.to_vec();
        let wave = lm::affine_least_squares(
            |w| {
                let full: Vec<f64> = w.iter().chain(&kernel).copied().collect();
                problem.residuals(&full, Blocks { boundary: true, interior: false, edges: false })
            },
            wave,
        );
        z[..wave_len].copy_from_slice(&wave);
        // Kernel coefficients from the remaining, now linear, equations.
        let kernel = lm::affine_least_squares(
            |p| {
                let full: Vec<f64> = wave.iter().chain(p).copied().collect();
                problem.residuals(&full, Blocks { boundary: false, interior: true, edges: true })
            },
            &z[wave_len..],
        );
        z[wave_len..].copy_from_slice(&kernel);

        let out = lm::levenberg_marquardt(
            |z| problem.residuals(z, Blocks::ALL),
            z,
            options.max_iterations,
            options.equation_tolerance * 0.1,
        );
        best_residual = best_residual.min(out.residual_norm);
        if out.residual_norm <= options.equation_tolerance {
            converged += 1;
            let norm = out.x[wave_len..].iter().map(|v| v * v).sum::<f64>();
            let better = match &best {
                None => true,
                Some((_, best_norm, _)) => norm < *best_norm,
            };
            if better {
                best = Some((out.residual_norm, norm, out.x));
            }
        }
    }

    let Some((equation_residual, _, z)) = best else {
        return Err(DesignError::NoConvergence { best_residual });
    };
    let (wave_left, wave_right) = layout.waves(&z);
    let table = layout.kernel(&z);
    let jmax = layout.jmax();
    let kernel = PolynomialKernel::from_fn(d, DEGREE, jmax, |i, j| table[i][j])
        .map_err(|e| DesignError::InvalidSpec(e.to_string()))?;
    finish(spec, options, kernel, wave_left, wave_right, equation_residual, converged)
}

fn free_design(spec: &DeviceSpec, options: &DesignOptions, d: f64) -> Result<DesignResult, DesignError> {
    // The interior states are then plane waves; report their Taylor parts.
    let taylor = |sign: f64| -> [Complex64; DEGREE + 1] {
        let mut term = Complex64::new(1.0, 0.0);
        std::array::from_fn(|n| {
            if n > 0 {
                term *= Complex64::new(0.0, sign * spec.k0) / n as f64;
            }
            term
        })
    };
    let kernel = PolynomialKernel::zero(d, 0, 0).map_err(|e| DesignError::InvalidSpec(e.to_string()))?;
    finish(spec, options, kernel, taylor(1.0), taylor(-1.0), 0.0, 0)
}

fn finish(
    spec: &DeviceSpec,
    options: &DesignOptions,
    kernel: PolynomialKernel,
    wave_left: [Complex64; DEGREE + 1],
    wave_right: [Complex64; DEGREE + 1],
    equation_residual: f64,
    converged_restarts: usize,
) -> Result<DesignResult, DesignError> {
    let verification = solver::scatter_all(
        &PotentialKernel::Polynomial(kernel.clone()),
        spec.k0,
        &options.verify_config,
        false,
    )?;
    let residual = verification.direct.max_abs_diff(&spec.targets);
    if residual > options.verify_tolerance {
        return Err(DesignError::Verification { deviation: residual, k0: spec.k0 });
    }
    Ok(DesignResult {
        spec: *spec,
        kernel,
        wave_left,
        wave_right,
        verification,
        residual,
        equation_residual,
        converged_restarts,
    })
}

/// Lipschitz bound, per unit of `k`, on the coefficients between adjacent
/// sweep rows; a larger jump means the curve is not continuous on the grid.
const CONTINUITY_BOUND: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("solver failed at k = {k}: {message}")]
    Row { k: f64, message: String },
    #[error("amplitudes at k0 = {k0} deviate from the targets by {deviation:e}")]
    NotExact { k0: f64, deviation: f64 },
    #[error("coefficients jump between k = {from} and k = {to}")]
    Discontinuous { from: f64, to: f64 },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Sweeps the designed kernel over `ks` and checks exactness at `k0` and
/// continuity of the coefficient curves.
pub fn verify_design(
    result: &DesignResult,
    ks: &[f64],
    config: &SolverConfig,
    tolerance: f64,
) -> Result<SweepTable, VerifyError> {
    let kernel = PotentialKernel::Polynomial(result.kernel.clone());
    let at_k0 = solver::scatter_all(&kernel, result.spec.k0, config, false)?;
    let deviation = at_k0.direct.max_abs_diff(&result.spec.targets);
    if deviation > tolerance {
        return Err(VerifyError::NotExact { k0: result.spec.k0, deviation });
    }
    let table = solver::k_sweep(&kernel, ks, config)?;
    for row in &table.rows {
        if let Err(message) = &row.amplitudes {
            return Err(VerifyError::Row { k: row.k, message: message.clone() });
        }
    }
    for pair in table.rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (Ok(x), Ok(y)) = (&a.amplitudes, &b.amplitudes) else { unreachable!() };
        let jump = x
            .coefficients()
            .iter()
            .zip(y.coefficients())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        if jump > CONTINUITY_BOUND * (b.k - a.k) + 1e-12 {
            return Err(VerifyError::Discontinuous { from: a.k, to: b.k });
        }
    }
    Ok(table)
}
