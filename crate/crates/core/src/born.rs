//! First-order (Born) reflection amplitudes of local potentials, and the
//! broadband one-way reflector built from a one-sided spectrum.
//!
//! With `Ṽ(q) = (2π)^{-1/2} ∫ V(x) e^{-iqx} dx`,
//!
//! ```text
//! R^l ≈ -(√(2π) i / k) Ṽ(-2k),   R^r ≈ -(√(2π) i / k) Ṽ(2k)
//! ```
//!
//! so a potential whose spectrum vanishes for positive `q` does not reflect
//! from the right at any `k`. `V(x) = α/(x - iε)²` is such a potential.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::potentials::{KernelError, PotentialKernel, RegularizedInverseSquare, SampledKernel};
use crate::solver::{self, SolverConfig, SolverError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BornPrediction {
    pub k: f64,
    pub r_left: Complex64,
    pub r_right: Complex64,
    /// `|T|² = 1 - R^{r*} R^l`, from generalized unitarity at first order.
    pub t_abs2: f64,
}

impl BornPrediction {
    fn from_spectrum(k: f64, minus: Complex64, plus: Complex64) -> Self {
        let factor = -Complex64::new(0.0, (2.0 * PI).sqrt() / k);
        let r_left = factor * minus;
        let r_right = factor * plus;
        Self {
            k,
            r_left,
            r_right,
            t_abs2: (Complex64::new(1.0, 0.0) - r_right.conj() * r_left).re,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BornError {
    #[error("wavenumber must be positive and finite, got {0}")]
    NonPositiveK(f64),
    #[error("the Born amplitudes here are defined for local potentials only")]
    Nonlocal,
    #[error("no sign change of |R^l|² - {target} on [0, {upper}]; scan: {trace:?}")]
    Bracket {
        target: f64,
        upper: f64,
        /// `(α, |R^l|²)` at every scanned point.
        trace: Vec<(f64, f64)>,
    },
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Born amplitudes from the analytic spectrum of the untruncated potential.
pub fn born_reflections(potential: &RegularizedInverseSquare, k: f64) -> Result<BornPrediction, BornError> {
    check_k(k)?;
    Ok(BornPrediction::from_spectrum(
        k,
        potential.fourier_transform(-2.0 * k),
        potential.fourier_transform(2.0 * k),
    ))
}

/// Born amplitudes from the quadrature spectrum of a tabulated local profile.
pub fn born_reflections_sampled(kernel: &SampledKernel, k: f64) -> Result<BornPrediction, BornError> {
    check_k(k)?;
    Ok(BornPrediction::from_spectrum(
        k,
        fourier_transform_sampled(kernel, -2.0 * k)?,
        fourier_transform_sampled(kernel, 2.0 * k)?,
    ))
}

/// `(2π)^{-1/2} Σ w_i V(x_i) e^{-iqx_i}` over the kernel's grid.
pub fn fourier_transform_sampled(kernel: &SampledKernel, q: f64) -> Result<Complex64, BornError> {
    if !kernel.is_local() {
        return Err(BornError::Nonlocal);
    }
    let grid = kernel.grid();
    let sum: Complex64 = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .enumerate()
        .map(|(i, (&x, &w))| kernel.profile(i) * w * Complex64::from_polar(1.0, -q * x))
        .sum();
    Ok(sum / (2.0 * PI).sqrt())
}

fn check_k(k: f64) -> Result<(), BornError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(BornError::NonPositiveK(k))
    }
}

/// Half-width of the window on which the broadband reflector is kept, in
/// units of `d`. The `1/x²` tail carries an integrated strength comparable to
/// the core; cutting it at `±d` leaves a step of height `α` at the edges that
/// reflects visibly at `kd ≲ 1`. At `±100 d` doubling the window moves the
/// amplitudes by less than `10⁻³`.
pub const REFLECTOR_WINDOW: f64 = 100.0;

/// `V(x) = α/(x - iε)²` on `[-L, L]` with `L =` [`REFLECTOR_WINDOW`]. Untruncated,
/// its spectrum is `√(2π) α q e^{εq}` for `q < 0` and zero for `q > 0`.
pub fn design_broadband_reflector(alpha: f64, epsilon: f64) -> Result<RegularizedInverseSquare, BornError> {
    if !(epsilon > 0.0) {
        return Err(KernelError::Epsilon(epsilon).into());
    }
    Ok(RegularizedInverseSquare::with_support(alpha, epsilon, REFLECTOR_WINDOW)?)
}

/// Solver settings for the reflector: a sinh-graded grid, finest spacing far
/// below `ε`, with fourth-order extrapolation.
pub fn reflector_config() -> SolverConfig {
    SolverConfig::simpson(8001)
}

/// Largest amplitude change when the support of the potential is doubled.
pub fn truncation_estimate(
    potential: &RegularizedInverseSquare,
    k: f64,
    config: &SolverConfig,
) -> Result<f64, BornError> {
    let wide = RegularizedInverseSquare::with_support(
        potential.alpha(),
        potential.epsilon(),
        2.0 * potential.half_width(),
    )?;
    let a = solver::scatter_all(&PotentialKernel::InverseSquare(*potential), k, config, false)?;
    let b = solver::scatter_all(&PotentialKernel::InverseSquare(wide), k, config, false)?;
    Ok(a.direct.max_abs_diff(&b.direct))
}

/// Upper end of the `α` bracket, `4/(4π)`.
pub const ALPHA_MAX: f64 = 1.0 / PI;

#[derive(Debug, Clone, PartialEq)]
pub struct TunedAlpha {
    pub alpha: f64,
    /// `|R^l(k_ref)|²` at the returned `α`.
    pub abs2_r_left: f64,
    /// `(α, |R^l|²)` at every evaluation, in order.
    pub trace: Vec<(f64, f64)>,
}

/// Bisection on `α ∈ [0, 4/(4π)]` for `|R^l(k_ref)|² = target`, using the
/// exact solver on the reflector of [`design_broadband_reflector`]. A coarse
/// scan locates the first sign change.
pub fn tune_alpha(
    epsilon: f64,
    k_ref: f64,
    target: f64,
    config: &SolverConfig,
) -> Result<TunedAlpha, BornError> {
    check_k(k_ref)?;
    let mut trace = Vec::new();
    if target == 0.0 {
        return Ok(TunedAlpha { alpha: 0.0, abs2_r_left: 0.0, trace });
    }
    // The grid depends on ε only, so it is built once and rescaled.
    let unit = design_broadband_reflector(1.0, epsilon)?.sample(config.n_grid)?;
    let mut eval = |alpha: f64| -> Result<f64, BornError> {
        let kernel = unit.scaled(Complex64::new(alpha, 0.0));
        let amps = solver::amplitudes_sampled(&kernel, k_ref, config)?;
        let value = amps.r_left.norm_sqr();
        trace.push((alpha, value));
        Ok(value)
    };

    const SCAN: usize = 16;
    let mut lo = 0.0;
    let mut f_lo = eval(lo)? - target;
    let mut hi = None;
    for s in 1..=SCAN {
        let a = ALPHA_MAX * s as f64 / SCAN as f64;
        let f = eval(a)? - target;
        if f == 0.0 {
            let abs2_r_left = f + target;
            return Ok(TunedAlpha { alpha: a, abs2_r_left, trace });
        }
        if f.signum() != f_lo.signum() {
            hi = Some(a);
            break;
        }
        lo = a;
        f_lo = f;
    }
    let Some(mut hi) = hi else {
        return Err(BornError::Bracket { target, upper: ALPHA_MAX, trace });
    };
    let mut f_mid = f_lo;
    let mut mid = lo;
    while hi - lo > 1e-13 {
        mid = 0.5 * (lo + hi);
        f_mid = eval(mid)? - target;
        if f_mid.abs() < 1e-9 {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(TunedAlpha { alpha: mid, abs2_r_left: f_mid + target, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn analytic_limit() {
        let alpha = 0.2;
        let v = RegularizedInverseSquare::new(alpha, 1e-4).unwrap();
        let b = born_reflections(&v, 1.0).unwrap();
        let expected = Complex64::new(0.0, 4.0 * PI * alpha * (-2e-4_f64).exp());
        assert!((b.r_left - expected).norm() < 1e-12);
        assert_eq!(b.r_right, Complex64::new(0.0, 0.0));
        assert_eq!(b.t_abs2, 1.0);
        let zero = born_reflections(&RegularizedInverseSquare::new(0.0, 1e-4).unwrap(), 2.0).unwrap();
        assert_eq!((zero.r_left, zero.r_right), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        assert!(born_reflections(&v, 0.0).is_err());
    }

    #[test]
    fn sampled_transform_of_a_gaussian() {
        let grid = Grid::uniform(1.0, 401).unwrap();
        let s = 0.1;
        let kernel = SampledKernel::local_from_fn(grid, |x| Complex64::new((-x * x / (2.0 * s * s)).exp(), 0.0));
        for q in [0.0, 2.0, -5.0] {
            let got = fourier_transform_sampled(&kernel, q).unwrap();
            let want = s * (-(q * s).powi(2) / 2.0).exp();
            assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_target_gives_zero_alpha() {
        let t = tune_alpha(1e-4, 1.0, 0.0, &reflector_config()).unwrap();
        assert_eq!(t.alpha, 0.0);
    }

    #[test]
    fn unreachable_target_reports_scan() {
        let err = tune_alpha(1e-2, 1.0, 50.0, &SolverConfig::simpson(201)).unwrap_err();
        match err {
            BornError::Bracket { trace, .. } => assert_eq!(trace.len(), 17),
            other => panic!("{other}"),
        }
    }
}
