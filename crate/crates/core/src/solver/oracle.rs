//! Finite-difference solve of `-½ψ'' + Vψ = (k²/2)ψ` on `[-d, d]`.
//!
//! Central differences with the plane-wave exterior imposed through Robin
//! conditions at `±d`, closed by ghost points. The scheme is second order;
//! two grid levels are combined by Richardson extrapolation. It shares no code
//! with the Nyström path beyond kernel tabulation.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;

use super::{AmplitudeSet, Side, SolverError};
use crate::potentials::{PotentialKernel, SampledKernel};

/// Transmission and reflection for one side from the extrapolated FD solve.
pub fn scatter_oracle(
    kernel: &PotentialKernel,
    k: f64,
    side: Side,
    n_grid: usize,
) -> Result<(Complex64, Complex64), SolverError> {
    let a = oracle_amplitudes(kernel, k, n_grid)?;
    Ok(match side {
        Side::Left => (a.t_left, a.r_left),
        Side::Right => (a.t_right, a.r_right),
    })
}

/// All four amplitudes. `n_grid` must be odd and at least 5; sampled kernels
/// must sit on a uniform grid and use their own node count.
pub fn oracle_amplitudes(
    kernel: &PotentialKernel,
    k: f64,
    n_grid: usize,
) -> Result<AmplitudeSet, SolverError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(SolverError::NonPositiveK(k));
    }
    let fine = match kernel {
        PotentialKernel::InverseSquare(v) => {
            let grid = crate::grid::Grid::uniform(v.half_width(), n_grid)
                .map_err(crate::potentials::KernelError::from)?;
            SampledKernel::local_from_fn(grid, |x| v.profile(x))
        }
        other => other.discretize(n_grid)?,
    };
    sampled_oracle(&fine, k)
}

/// Extrapolated FD amplitudes on the kernel's own uniform grid.
pub fn sampled_oracle(kernel: &SampledKernel, k: f64) -> Result<AmplitudeSet, SolverError> {
    if !kernel.grid().is_uniform() {
        return Err(SolverError::Config("the finite-difference oracle needs a uniform grid".into()));
    }
    let n = kernel.len();
    if n < 5 || n.is_multiple_of(2) {
        return Err(SolverError::Config(format!(
            "the finite-difference oracle needs an odd number of points ≥ 5, got {n}"
        )));
    }
    let coarse = kernel
        .coarsen()
        .ok_or_else(|| SolverError::Config("kernel grid cannot be coarsened".into()))?;
    let f = level(kernel, k)?.as_array();
    let c = level(&coarse, k)?.as_array();
    Ok(AmplitudeSet::from_array(std::array::from_fn(|i| (4.0 * f[i] - c[i]) / 3.0)))
}

fn level(kernel: &SampledKernel, k: f64) -> Result<AmplitudeSet, SolverError> {
    let n = kernel.len();
    let d = kernel.grid().half_width();
    let h = 2.0 * d / (n - 1) as f64;
    let i = Complex64::i();
    let edge = Complex64::from_polar(1.0, -k * d);
    let diag = Complex64::new(k * k * h * h - 2.0, 0.0);
    let robin = diag + 2.0 * i * k * h;
    let zero = Complex64::new(0.0, 0.0);

    // Right-hand sides: a source only in the boundary row of the incident side.
    let mut rhs = [vec![zero; n], vec![zero; n]];
    rhs[0][0] = 2.0 * h * (2.0 * i * k * edge);
    rhs[1][n - 1] = -2.0 * h * (-2.0 * i * k * edge);

    let psi = if kernel.is_local() {
        let mut lower = vec![Complex64::new(1.0, 0.0); n];
        let mut upper = vec![Complex64::new(1.0, 0.0); n];
        let mid: Vec<Complex64> = (0..n)
            .map(|j| {
                let base = if j == 0 || j == n - 1 { robin } else { diag };
                base - 2.0 * h * h * kernel.profile(j)
            })
            .collect();
        upper[0] = Complex64::new(2.0, 0.0);
        lower[n - 1] = Complex64::new(2.0, 0.0);
        let scale = mid.iter().map(|z| z.norm()).fold(2.0, f64::max);
        [
            thomas(&lower, &mid, &upper, &rhs[0], scale, k)?,
            thomas(&lower, &mid, &upper, &rhs[1], scale, k)?,
        ]
    } else {
        let w = kernel.grid().weights();
        let mut a = Mat::from_fn(n, n, |r, c| -2.0 * h * h * kernel.at(r, c) * w[c]);
        for r in 0..n {
            a[(r, r)] += if r == 0 || r == n - 1 { robin } else { diag };
        }
        for r in 1..n - 1 {
            a[(r, r - 1)] += 1.0;
            a[(r, r + 1)] += 1.0;
        }
        a[(0, 1)] += 2.0;
        a[(n - 1, n - 2)] += 2.0;
        let norm = (0..n)
            .map(|r| (0..n).map(|c| a[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let lu = a.partial_piv_lu();
        let min_pivot = lu.U().diagonal().column_vector().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        if !(min_pivot >= 1e-14 * norm) {
            return Err(SolverError::Singular { k });
        }
        let b = Mat::from_fn(n, 2, |r, c| rhs[c][r]);
        let x = lu.solve(&b);
        [(0..n).map(|r| x[(r, 0)]).collect(), (0..n).map(|r| x[(r, 1)]).collect::<Vec<_>>()]
    };

    let [left, right] = psi;
    Ok(AmplitudeSet::new(
        left[n - 1] * edge,
        right[0] * edge,
        (left[0] - edge) * edge,
        (right[n - 1] - edge) * edge,
    ))
}

/// Tridiagonal solve; `lower[j]` couples row `j` to `j-1`, `upper[j]` to `j+1`.
fn thomas(
    lower: &[Complex64],
    mid: &[Complex64],
    upper: &[Complex64],
    rhs: &[Complex64],
    scale: f64,
    k: f64,
) -> Result<Vec<Complex64>, SolverError> {
    let n = mid.len();
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    let mut pivot = mid[0];
    for j in 0..n {
        if j > 0 {
            pivot = mid[j] - lower[j] * c[j - 1];
        }
        if pivot.norm() < 1e-14 * scale {
            return Err(SolverError::Singular { k });
        }
        c[j] = upper[j] / pivot;
        x[j] = (rhs[j] - if j > 0 { lower[j] * x[j - 1] } else { Complex64::new(0.0, 0.0) }) / pivot;
    }
    for j in (0..n - 1).rev() {
        let next = x[j + 1];
        x[j] -= c[j] * next;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::potentials::PolynomialKernel;

    #[test]
    fn free_space_converges_at_fourth_order() {
        // The discrete dispersion relation differs from k² at O(h²), so even
        // free propagation carries discretization error.
        let kernel = PotentialKernel::from(PolynomialKernel::zero(1.0, 0, 0).unwrap());
        let err = |n| oracle_amplitudes(&kernel, 1.7, n).unwrap().max_abs_diff(&AmplitudeSet::free());
        let (e1, e2) = (err(41), err(81));
        assert!((e1 / e2).log2() > 3.5, "{e1} {e2}");
        assert!(err(801) < 1e-9);
    }

    #[test]
    fn local_and_dense_paths_agree() {
        let grid = Grid::uniform(1.0, 41).unwrap();
        let local = SampledKernel::local_from_fn(grid.clone(), |x| Complex64::new(-0.7 + x, 0.2));
        let w = grid.weights().to_vec();
        // The same operator written as a nonlocal matrix: V δ_ij / w_j.
        let dense = SampledKernel::nonlocal(
            grid.clone(),
            (0..41 * 41)
                .map(|idx| {
                    let (r, c) = (idx / 41, idx % 41);
                    if r == c { local.profile(r) / w[c] } else { Complex64::new(0.0, 0.0) }
                })
                .collect(),
        )
        .unwrap();
        let a = level(&local, 1.1).unwrap();
        let b = level(&dense, 1.1).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn square_well_converges() {
        let kernel: PotentialKernel =
            SampledKernel::local_from_fn(Grid::uniform(1.0, 1601).unwrap(), |_| Complex64::new(-1.0, 0.0))
                .into();
        let q = 3.0_f64.sqrt();
        let den = Complex64::new((2.0 * q).cos(), -(1.0 + q * q) / (2.0 * q) * (2.0 * q).sin());
        let t = Complex64::from_polar(1.0, -2.0) / den;
        let a = oracle_amplitudes(&kernel, 1.0, 0).unwrap();
        assert!((a.t_left - t).norm() < 1e-8, "{} vs {t}", a.t_left);
        assert!((a.t_right - t).norm() < 1e-8);
    }

    #[test]
    fn rejects_nonuniform_grids() {
        let kernel = SampledKernel::zero(Grid::sinh(1.0, 21, 0.1).unwrap());
        assert!(matches!(sampled_oracle(&kernel, 1.0), Err(SolverError::Config(_))));
    }
}
