//! Nyström discretization of the Lippmann–Schwinger equation
//!
//! ```text
//! ψ(x) = φ(x) + ∫∫ G(x, x') V(x', y) ψ(y) dx' dy,   G(x, x') = e^{ik|x-x'|} / (ik)
//! ```
//!
//! on the nodes of the kernel's grid. `G` is semiseparable, so the product
//! `G·M` with `M = W V W` is assembled in `O(N²)`; nonlocal kernels then take a
//! dense LU. For local kernels the same linear system is solved by an `O(N)`
//! march over the two cumulative sums defining `G`.

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;

use super::{AmplitudeSet, SolverError};
use crate::potentials::SampledKernel;

pub(crate) struct LevelSolution {
    pub amps: AmplitudeSet,
    pub psi_left: Vec<Complex64>,
    pub psi_right: Vec<Complex64>,
}

struct Phases {
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
    inv_ik: Complex64,
}

impl Phases {
    fn new(nodes: &[f64], k: f64) -> Self {
        let plus: Vec<Complex64> = nodes.iter().map(|&x| Complex64::from_polar(1.0, k * x)).collect();
        let minus = plus.iter().map(|p| p.conj()).collect();
        Self {
            plus,
            minus,
            inv_ik: Complex64::new(0.0, -1.0 / k),
        }
    }

    /// Amplitudes from the source terms `q = M ψ` of both incidences.
    fn amplitudes(&self, q_left: &[Complex64], q_right: &[Complex64]) -> AmplitudeSet {
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        };
        let one = Complex64::new(1.0, 0.0);
        AmplitudeSet::new(
            one + self.inv_ik * dot(&self.minus, q_left),
            one + self.inv_ik * dot(&self.plus, q_right),
            self.inv_ik * dot(&self.plus, q_left),
            self.inv_ik * dot(&self.minus, q_right),
        )
    }
}

pub(crate) fn solve_level(
    kernel: &SampledKernel,
    k: f64,
    tolerance: f64,
    structured_local: bool,
) -> Result<LevelSolution, SolverError> {
    if kernel.is_local() && structured_local {
        march_local(kernel, k, tolerance)
    } else {
        dense(kernel, k, tolerance)
    }
}

fn dense(kernel: &SampledKernel, k: f64, tolerance: f64) -> Result<LevelSolution, SolverError> {
    let grid = kernel.grid();
    let n = grid.len();
    let w = grid.weights();
    let ph = Phases::new(grid.nodes(), k);
    let zero = Complex64::new(0.0, 0.0);

    // M = w V w (or diag(w V)), row-major.
    let m: Vec<Complex64> = if kernel.is_local() {
        let mut m = vec![zero; n * n];
        for i in 0..n {
            m[i * n + i] = kernel.profile(i) * w[i];
        }
        m
    } else {
        let v = kernel.values();
        (0..n * n).map(|ij| v[ij] * (w[ij / n] * w[ij % n])).collect()
    };

    // A = I - G M, one column at a time through cumulative sums.
    let mut a = Mat::<Complex64>::zeros(n, n);
    let mut forward = vec![zero; n];
    let mut backward = vec![zero; n];
    for j in 0..n {
        let mut acc = zero;
        for i in 0..n {
            acc += ph.minus[i] * m[i * n + j];
            forward[i] = acc;
        }
        acc = zero;
        for i in (0..n).rev() {
            backward[i] = acc;
            acc += ph.plus[i] * m[i * n + j];
        }
        for i in 0..n {
            a[(i, j)] = -ph.inv_ik * (ph.plus[i] * forward[i] + ph.minus[i] * backward[i]);
        }
        a[(j, j)] += Complex64::new(1.0, 0.0);
    }

    let norm = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let lu = a.partial_piv_lu();
    let min_pivot = lu.U().diagonal().column_vector().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(min_pivot >= tolerance * norm) {
        return Err(SolverError::Singular { k });
    }

    let rhs = Mat::from_fn(n, 2, |i, c| if c == 0 { ph.plus[i] } else { ph.minus[i] });
    let psi = lu.solve(&rhs);
    let psi_left: Vec<Complex64> = (0..n).map(|i| psi[(i, 0)]).collect();
    let psi_right: Vec<Complex64> = (0..n).map(|i| psi[(i, 1)]).collect();
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        (0..n).map(|i| m[i * n..(i + 1) * n].iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    };

    Ok(LevelSolution {
        amps: ph.amplitudes(&apply(&psi_left), &apply(&psi_right)),
        psi_left,
        psi_right,
    })
}

/// Exact solve of `(I - G diag(wV)) ψ = φ` in `O(N)`.
///
/// Writing `A_i = Σ_{m≤i} e^{-ikx_m} q_m` and `S_i = Σ_{m≤i} e^{ikx_m} q_m`
/// with `q = wVψ`, row `i` reads
/// `ψ_i = φ_i + [e^{ikx_i} A_{i-1} + e^{-ikx_i}(β - S_{i-1})]/(ik)` where
/// `β = S_{N-1}`; the diagonal contributions cancel. The march is affine in
/// the unknown `β`, fixed at the end by consistency.
fn march_local(kernel: &SampledKernel, k: f64, tolerance: f64) -> Result<LevelSolution, SolverError> {
    let grid = kernel.grid();
    let n = grid.len();
    let ph = Phases::new(grid.nodes(), k);
    let c: Vec<Complex64> = (0..n).map(|i| kernel.profile(i) * grid.weights()[i]).collect();
    let zero = Complex64::new(0.0, 0.0);

    let solve = |phi: &[Complex64]| -> Result<Vec<Complex64>, SolverError> {
        let mut psi0 = vec![zero; n];
        let mut psi1 = vec![zero; n];
        let (mut a0, mut a1, mut s0, mut s1) = (zero, zero, zero, zero);
        for i in 0..n {
            psi0[i] = phi[i] + ph.inv_ik * (ph.plus[i] * a0 - ph.minus[i] * s0);
            psi1[i] = ph.inv_ik * (ph.plus[i] * a1 + ph.minus[i] * (1.0 - s1));
            a0 += ph.minus[i] * c[i] * psi0[i];
            a1 += ph.minus[i] * c[i] * psi1[i];
            s0 += ph.plus[i] * c[i] * psi0[i];
            s1 += ph.plus[i] * c[i] * psi1[i];
        }
        let den = Complex64::new(1.0, 0.0) - s1;
        if den.norm() < tolerance * (1.0 + s1.norm()) {
            return Err(SolverError::Singular { k });
        }
        let beta = s0 / den;
        Ok(psi0.iter().zip(&psi1).map(|(p0, p1)| p0 + beta * p1).collect())
    };

    let psi_left = solve(&ph.plus)?;
    let psi_right = solve(&ph.minus)?;
    let q_left: Vec<Complex64> = psi_left.iter().zip(&c).map(|(p, c)| p * c).collect();
    let q_right: Vec<Complex64> = psi_right.iter().zip(&c).map(|(p, c)| p * c).collect();
    Ok(LevelSolution {
        amps: ph.amplitudes(&q_left, &q_right),
        psi_left,
        psi_right,
    })
}
