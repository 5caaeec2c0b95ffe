//! Levenberg–Marquardt for small dense least-squares problems.

use faer::Mat;

pub(crate) struct LmOutcome {
    pub x: Vec<f64>,
    pub residual_norm: f64,
}

/// Minimizes `‖f(x)‖₂` from `x0` with a central-difference Jacobian.
///
/// Damped steps solve the stacked system `[J; √λ I] δ = [-f; 0]` by SVD, so
/// redundant equations and flat directions are harmless.
pub(crate) fn levenberg_marquardt(
    f: impl Fn(&[f64]) -> Vec<f64>,
    x0: Vec<f64>,
    max_iterations: usize,
    tolerance: f64,
) -> LmOutcome {
    let mut x = x0;
    let mut r = f(&x);
    let mut norm = l2(&r);
    let mut lambda: f64 = 1e-3;
    for _ in 0..max_iterations {
        if norm < tolerance {
            break;
        }
        let j = jacobian(&f, &x, r.len());
        let n = x.len();
        let m = r.len();
        let mut improved = false;
        // A few damping increases per Jacobian before giving up on this step.
        for _ in 0..12 {
            let a = Mat::from_fn(m + n, n, |row, col| {
                if row < m {
                    j[(row, col)]
                } else if row - m == col {
                    lambda.sqrt()
                } else {
                    0.0
                }
            });
            let b: Vec<f64> = (0..m + n).map(|i| if i < m { -r[i] } else { 0.0 }).collect();
            let Some(step) = svd_solve(&a, &b, 1e-14) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let r_trial = f(&trial);
            let trial_norm = l2(&r_trial);
            if trial_norm < norm {
                x = trial;
                r = r_trial;
                norm = trial_norm;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    LmOutcome {
        x,
        residual_norm: norm,
    }
}

/// Least-squares solution of an affine map `f(x) = f(0) + J x` closest to `x0`.
pub(crate) fn affine_least_squares(f: impl Fn(&[f64]) -> Vec<f64>, x0: &[f64]) -> Vec<f64> {
    let r0 = f(x0);
    let j = jacobian(&f, x0, r0.len());
    let b: Vec<f64> = r0.iter().map(|v| -v).collect();
    match svd_solve(&j, &b, 1e-12) {
        Some(step) => x0.iter().zip(step.iter()).map(|(a, b)| a + b).collect(),
        None => x0.to_vec(),
    }
}

/// Minimum-norm least-squares solution of `a x = b`, singular values at or
/// below `cutoff` treated as zero.
fn svd_solve(a: &Mat<f64>, b: &[f64], cutoff: f64) -> Option<Vec<f64>> {
    let svd = a.thin_svd().ok()?;
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let mut x = vec![0.0; a.ncols()];
    for k in 0..s.nrows() {
        if !(s[k] > cutoff) {
            continue;
        }
        let coeff = (0..b.len()).map(|i| u[(i, k)] * b[i]).sum::<f64>() / s[k];
        for (row, xi) in x.iter_mut().enumerate() {
            *xi += coeff * v[(row, k)];
        }
    }
    Some(x)
}

fn jacobian(f: &impl Fn(&[f64]) -> Vec<f64>, x: &[f64], m: usize) -> Mat<f64> {
    let n = x.len();
    let mut j = Mat::<f64>::zeros(m, n);
    let mut probe = x.to_vec();
    for c in 0..n {
        let h = 1e-6 * x[c].abs().max(1.0);
        probe[c] = x[c] + h;
        let plus = f(&probe);
        probe[c] = x[c] - h;
        let minus = f(&probe);
        probe[c] = x[c];
        for r in 0..m {
            j[(r, c)] = (plus[r] - minus[r]) / (2.0 * h);
        }
    }
    j
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
