mod common;

use asymscat::solver::{
    self, amplitudes_sampled, generalized_unitarity_residuals, hatted_from_unhatted, oracle,
    scatter_sampled, AmplitudeSet, Quadrature, SolverConfig,
};
use asymscat::symmetry::{map_amplitudes, SymmetryCode};
use asymscat::{Complex64, Grid, PotentialKernel, SampledKernel, Side};
use common::{rng, smooth_kernel, smooth_local, square_well};
use proptest::prelude::*;

fn relative(a: &AmplitudeSet, b: &AmplitudeSet) -> f64 {
    a.max_abs_diff(b) / a.max_modulus().max(1.0)
}

#[test]
fn nystrom_matches_finite_differences() {
    let mut r = rng(11);
    for _ in 0..3 {
        let kernel = smooth_kernel(&mut r, 401, 1.5);
        let k = 1.3;
        let a = amplitudes_sampled(&kernel, k, &SolverConfig::simpson(401)).unwrap();
        let b = oracle::sampled_oracle(&kernel, k).unwrap();
        assert!(relative(&a, &b) < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn square_well_on_both_paths() {
    let well: PotentialKernel =
        SampledKernel::local_from_fn(Grid::uniform(1.0, 1601).unwrap(), |_| Complex64::new(-1.0, 0.0)).into();
    for k in [0.3, 1.0, 2.5] {
        let (t, r) = square_well(k, -1.0);
        let exact = AmplitudeSet::new(t, t, r, r);
        let a = solver::scatter_all(&well, k, &SolverConfig::simpson(1601), false).unwrap().direct;
        assert!(a.max_abs_diff(&exact) < 1e-8, "k = {k}: {a}");
        let dense = SolverConfig { structured_local: false, ..SolverConfig::simpson(401) };
        let b = solver::scatter_all(&well, k, &dense, false).unwrap().direct;
        assert!(b.max_abs_diff(&exact) < 1e-6);
        let (t_o, r_o) = oracle::scatter_oracle(&well, k, Side::Left, 0).unwrap();
        assert!((t_o - t).norm() < 1e-7 && (r_o - r).norm() < 1e-7);
    }
}

#[test]
fn scatter_returns_wavefunction_matching_boundary_values() {
    let mut r = rng(2);
    let kernel = PotentialKernel::from(smooth_local(&mut r, 801, 1.0));
    let k = 1.7;
    let sol = solver::scatter(&kernel, k, Side::Left, &SolverConfig::trapezoid(801)).unwrap();
    let n = sol.nodes.len();
    let d = sol.nodes[n - 1];
    // ψ(d) = T e^{ikd} and ψ(-d) = e^{-ikd} + R e^{ikd} hold exactly for the
    // discrete solution, the exterior form being built into the kernel.
    let right = sol.transmission * Complex64::from_polar(1.0, k * d);
    let left = Complex64::from_polar(1.0, -k * d) + sol.reflection * Complex64::from_polar(1.0, k * d);
    assert!((sol.wavefunction[n - 1] - right).norm() < 1e-12);
    assert!((sol.wavefunction[0] - left).norm() < 1e-12);
}

#[test]
fn trapezoid_and_simpson_orders() {
    let mut r = rng(5);
    let kernel = smooth_kernel(&mut r, 1281, 1.0);
    let reference = amplitudes_sampled(&kernel, 2.0, &SolverConfig::simpson(1281)).unwrap();
    let sub = |m: usize| {
        let mut kk = kernel.clone();
        while kk.len() > m {
            kk = kk.coarsen().unwrap();
        }
        kk
    };
    for (quadrature, order) in [(Quadrature::Trapezoid, 2.0), (Quadrature::Simpson, 4.0)] {
        let cfg = SolverConfig { quadrature, ..SolverConfig::default() };
        let e1 = amplitudes_sampled(&sub(81), 2.0, &cfg).unwrap().max_abs_diff(&reference);
        let e2 = amplitudes_sampled(&sub(161), 2.0, &cfg).unwrap().max_abs_diff(&reference);
        let observed = (e1 / e2).log2();
        assert!((observed - order).abs() < 0.5, "{quadrature}: order {observed}");
    }
}

#[test]
fn sweep_csv_is_sorted_with_full_precision() {
    let kernel = PotentialKernel::from(smooth_kernel(&mut rng(1), 101, 1.0));
    let table = solver::k_sweep(&kernel, &[2.0, 1.0, 1.5], &SolverConfig::trapezoid(101)).unwrap();
    let csv = table.to_csv();
    let ks: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ks, vec![1.0, 1.5, 2.0]);
    // Every number round-trips exactly through its 17 significant digits.
    let row = csv.lines().nth(1).unwrap();
    let re_tl: f64 = row.split(',').nth(5).unwrap().parse().unwrap();
    assert_eq!(re_tl, table.rows[0].amplitudes.as_ref().unwrap().t_left.re);
}

#[test]
fn hermitian_kernels_conserve_flux() {
    let mut r = rng(9);
    let kernel = asymscat::symmetry::project_onto(&smooth_kernel(&mut r, 201, 2.0), &[SymmetryCode::II]);
    let a = scatter_sampled(&kernel, 0.8, &SolverConfig::trapezoid(201), true).unwrap();
    let c = a.direct.coefficients();
    assert!((c[0] + c[2] - 1.0).abs() < 1e-12);
    assert!((c[1] + c[3] - 1.0).abs() < 1e-12);
    assert!(a.direct.max_abs_diff(&a.hatted.unwrap()) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn free_space_for_any_k(k in 1e-3f64..20.0) {
        let zero = SampledKernel::zero(Grid::uniform(1.0, 41).unwrap());
        let a = amplitudes_sampled(&zero, k, &SolverConfig::simpson(41)).unwrap();
        prop_assert!(a.max_abs_diff(&AmplitudeSet::free()) < 1e-13);
    }

    #[test]
    fn generalized_unitarity_holds(seed in 0u64..1000, k in 0.2f64..4.0) {
        let kernel = smooth_kernel(&mut rng(seed), 121, 1.5);
        let a = scatter_sampled(&kernel, k, &SolverConfig::trapezoid(121), true).unwrap();
        let res = generalized_unitarity_residuals(&a.direct, a.hatted.as_ref().unwrap());
        prop_assert!(res.iter().all(|r| *r < 1e-10), "{:?}", res);
        if let Ok(h) = hatted_from_unhatted(&a.direct, 1e-6) {
            prop_assert!(h.max_abs_diff(a.hatted.as_ref().unwrap()) < 1e-8 * h.max_modulus().max(1.0));
        }
    }

    #[test]
    fn amplitudes_are_equivariant(seed in 0u64..1000, k in 0.2f64..4.0, code in 0usize..8) {
        let code = SymmetryCode::ALL[code];
        let kernel = smooth_kernel(&mut rng(seed), 61, 1.5);
        let cfg = SolverConfig::trapezoid(61);
        let base = scatter_sampled(&kernel, k, &cfg, true).unwrap();
        let moved = amplitudes_sampled(&kernel.transform(code), k, &cfg).unwrap();
        let predicted = map_amplitudes(code, &base).unwrap();
        prop_assert!(moved.max_abs_diff(&predicted) < 1e-10, "{}: {} vs {}", code, moved, predicted);
    }

    #[test]
    fn march_agrees_with_dense(seed in 0u64..1000, k in 0.2f64..4.0) {
        let kernel = smooth_local(&mut rng(seed), 81, 2.0);
        let fast = amplitudes_sampled(&kernel, k, &SolverConfig::trapezoid(81)).unwrap();
        let dense = SolverConfig { structured_local: false, ..SolverConfig::trapezoid(81) };
        let slow = amplitudes_sampled(&kernel, k, &dense).unwrap();
        prop_assert!(fast.max_abs_diff(&slow) < 1e-11);
        // Locality gives reciprocal transmission.
        prop_assert!((fast.t_left - fast.t_right).norm() < 1e-11);
    }
}
