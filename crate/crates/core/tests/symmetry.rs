mod common;

use asymscat::solver::{amplitudes_sampled, scatter_sampled, SolverConfig};
use asymscat::symmetry::{
    allowed_devices, check_sampled, check_symmetries, device_phase_conditions, equivalence_table_check,
    predicted_amplitude_relations, project_onto, DeviceCode, SymmetryCode, DEFAULT_TOLERANCE,
};
use asymscat::{PotentialKernel, RegularizedInverseSquare};
use common::{rng, smooth_kernel, smooth_local};
use proptest::prelude::*;
use SymmetryCode::*;

#[test]
fn predicted_relations_hold_on_solver_output() {
    let cfg = SolverConfig::trapezoid(81);
    for (i, code) in SymmetryCode::NONTRIVIAL.into_iter().enumerate() {
        for seed in 0..5 {
            let kernel = project_onto(&smooth_kernel(&mut rng(100 * i as u64 + seed), 81, 1.5), &[code]);
            let report = check_sampled(&kernel, DEFAULT_TOLERANCE);
            assert!(report.holds(code));
            let amps = scatter_sampled(&kernel, 1.1, &cfg, true).unwrap();
            for rel in predicted_amplitude_relations(&report) {
                let r = rel.relation.residual(&amps).unwrap();
                assert!(r < 1e-10, "{code}: {rel} off by {r:e}");
            }
        }
    }
}

#[test]
fn local_complex_potentials_are_vi() {
    let kernel = smooth_local(&mut rng(4), 51, 1.0);
    let report = check_sampled(&kernel, DEFAULT_TOLERANCE);
    assert!(report.holds(VI));
    assert!(!report.holds(II));
}

#[test]
fn regularized_inverse_square_is_pt_symmetric() {
    let v = RegularizedInverseSquare::new(0.1, 1e-4).unwrap();
    let report = check_symmetries(&PotentialKernel::InverseSquare(v), DEFAULT_TOLERANCE);
    assert!(report.holds(VI) && report.holds(VII) && report.holds(IV));
    assert!(!report.holds(II) && !report.holds(III));
}

#[test]
fn hermitian_parity_symmetric_kernel_equivalences() {
    let kernel = project_onto(&smooth_kernel(&mut rng(8), 41, 1.0), &[II, III]);
    let report = check_sampled(&kernel, DEFAULT_TOLERANCE);
    let checks = equivalence_table_check(&report, II).unwrap();
    assert!(checks.iter().all(|c| c.agree));
    assert!(report.holds(III) && report.holds(IV));
}

#[test]
fn phase_conditions_for_symmetric_devices() {
    // A IV-symmetric kernel realizing TR/R must have R^r R^l* = 1; the
    // condition is emitted only when the symmetry holds.
    let kernel = project_onto(&smooth_kernel(&mut rng(3), 41, 1.0), &[IV]);
    let report = check_sampled(&kernel, DEFAULT_TOLERANCE);
    let conditions = device_phase_conditions(&report, DeviceCode::MirrorOneWayTransmitter);
    assert_eq!(conditions.len(), 1);
    assert_eq!(conditions[0].relation.to_string(), "R^r R^l* = 1");
    let generic = check_sampled(&smooth_kernel(&mut rng(3), 41, 1.0), DEFAULT_TOLERANCE);
    assert!(device_phase_conditions(&generic, DeviceCode::MirrorOneWayTransmitter).is_empty());
}

#[test]
fn class_v_reflection_is_symmetric_across_k() {
    let kernel = project_onto(&smooth_kernel(&mut rng(21), 81, 2.0), &[V]);
    let cfg = SolverConfig::trapezoid(81);
    for i in 0..20 {
        let k = 0.1 + 0.25 * i as f64;
        let a = amplitudes_sampled(&kernel, k, &cfg).unwrap();
        assert!((a.r_left.norm() - a.r_right.norm()).abs() < 1e-10, "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn adding_symmetries_never_allows_more_devices(seed in 0u64..500, a in 1usize..8, b in 1usize..8) {
        let base = smooth_kernel(&mut rng(seed), 21, 1.0);
        let one = check_sampled(&project_onto(&base, &[SymmetryCode::ALL[a]]), DEFAULT_TOLERANCE);
        let two = check_sampled(
            &project_onto(&base, &[SymmetryCode::ALL[a], SymmetryCode::ALL[b]]),
            DEFAULT_TOLERANCE,
        );
        for (x, y) in allowed_devices(&one).iter().zip(allowed_devices(&two)) {
            prop_assert!(x.allowed() || !y.allowed());
        }
    }

    #[test]
    fn projection_is_idempotent(seed in 0u64..500, a in 0usize..8) {
        let code = SymmetryCode::ALL[a];
        let once = project_onto(&smooth_kernel(&mut rng(seed), 21, 1.0), &[code]);
        let twice = project_onto(&once, &[code]);
        prop_assert!(once.relative_distance(&twice) < 1e-15);
    }
}
