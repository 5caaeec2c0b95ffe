//! Classification of kernels by the eight generalized symmetries, the devices
//! each symmetry forbids, and the amplitude relations each one implies.

mod code;
mod devices;
mod relations;

pub use code::{ParseSymmetryError, SymmetryCode};
pub use devices::{allowed_devices, devices_allowed_by, DeviceCode, DeviceVerdict, ParseDeviceError};
pub use relations::{
    device_phase_conditions, map_amplitudes, predicted_amplitude_relations, relations_for,
    transformed_amplitudes, Amplitude, AmplitudeRelation, Relation,
};

use crate::potentials::{PotentialKernel, SampledKernel};

/// Default verdict threshold for exactly constructed kernels.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Grid used to tabulate analytic kernels that have no exact coefficient test.
const CHECK_POINTS: usize = 401;

/// Residual of `V` against each symmetry, `sup|V - transform(V)| / sup|V|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    pub residuals: [f64; 8],
    pub tolerance: f64,
}

impl SymmetryReport {
    pub fn residual(&self, code: SymmetryCode) -> f64 {
        self.residuals[code.index()]
    }

    pub fn holds(&self, code: SymmetryCode) -> bool {
        self.residual(code) < self.tolerance
    }

    pub fn verdicts(&self) -> [bool; 8] {
        SymmetryCode::ALL.map(|c| self.holds(c))
    }

    /// Satisfied codes in increasing order, always starting with `I`.
    pub fn satisfied(&self) -> Vec<SymmetryCode> {
        SymmetryCode::ALL.into_iter().filter(|&c| self.holds(c)).collect()
    }
}

/// Residuals of `kernel` against all eight symmetries. Polynomial kernels are
/// compared coefficient by coefficient; everything else on its tabulation.
pub fn check_symmetries(kernel: &PotentialKernel, tolerance: f64) -> SymmetryReport {
    let residuals = match kernel {
        PotentialKernel::Polynomial(p) => {
            SymmetryCode::ALL.map(|c| p.coeff_distance(&p.transform(c)))
        }
        PotentialKernel::Sampled(s) => sampled_residuals(s),
        PotentialKernel::InverseSquare(v) => match v.sample(CHECK_POINTS) {
            Ok(s) => sampled_residuals(&s),
            Err(_) => unreachable!("a validated potential always samples on {CHECK_POINTS} points"),
        },
    };
    SymmetryReport {
        residuals,
        tolerance,
    }
}

pub fn check_sampled(kernel: &SampledKernel, tolerance: f64) -> SymmetryReport {
    SymmetryReport {
        residuals: sampled_residuals(kernel),
        tolerance,
    }
}

fn sampled_residuals(kernel: &SampledKernel) -> [f64; 8] {
    SymmetryCode::ALL.map(|c| kernel.relative_distance(&kernel.transform(c)))
}

/// Pairs of symmetries that become equivalent once the row symmetry holds.
const EQUIVALENCES: [(SymmetryCode, [(SymmetryCode, SymmetryCode); 3]); 7] = {
    use SymmetryCode::*;
    [
        (II, [(III, IV), (V, VI), (VII, VIII)]),
        (III, [(II, IV), (V, VII), (VI, VIII)]),
        (IV, [(II, III), (V, VIII), (VI, VII)]),
        (V, [(II, VI), (III, VII), (IV, VIII)]),
        (VI, [(II, V), (III, VIII), (IV, VII)]),
        (VII, [(II, VIII), (III, V), (IV, VI)]),
        (VIII, [(II, VII), (III, VI), (IV, V)]),
    ]
};

/// Pairs made equivalent by `first`; empty for the identity.
pub fn equivalent_pairs(first: SymmetryCode) -> &'static [(SymmetryCode, SymmetryCode)] {
    EQUIVALENCES
        .iter()
        .find(|(c, _)| *c == first)
        .map(|(_, pairs)| pairs.as_slice())
        .unwrap_or(&[])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub pair: (SymmetryCode, SymmetryCode),
    /// Both verdicts true or both false.
    pub agree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("kernel does not satisfy symmetry {code} (residual {residual:e} ≥ {tolerance:e})")]
pub struct SymmetryNotSatisfied {
    pub code: SymmetryCode,
    pub residual: f64,
    pub tolerance: f64,
}

/// Whether the verdicts of each pair equivalent under `first` agree.
pub fn equivalence_table_check(
    report: &SymmetryReport,
    first: SymmetryCode,
) -> Result<Vec<EquivalenceCheck>, SymmetryNotSatisfied> {
    if !report.holds(first) {
        return Err(SymmetryNotSatisfied {
            code: first,
            residual: report.residual(first),
            tolerance: report.tolerance,
        });
    }
    Ok(equivalent_pairs(first)
        .iter()
        .map(|&(a, b)| EquivalenceCheck {
            pair: (a, b),
            agree: report.holds(a) == report.holds(b),
        })
        .collect())
}

/// The subgroup generated by `codes`, always containing `I`.
pub fn generated_subgroup(codes: &[SymmetryCode]) -> Vec<SymmetryCode> {
    let mut group = vec![SymmetryCode::I];
    let mut grew = true;
    while grew {
        grew = false;
        for a in group.clone() {
            for &b in codes {
                let c = a.compose(b);
                if !group.contains(&c) {
                    group.push(c);
                    grew = true;
                }
            }
        }
    }
    group.sort();
    group
}

/// Orthogonal projection onto kernels invariant under every code in `codes`:
/// the average of `transform(V, g)` over the generated subgroup.
pub fn project_onto(kernel: &SampledKernel, codes: &[SymmetryCode]) -> SampledKernel {
    let group = generated_subgroup(codes);
    let weight = 1.0 / group.len() as f64;
    let mut sum: Vec<_> = kernel.values().iter().map(|_| num_complex::Complex64::new(0.0, 0.0)).collect();
    for &g in &group {
        for (s, v) in sum.iter_mut().zip(kernel.transform(g).values()) {
            *s += v * weight;
        }
    }
    rebuild(kernel, sum)
}

fn rebuild(like: &SampledKernel, values: Vec<num_complex::Complex64>) -> SampledKernel {
    let grid = like.grid().clone();
    if like.is_local() {
        SampledKernel::local(grid, values)
    } else {
        SampledKernel::nonlocal(grid, values)
    }
    .expect("same shape as a valid kernel")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::potentials::PolynomialKernel;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use SymmetryCode::*;

    fn random_kernel(seed: u64, n: usize) -> SampledKernel {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..n * n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SampledKernel::nonlocal(Grid::uniform(1.0, n).unwrap(), values).unwrap()
    }

    #[test]
    fn equivalence_table_matches_composition() {
        for (first, pairs) in EQUIVALENCES {
            for (a, b) in pairs {
                assert_eq!(a.compose(first), b, "{first}: {a} = {b}");
            }
        }
    }

    #[test]
    fn real_symmetric_kernel() {
        let k = SampledKernel::nonlocal_from_fn(Grid::uniform(1.0, 9).unwrap(), |x, y| {
            Complex64::new(x * y + (x + y).powi(3), 0.0)
        });
        let r = check_sampled(&k, DEFAULT_TOLERANCE);
        assert_eq!(r.satisfied(), vec![I, II, V, VI]);
    }

    #[test]
    fn local_kernels_are_theta_pseudohermitian() {
        let k = SampledKernel::local_from_fn(Grid::uniform(1.0, 9).unwrap(), |x| Complex64::new(x, x * x + 1.0));
        let r = check_sampled(&k, DEFAULT_TOLERANCE);
        assert!(r.holds(VI));
        assert!(!r.holds(II));
        let checks = equivalence_table_check(&r, VI).unwrap();
        assert!(checks.iter().all(|c| c.agree));
        assert!(checks.contains(&EquivalenceCheck { pair: (IV, VII), agree: true }));
    }

    #[test]
    fn projection_hits_exactly_the_requested_class() {
        let v = random_kernel(3, 11);
        let only_v = project_onto(&v, &[V]);
        let r = check_sampled(&only_v, DEFAULT_TOLERANCE);
        assert_eq!(r.satisfied(), vec![I, V]);
        let checks = equivalence_table_check(&r, V).unwrap();
        assert!(checks.iter().all(|c| c.agree));
        assert!(equivalence_table_check(&r, II).is_err());

        let both = project_onto(&v, &[II, III]);
        assert_eq!(check_sampled(&both, DEFAULT_TOLERANCE).satisfied(), vec![I, II, III, IV]);
    }

    #[test]
    fn polynomial_pt_kernel() {
        // Real for even i+j, imaginary for odd i+j.
        let p = PolynomialKernel::from_fn(1.0, 2, 2, |i, j| {
            let r = 0.3 + i as f64 - 0.7 * j as f64;
            if (i + j) % 2 == 0 { Complex64::new(r, 0.0) } else { Complex64::new(0.0, r) }
        })
        .unwrap();
        let r = check_symmetries(&p.into(), DEFAULT_TOLERANCE);
        assert!(r.holds(VII));
        assert!(!r.holds(II));
    }

    #[test]
    fn allowed_devices_monotone_and_examples() {
        let v = random_kernel(5, 9);
        let generic = check_sampled(&v, DEFAULT_TOLERANCE);
        assert!(allowed_devices(&generic).iter().all(|d| d.allowed()));
        let viii = check_sampled(&project_onto(&v, &[VIII]), DEFAULT_TOLERANCE);
        let allowed: Vec<_> = allowed_devices(&viii).into_iter().filter(|d| d.allowed()).map(|d| d.device).collect();
        assert_eq!(allowed, vec![DeviceCode::OneWayFilter, DeviceCode::MirrorOneWayTransmitter]);
        let herm = check_sampled(&project_onto(&v, &[II]), DEFAULT_TOLERANCE);
        assert!(allowed_devices(&herm).iter().all(|d| !d.allowed()));
    }

    #[test]
    fn subgroups() {
        assert_eq!(generated_subgroup(&[]), vec![I]);
        assert_eq!(generated_subgroup(&[II, III]), vec![I, II, III, IV]);
        assert_eq!(generated_subgroup(&[II, III, V]).len(), 8);
    }
}
