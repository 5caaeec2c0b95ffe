use std::fmt;

use num_complex::Complex64;

/// One scattering quadruple `(T^l, T^r, R^l, R^r)` at a fixed wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    pub t_left: Complex64,
    pub t_right: Complex64,
    pub r_left: Complex64,
    pub r_right: Complex64,
}

impl AmplitudeSet {
    pub fn new(t_left: Complex64, t_right: Complex64, r_left: Complex64, r_right: Complex64) -> Self {
        Self {
            t_left,
            t_right,
            r_left,
            r_right,
        }
    }

    /// Real-valued quadruple, ordered `(T^l, T^r, R^l, R^r)`.
    pub fn real(t_left: f64, t_right: f64, r_left: f64, r_right: f64) -> Self {
        let c = |v| Complex64::new(v, 0.0);
        Self::new(c(t_left), c(t_right), c(r_left), c(r_right))
    }

    pub fn free() -> Self {
        Self::real(1.0, 1.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.t_left, self.t_right, self.r_left, self.r_right]
    }

    pub fn from_array(a: [Complex64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Coefficients `(|T^l|², |T^r|², |R^l|², |R^r|²)`.
    pub fn coefficients(&self) -> [f64; 4] {
        self.as_array().map(|a| a.norm_sqr())
    }

    /// `T^l T^r - R^l R^r`, the determinant of the on-shell S-matrix.
    pub fn determinant(&self) -> Complex64 {
        self.t_left * self.t_right - self.r_left * self.r_right
    }

    pub fn max_abs_diff(&self, other: &AmplitudeSet) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_modulus(&self) -> f64 {
        self.as_array().iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn s_matrix(&self) -> OnShellSMatrix {
        OnShellSMatrix {
            entries: [[self.t_left, self.r_right], [self.r_left, self.t_right]],
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::from_array(self.as_array().map(f))
    }
}

impl fmt::Display for AmplitudeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T^l={:.6} T^r={:.6} R^l={:.6} R^r={:.6}",
            self.t_left, self.t_right, self.r_left, self.r_right
        )
    }
}

/// `[[T^l, R^r], [R^l, T^r]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnShellSMatrix {
    pub entries: [[Complex64; 2]; 2],
}

/// Amplitudes of `H` at wavenumber `k`, plus those of `H†` when computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringAmplitudes {
    pub k: f64,
    pub direct: AmplitudeSet,
    pub hatted: Option<AmplitudeSet>,
}

impl ScatteringAmplitudes {
    pub fn s_matrix(&self) -> OnShellSMatrix {
        self.direct.s_matrix()
    }

    pub fn unitarity_residuals(&self) -> Option<[f64; 4]> {
        self.hatted
            .map(|h| generalized_unitarity_residuals(&self.direct, &h))
    }
}

/// Defects of the four on-shell relations of `Ŝ†S = SŜ† = 1`:
///
/// ```text
/// |T̂^l T^l* + R̂^l R^l* - 1|
/// |T̂^r T^r* + R̂^r R^r* - 1|
/// |T̂^l* R^r + T^r R̂^l*|
/// |T^l R̂^r* + T̂^r* R^l|
/// ```
pub fn generalized_unitarity_residuals(direct: &AmplitudeSet, hatted: &AmplitudeSet) -> [f64; 4] {
    let one = Complex64::new(1.0, 0.0);
    let (t_l, t_r, r_l, r_r) = (direct.t_left, direct.t_right, direct.r_left, direct.r_right);
    let (ht_l, ht_r, hr_l, hr_r) = (hatted.t_left, hatted.t_right, hatted.r_left, hatted.r_right);
    [
        (ht_l * t_l.conj() + hr_l * r_l.conj() - one).norm(),
        (ht_r * t_r.conj() + hr_r * r_r.conj() - one).norm(),
        (ht_l.conj() * r_r + t_r * hr_l.conj()).norm(),
        (t_l * hr_r.conj() + ht_r.conj() * r_l).norm(),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("adjoint amplitudes diverge: T^l T^r - R^l R^r = {determinant} is below {tolerance:e}")]
pub struct AdjointDivergence {
    pub determinant: Complex64,
    pub tolerance: f64,
}

/// Amplitudes of `H†` from those of `H` through generalized unitarity:
/// `T̂^l* = T^r/D`, `R̂^l* = -R^r/D`, `T̂^r* = T^l/D`, `R̂^r* = -R^l/D` with
/// `D = T^l T^r - R^l R^r`. Fails when `|D| < tolerance`.
pub fn hatted_from_unhatted(
    amps: &AmplitudeSet,
    tolerance: f64,
) -> Result<AmplitudeSet, AdjointDivergence> {
    let det = amps.determinant();
    if det.norm() < tolerance {
        return Err(AdjointDivergence {
            determinant: det,
            tolerance,
        });
    }
    Ok(AmplitudeSet::new(
        (amps.t_right / det).conj(),
        (amps.t_left / det).conj(),
        (-amps.r_right / det).conj(),
        (-amps.r_left / det).conj(),
    ))
}
