//! Dimensionless unit convention.
//!
//! Every computation uses `ħ = 1`, `m = 1` and a support half-width `d = 1`.
//! Wavenumbers are therefore `k·d`, energies are `E = k²/2`, and the stationary
//! equation reads
//!
//! ```text
//! k²/2 ψ(x) = -1/2 ψ''(x) + ∫ V(x, y) ψ(y) dy
//! ```
//!
//! Kernel values written to or read from JSON files are expressed in units of
//! [`V0`] `= ħ²/(2 m d³)`; in memory they are plain Hamiltonian units.

/// Reduced Planck constant.
pub const HBAR: f64 = 1.0;
/// Particle mass.
pub const MASS: f64 = 1.0;
/// Default support half-width.
pub const D: f64 = 1.0;
/// Kernel unit `ħ²/(2 m d³)`.
pub const V0: f64 = HBAR * HBAR / (2.0 * MASS * D * D * D);

/// Kinetic energy `E_p = p²/(2m)` of a plane wave with wavenumber `k`.
pub fn energy(k: f64) -> f64 {
    let p = HBAR * k;
    p * p / (2.0 * MASS)
}

/// Converts a kernel value from [`V0`] units to Hamiltonian units.
pub fn from_v0(value: f64) -> f64 {
    value * V0
}

/// Converts a kernel value from Hamiltonian units to [`V0`] units.
pub fn to_v0(value: f64) -> f64 {
    value / V0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v0_is_one_half() {
        assert_eq!(V0, 0.5);
        assert_eq!(energy(2.0), 2.0);
    }

    #[test]
    fn v0_conversion_is_exact() {
        for v in [0.1_f64, -3.7, 1.0e-300, 123456.789] {
            assert_eq!(from_v0(to_v0(v)), v);
        }
    }
}
