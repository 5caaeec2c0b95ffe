//! Scattering of a quantum particle by complex, generally nonlocal, potentials
//! on the line.
//!
//! The crate computes transmission and reflection amplitudes for left and
//! right incidence (and for the adjoint Hamiltonian), classifies kernels by the
//! eight symmetries generated by the Klein four-group `{1, Π, Θ, ΠΘ}`, and
//! inverse-designs polynomial kernels that behave as asymmetric devices
//! (one-way mirrors, one-way barriers, filters and one-way reflectors).
//!
//! All quantities use `ħ = m = d = 1`; see [`units`].

pub mod born;
pub mod designer;
pub mod grid;
pub mod potentials;
pub mod solver;
pub mod symmetry;
pub mod units;

pub use grid::{Grid, GridKind};
pub use potentials::{PolynomialKernel, PotentialKernel, RegularizedInverseSquare, SampledKernel};
pub use solver::{AmplitudeSet, Quadrature, ScatteringAmplitudes, Side, SolverConfig};
pub use symmetry::{DeviceCode, SymmetryCode, SymmetryReport};

pub use num_complex::Complex64;
