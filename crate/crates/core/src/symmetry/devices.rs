use std::fmt;
use std::str::FromStr;

use super::{SymmetryCode, SymmetryReport};

/// Asymmetric scattering devices, coded by the unit coefficients seen from
/// each side: letters before the slash for left incidence, after it for right
/// incidence, `A` when both coefficients vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeviceCode {
    /// One-way mirror, `TR/A`.
    OneWayMirror,
    /// One-way barrier, `T/R`.
    OneWayBarrier,
    /// One-way filter, `T/A`.
    OneWayFilter,
    /// Mirror and one-way transmitter, `TR/R`.
    MirrorOneWayTransmitter,
    /// One-way reflector, `R/A`.
    OneWayReflector,
    /// Transparent one-way reflector, `TR/T`.
    TransparentOneWayReflector,
}

impl DeviceCode {
    pub const ALL: [DeviceCode; 6] = [
        DeviceCode::OneWayMirror,
        DeviceCode::OneWayBarrier,
        DeviceCode::OneWayFilter,
        DeviceCode::MirrorOneWayTransmitter,
        DeviceCode::OneWayReflector,
        DeviceCode::TransparentOneWayReflector,
    ];

    pub fn label(self) -> &'static str {
        match self {
            DeviceCode::OneWayMirror => "TR/A",
            DeviceCode::OneWayBarrier => "T/R",
            DeviceCode::OneWayFilter => "T/A",
            DeviceCode::MirrorOneWayTransmitter => "TR/R",
            DeviceCode::OneWayReflector => "R/A",
            DeviceCode::TransparentOneWayReflector => "TR/T",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeviceCode::OneWayMirror => "one-way mirror",
            DeviceCode::OneWayBarrier => "one-way barrier",
            DeviceCode::OneWayFilter => "one-way filter",
            DeviceCode::MirrorOneWayTransmitter => "mirror & 1-way transmitter",
            DeviceCode::OneWayReflector => "one-way reflector",
            DeviceCode::TransparentOneWayReflector => "transparent one-way reflector",
        }
    }

    /// Target `(|T^l|², |T^r|², |R^l|², |R^r|²)` decoded from the label.
    pub fn coefficient_pattern(self) -> [f64; 4] {
        let (left, right) = self.label().split_once('/').expect("labels contain a slash");
        let unit = |side: &str, c: char| if side.contains(c) { 1.0 } else { 0.0 };
        [unit(left, 'T'), unit(right, 'T'), unit(left, 'R'), unit(right, 'R')]
    }

    pub fn transmission_asymmetric(self) -> bool {
        let p = self.coefficient_pattern();
        p[0] != p[1]
    }

    pub fn reflection_asymmetric(self) -> bool {
        let p = self.coefficient_pattern();
        p[2] != p[3]
    }

    /// Symmetries any one of which rules the device out.
    pub fn forbidding_symmetries(self) -> &'static [SymmetryCode] {
        use SymmetryCode::*;
        match self {
            DeviceCode::OneWayMirror | DeviceCode::OneWayBarrier => &[II, III, IV, V, VI, VII, VIII],
            DeviceCode::OneWayFilter => &[II, III, IV, V, VI, VII],
            DeviceCode::MirrorOneWayTransmitter => &[II, III, VI, VII],
            DeviceCode::OneWayReflector => &[II, III, IV, V, VII, VIII],
            DeviceCode::TransparentOneWayReflector => &[II, III, V, VIII],
        }
    }

    pub fn forbidden_by(self, code: SymmetryCode) -> bool {
        self.forbidding_symmetries().contains(&code)
    }
}

impl fmt::Display for DeviceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown device code `{0}` (expected TR/A, T/R, T/A, TR/R, R/A or TR/T)")]
pub struct ParseDeviceError(pub String);

impl FromStr for DeviceCode {
    type Err = ParseDeviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase();
        DeviceCode::ALL
            .into_iter()
            .find(|d| d.label() == norm)
            .ok_or_else(|| ParseDeviceError(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceVerdict {
    pub device: DeviceCode,
    /// Satisfied symmetries that forbid the device; empty when allowed.
    pub forbidden_by: Vec<SymmetryCode>,
}

impl DeviceVerdict {
    pub fn allowed(&self) -> bool {
        self.forbidden_by.is_empty()
    }
}

/// Verdict for every device given the satisfied symmetries of `report`.
pub fn allowed_devices(report: &SymmetryReport) -> Vec<DeviceVerdict> {
    let satisfied = report.satisfied();
    DeviceCode::ALL
        .into_iter()
        .map(|device| DeviceVerdict {
            device,
            forbidden_by: satisfied
                .iter()
                .copied()
                .filter(|&c| device.forbidden_by(c))
                .collect(),
        })
        .collect()
}

/// Devices compatible with a single symmetry.
pub fn devices_allowed_by(code: SymmetryCode) -> Vec<DeviceCode> {
    DeviceCode::ALL
        .into_iter()
        .filter(|d| !d.forbidden_by(code))
        .collect()
}
