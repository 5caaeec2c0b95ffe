use std::fmt;
use std::str::FromStr;

/// The eight generalized symmetries of a potential, numbered as in the usual
/// Klein-group classification. Each is `A H = H A` or `A H = H† A` for
/// `A ∈ {1, Π, Θ, ΠΘ}`.
///
/// At kernel level every code is a composition of three commuting
/// involutions: transposition `V(x,y) → V(y,x)`, parity
/// `V(x,y) → V(-x,-y)` and complex conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryCode {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
}

impl SymmetryCode {
    pub const ALL: [SymmetryCode; 8] = [
        SymmetryCode::I,
        SymmetryCode::II,
        SymmetryCode::III,
        SymmetryCode::IV,
        SymmetryCode::V,
        SymmetryCode::VI,
        SymmetryCode::VII,
        SymmetryCode::VIII,
    ];

    /// The seven non-trivial codes.
    pub const NONTRIVIAL: [SymmetryCode; 7] = [
        SymmetryCode::II,
        SymmetryCode::III,
        SymmetryCode::IV,
        SymmetryCode::V,
        SymmetryCode::VI,
        SymmetryCode::VII,
        SymmetryCode::VIII,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn roman(self) -> &'static str {
        match self {
            SymmetryCode::I => "I",
            SymmetryCode::II => "II",
            SymmetryCode::III => "III",
            SymmetryCode::IV => "IV",
            SymmetryCode::V => "V",
            SymmetryCode::VI => "VI",
            SymmetryCode::VII => "VII",
            SymmetryCode::VIII => "VIII",
        }
    }

    /// Operator relation, e.g. `ΠH = H†Π`.
    pub fn relation(self) -> &'static str {
        match self {
            SymmetryCode::I => "1H = H1",
            SymmetryCode::II => "1H = H†1",
            SymmetryCode::III => "ΠH = HΠ",
            SymmetryCode::IV => "ΠH = H†Π",
            SymmetryCode::V => "ΘH = HΘ",
            SymmetryCode::VI => "ΘH = H†Θ",
            SymmetryCode::VII => "ΘΠH = HΘΠ",
            SymmetryCode::VIII => "ΘΠH = H†ΘΠ",
        }
    }

    /// `(transpose, parity, conjugate)` flags of the kernel map.
    pub fn kernel_ops(self) -> (bool, bool, bool) {
        match self {
            SymmetryCode::I => (false, false, false),
            SymmetryCode::II => (true, false, true),
            SymmetryCode::III => (false, true, false),
            SymmetryCode::IV => (true, true, true),
            SymmetryCode::V => (false, false, true),
            SymmetryCode::VI => (true, false, false),
            SymmetryCode::VII => (false, true, true),
            SymmetryCode::VIII => (true, true, false),
        }
    }

    pub fn from_kernel_ops(transpose: bool, parity: bool, conjugate: bool) -> Self {
        SymmetryCode::ALL
            .into_iter()
            .find(|c| c.kernel_ops() == (transpose, parity, conjugate))
            .expect("all eight flag combinations are codes")
    }

    /// Composition of the kernel maps; the group is abelian.
    pub fn compose(self, other: SymmetryCode) -> SymmetryCode {
        let (t1, p1, c1) = self.kernel_ops();
        let (t2, p2, c2) = other.kernel_ops();
        SymmetryCode::from_kernel_ops(t1 ^ t2, p1 ^ p2, c1 ^ c2)
    }
}

impl fmt::Display for SymmetryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown symmetry code `{0}` (expected I..VIII)")]
pub struct ParseSymmetryError(pub String);

impl FromStr for SymmetryCode {
    type Err = ParseSymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        SymmetryCode::ALL
            .into_iter()
            .find(|c| c.roman() == upper)
            .ok_or_else(|| ParseSymmetryError(s.to_string()))
    }
}
