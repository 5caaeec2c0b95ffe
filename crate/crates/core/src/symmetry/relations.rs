use std::fmt;

use num_complex::Complex64;

use super::{DeviceCode, SymmetryCode, SymmetryReport};
use crate::solver::{AmplitudeSet, ScatteringAmplitudes};

/// One of the eight amplitudes of `H` and `H†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Amplitude {
    Tl,
    Tr,
    Rl,
    Rr,
    HatTl,
    HatTr,
    HatRl,
    HatRr,
}

impl Amplitude {
    pub fn is_hatted(self) -> bool {
        matches!(
            self,
            Amplitude::HatTl | Amplitude::HatTr | Amplitude::HatRl | Amplitude::HatRr
        )
    }

    pub fn get(self, amps: &ScatteringAmplitudes) -> Option<Complex64> {
        let d = &amps.direct;
        Some(match self {
            Amplitude::Tl => d.t_left,
            Amplitude::Tr => d.t_right,
            Amplitude::Rl => d.r_left,
            Amplitude::Rr => d.r_right,
            hatted => {
                let h = amps.hatted.as_ref()?;
                match hatted {
                    Amplitude::HatTl => h.t_left,
                    Amplitude::HatTr => h.t_right,
                    Amplitude::HatRl => h.r_left,
                    _ => h.r_right,
                }
            }
        })
    }

    fn hat(self) -> Self {
        match self {
            Amplitude::Tl => Amplitude::HatTl,
            Amplitude::Tr => Amplitude::HatTr,
            Amplitude::Rl => Amplitude::HatRl,
            Amplitude::Rr => Amplitude::HatRr,
            hatted => hatted,
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Amplitude::Tl => "T^l",
            Amplitude::Tr => "T^r",
            Amplitude::Rl => "R^l",
            Amplitude::Rr => "R^r",
            Amplitude::HatTl => "T̂^l",
            Amplitude::HatTr => "T̂^r",
            Amplitude::HatRl => "R̂^l",
            Amplitude::HatRr => "R̂^r",
        })
    }
}

/// Amplitudes of `transform(V, code)` in terms of those of `V`, listed as
/// `(T^l, T^r, R^l, R^r)`.
pub fn transformed_amplitudes(code: SymmetryCode) -> [Amplitude; 4] {
    use Amplitude::*;
    let (transpose, parity, conjugate) = code.kernel_ops();
    // Parity exchanges the sides and conjugation brings in H†.
    let base = if parity { [Tr, Tl, Rr, Rl] } else { [Tl, Tr, Rl, Rr] };
    // Transposition or conjugation alone also swaps the transmissions.
    let swapped = if transpose != conjugate {
        [base[1], base[0], base[2], base[3]]
    } else {
        base
    };
    if conjugate {
        swapped.map(Amplitude::hat)
    } else {
        swapped
    }
}

/// [`transformed_amplitudes`] evaluated on computed amplitudes.
pub fn map_amplitudes(code: SymmetryCode, amps: &ScatteringAmplitudes) -> Option<AmplitudeSet> {
    let [a, b, c, d] = transformed_amplitudes(code);
    Some(AmplitudeSet::new(a.get(amps)?, b.get(amps)?, c.get(amps)?, d.get(amps)?))
}

/// A checkable statement about scattering amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal(Amplitude, Amplitude),
    EqualModulus(Amplitude, Amplitude),
    /// `a b* = 1`.
    UnitProduct(Amplitude, Amplitude),
    UnitModulus(Amplitude),
}

impl Relation {
    /// Defect of the relation, or `None` when it needs hatted amplitudes that
    /// were not computed.
    pub fn residual(&self, amps: &ScatteringAmplitudes) -> Option<f64> {
        Some(match *self {
            Relation::Equal(a, b) => (a.get(amps)? - b.get(amps)?).norm(),
            Relation::EqualModulus(a, b) => (a.get(amps)?.norm() - b.get(amps)?.norm()).abs(),
            Relation::UnitProduct(a, b) => (a.get(amps)? * b.get(amps)?.conj() - 1.0).norm(),
            Relation::UnitModulus(a) => (a.get(amps)?.norm() - 1.0).abs(),
        })
    }

    pub fn holds(&self, amps: &ScatteringAmplitudes, tol: f64) -> Option<bool> {
        self.residual(amps).map(|r| r <= tol)
    }

    pub fn needs_adjoint(&self) -> bool {
        match *self {
            Relation::Equal(a, b) | Relation::EqualModulus(a, b) | Relation::UnitProduct(a, b) => {
                a.is_hatted() || b.is_hatted()
            }
            Relation::UnitModulus(a) => a.is_hatted(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Equal(a, b) => write!(f, "{a} = {b}"),
            Relation::EqualModulus(a, b) => write!(f, "|{a}| = |{b}|"),
            Relation::UnitProduct(a, b) => write!(f, "{a} {b}* = 1"),
            Relation::UnitModulus(a) => write!(f, "|{a}| = 1"),
        }
    }
}

/// A relation together with the symmetry that implies it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AmplitudeRelation {
    pub source: SymmetryCode,
    pub relation: Relation,
}

impl fmt::Display for AmplitudeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.relation, self.source)
    }
}

/// Relations implied by one symmetry: invariance of the amplitude quadruple
/// under [`transformed_amplitudes`], plus the moduli equalities that follow
/// through generalized unitarity.
pub fn relations_for(code: SymmetryCode) -> Vec<Relation> {
    use Amplitude::*;
    let original = [Tl, Tr, Rl, Rr];
    let mapped = transformed_amplitudes(code);
    let mut out: Vec<Relation> = Vec::new();
    for (a, b) in original.into_iter().zip(mapped) {
        if a == b {
            continue;
        }
        let duplicate = out
            .iter()
            .any(|r| matches!(r, Relation::Equal(x, y) if (*x, *y) == (b, a)));
        if !duplicate {
            out.push(Relation::Equal(a, b));
        }
    }
    match code {
        SymmetryCode::II => {
            out.push(Relation::EqualModulus(Tl, Tr));
            out.push(Relation::EqualModulus(Rl, Rr));
        }
        SymmetryCode::V => out.push(Relation::EqualModulus(Rl, Rr)),
        SymmetryCode::VII => out.push(Relation::EqualModulus(Tl, Tr)),
        _ => {}
    }
    out
}

/// Every relation implied by the satisfied symmetries of `report`.
pub fn predicted_amplitude_relations(report: &SymmetryReport) -> Vec<AmplitudeRelation> {
    report
        .satisfied()
        .into_iter()
        .filter(|&c| c != SymmetryCode::I)
        .flat_map(|source| {
            relations_for(source)
                .into_iter()
                .map(move |relation| AmplitudeRelation { source, relation })
        })
        .collect()
}

/// Phase conditions a symmetric kernel must meet to realize `device` with
/// unit and zero moduli.
pub fn device_phase_conditions(report: &SymmetryReport, device: DeviceCode) -> Vec<AmplitudeRelation> {
    use Amplitude::*;
    let mut out = Vec::new();
    let mut push = |source, relation| out.push(AmplitudeRelation { source, relation });
    if report.holds(SymmetryCode::IV) {
        if device.transmission_asymmetric() {
            push(SymmetryCode::IV, Relation::UnitProduct(Rr, Rl));
        }
        if device.reflection_asymmetric() {
            push(SymmetryCode::IV, Relation::UnitProduct(Tr, Tl));
        }
    }
    if report.holds(SymmetryCode::V) && device.transmission_asymmetric() {
        push(SymmetryCode::V, Relation::UnitModulus(Rl));
        push(SymmetryCode::V, Relation::UnitModulus(Rr));
    }
    if report.holds(SymmetryCode::VII) && device.reflection_asymmetric() {
        push(SymmetryCode::VII, Relation::UnitModulus(Tl));
        push(SymmetryCode::VII, Relation::UnitModulus(Tr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Amplitude::*;

    #[test]
    fn amplitude_map_table() {
        let table = [
            (SymmetryCode::I, [Tl, Tr, Rl, Rr]),
            (SymmetryCode::II, [HatTl, HatTr, HatRl, HatRr]),
            (SymmetryCode::III, [Tr, Tl, Rr, Rl]),
            (SymmetryCode::IV, [HatTr, HatTl, HatRr, HatRl]),
            (SymmetryCode::V, [HatTr, HatTl, HatRl, HatRr]),
            (SymmetryCode::VI, [Tr, Tl, Rl, Rr]),
            (SymmetryCode::VII, [HatTl, HatTr, HatRr, HatRl]),
            (SymmetryCode::VIII, [Tl, Tr, Rr, Rl]),
        ];
        for (code, expected) in table {
            assert_eq!(transformed_amplitudes(code), expected, "{code}");
        }
    }

    #[test]
    fn relation_lists() {
        assert_eq!(
            relations_for(SymmetryCode::III),
            vec![Relation::Equal(Tl, Tr), Relation::Equal(Rl, Rr)]
        );
        assert_eq!(relations_for(SymmetryCode::VI), vec![Relation::Equal(Tl, Tr)]);
        assert_eq!(relations_for(SymmetryCode::VIII), vec![Relation::Equal(Rl, Rr)]);
        assert!(relations_for(SymmetryCode::V).contains(&Relation::EqualModulus(Rl, Rr)));
        assert!(relations_for(SymmetryCode::VII).contains(&Relation::EqualModulus(Tl, Tr)));
        assert!(relations_for(SymmetryCode::I).is_empty());
    }

    #[test]
    fn residuals() {
        let amps = ScatteringAmplitudes {
            k: 1.0,
            direct: AmplitudeSet::real(1.0, 0.0, -1.0, -1.0),
            hatted: None,
        };
        assert_eq!(Relation::Equal(Rl, Rr).residual(&amps), Some(0.0));
        assert_eq!(Relation::UnitProduct(Rr, Rl).residual(&amps), Some(0.0));
        assert_eq!(Relation::EqualModulus(Tl, Tr).residual(&amps), Some(1.0));
        assert_eq!(Relation::Equal(Tl, HatTl).residual(&amps), None);
        assert!(Relation::Equal(Tl, HatTl).needs_adjoint());
        assert_eq!(Relation::UnitProduct(Rr, Rl).to_string(), "R^r R^l* = 1");
    }
}
